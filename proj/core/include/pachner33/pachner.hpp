/*
 * Copyright 2026 The pachner33 Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pachner33/grassmann.hpp"
#include "pachner33/scalar.hpp"

namespace pachner33 {

/// Vertex label of the 3-3 move, 1..6.
using Vertex = int;
inline constexpr int kVertexCount = 6;

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// Tetrahedral three-face carrying the generator x_{abcd}. Vertex order is
/// irrelevant, so the vertices are stored sorted.
class Face {
 public:
  Face(Vertex a, Vertex b, Vertex c, Vertex d);
  explicit Face(std::array<Vertex, 4> verts);

  const std::array<Vertex, 4>& verts() const { return verts_; }
  bool contains(Vertex v) const;
  /// Generator name, e.g. "1234".
  std::string name() const;

  friend auto operator<=>(const Face&, const Face&) = default;

 private:
  std::array<Vertex, 4> verts_;
};

/// Oriented four-simplex: sorted vertices plus orientation sign p.
struct Simplex4 {
  std::array<Vertex, 5> verts;
  int orientation = 1;

  /// The five tetrahedral faces in sorted (lexicographic) order.
  std::array<Face, 5> faces() const;
  std::string name() const;
};

/// Face value phi_abc on oriented two-faces; must be totally antisymmetric.
using PhiFunction = std::function<Scalar(Vertex, Vertex, Vertex)>;

/// Per-vertex plane coordinates (xi_i, eta_i), indexed by vertex - 1.
struct VertexData {
  std::array<Scalar, kVertexCount> xi;
  std::array<Scalar, kVertexCount> eta;
};

/// det [[1,1,1],[xi_a,xi_b,xi_c],[eta_a,eta_b,eta_c]].
Scalar phi_det(Vertex a, Vertex b, Vertex c, const VertexData& v);
PhiFunction determinant_phi(VertexData v);

/// phi_bcd - phi_acd + phi_abd - phi_abc.
Scalar cocycle_defect(Vertex a, Vertex b, Vertex c, Vertex d, const PhiFunction& phi);

/// Parity of the permutation carrying ref onto seq.
int perm_sign(std::span<const Vertex> seq, std::span<const Vertex> ref);

/// All 20 two-faces {a<b<c} of the vertex set {1..6}.
std::vector<std::array<Vertex, 3>> all_two_faces();
/// All 15 tetrahedra {a<b<c<d} of {1..6}, lexicographic.
std::vector<Face> all_faces();

/// Antisymmetric 5x5 coefficient matrix of a four-simplex quadratic form,
/// rows/columns indexed by simplex.faces().
struct QuadraticForm {
  Simplex4 simplex;
  std::array<Face, 5> faces;
  std::array<std::array<Scalar, 5>, 5> matrix;
};

/// Phi = p * sum over two-faces abc of eps(d1 a b c d2 -> sorted) * phi_abc
///       * x_{abcd1} x_{abcd2}.
QuadraticForm build_phi_form(const Simplex4& s, const PhiFunction& phi, const Field& field);

/// sum_{r<c} matrix[r][c] x_r x_c. Faces must be registered in the algebra.
Element form_to_element(const QuadraticForm& q, const AlgebraPtr& algebra);

/// Exact Gaussian-elimination rank in Q / F_p. In complex mode, the number
/// of singular values above svd_threshold * sigma_max.
int rank_of_form(const QuadraticForm& q, double svd_threshold = 1e-6);

/// Algebra with the 15 faces of the move registered in lexicographic order.
AlgebraPtr make_face_algebra(const Field& field);

enum class Side { Lhs, Rhs };

/// Combinatorics of the 3-3 move on vertices 1..6.
struct MoveConfig {
  std::array<Simplex4, 3> lhs;
  std::array<Simplex4, 3> rhs;
  std::array<Face, 3> lhs_inner;
  std::array<Face, 3> rhs_inner;
  std::array<Vertex, 3> lhs_pivot;
  std::array<Vertex, 3> rhs_pivot;

  /// lhs 12345,12346,12356 with p = (+1,-1,+1); rhs 12456,13456,23456 with
  /// p = (+1,-1,+1); inner faces integrated in the written order.
  static MoveConfig standard();
  MoveConfig with_flipped_orientations() const;

  const std::array<Simplex4, 3>& simplices(Side side) const { return side == Side::Lhs ? lhs : rhs; }
  const std::array<Face, 3>& inner(Side side) const { return side == Side::Lhs ? lhs_inner : rhs_inner; }
  const std::array<Vertex, 3>& pivot(Side side) const { return side == Side::Lhs ? lhs_pivot : rhs_pivot; }
  /// Faces of the given side's simplices that are not inner, sorted.
  std::vector<Face> boundary_faces(Side side) const;
};

/// exp(Phi) when h is empty, h + Phi otherwise.
Element weight(const Simplex4& s, const PhiFunction& phi, const AlgebraPtr& algebra,
               const std::optional<Scalar>& h = std::nullopt);

using HTriple = std::array<Scalar, 3>;

/// Product of the side's three weights in written order, integrated over
/// the side's inner faces in written order.
Element side_integral(Side side, const MoveConfig& move, const PhiFunction& phi,
                      const AlgebraPtr& algebra, const std::optional<HTriple>& h = std::nullopt);

/// Right-hand h coefficients (h_12456, h_13456, h_23456) from the left-hand
/// ones (h_12345, h_12346, h_12356).
HTriple h_transform(const HTriple& h_lhs, const PhiFunction& phi);

struct CoefficientResidual {
  std::string monomial;
  Scalar lhs;
  Scalar rhs;
  double residual = 0.0;
};

struct VerifyOptions {
  /// Max relative residual accepted in complex mode; ignored for exact fields.
  double tolerance = 1e-8;
  /// Left-hand h coefficients; enables h + Phi weights on both sides.
  std::optional<HTriple> h_lhs;
  /// Keep every coefficient pair in the result, not just mismatches.
  bool record_all = false;
};

/// Outcome of checking f_123 * LHS = -f_456 * RHS.
struct Verification {
  bool passed = false;
  /// Whether f_123 * LHS = +f_456 * RHS would have held instead.
  bool plus_sign_matches = false;
  /// Exact modes: count of coefficients where LHS != -RHS.
  std::size_t mismatches = 0;
  /// Complex mode: max |L + R| / max(|L|, |R|) over all coefficients.
  double max_residual = 0.0;
  std::size_t coefficient_count = 0;
  std::vector<CoefficientResidual> residuals;
  Element lhs;
  Element rhs;
};

Verification verify_33(const MoveConfig& move, const PhiFunction& phi, const Field& field,
                       const VerifyOptions& options = {});

/// Integer coordinates in [lo, hi], resampled until all 20 phi_abc are
/// nonzero. Throws DegenerateDataError after max_attempts.
VertexData sample_generic_vertices(const Field& field, Rng& rng, std::int64_t lo = -9,
                                   std::int64_t hi = 9, int max_attempts = 100000);

/// Throws DegenerateDataError unless every phi_abc on {1..6} is nonzero.
void require_generic(const PhiFunction& phi, const Field& field);

}  // namespace pachner33
