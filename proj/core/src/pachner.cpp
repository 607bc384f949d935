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

#include "pachner33/pachner.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

namespace pachner33 {
namespace {

void check_vertex(Vertex v) {
  if (v < 1 || v > kVertexCount) {
    throw DegenerateDataError("vertex " + std::to_string(v) + " outside 1..6");
  }
}

template <std::size_t N>
void check_distinct(const std::array<Vertex, N>& vs) {
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      if (vs[i] == vs[j]) throw DegenerateDataError("repeated vertex " + std::to_string(vs[i]));
    }
  }
}

Simplex4 simplex(std::array<Vertex, 5> verts, int orientation) {
  return Simplex4{verts, orientation};
}

template <std::size_t N, typename T>
std::array<T, N> filled(const T& value) {
  return [&]<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<T, N>{((void)I, value)...};
  }(std::make_index_sequence<N>{});
}

}  // namespace

Face::Face(Vertex a, Vertex b, Vertex c, Vertex d) : Face(std::array<Vertex, 4>{a, b, c, d}) {}

Face::Face(std::array<Vertex, 4> verts) : verts_(verts) {
  for (Vertex v : verts_) check_vertex(v);
  check_distinct(verts_);
  std::ranges::sort(verts_);
}

bool Face::contains(Vertex v) const { return std::ranges::find(verts_, v) != verts_.end(); }

std::string Face::name() const {
  std::string out;
  for (Vertex v : verts_) out += std::to_string(v);
  return out;
}

std::array<Face, 5> Simplex4::faces() const {
  // Dropping the last vertex first yields lexicographic order.
  std::array<Face, 5> out{Face(1, 2, 3, 4), Face(1, 2, 3, 4), Face(1, 2, 3, 4),
                          Face(1, 2, 3, 4), Face(1, 2, 3, 4)};
  for (int omit = 4; omit >= 0; --omit) {
    std::array<Vertex, 4> f{};
    int k = 0;
    for (int i = 0; i < 5; ++i) {
      if (i != omit) f[static_cast<std::size_t>(k++)] = verts[static_cast<std::size_t>(i)];
    }
    out[static_cast<std::size_t>(4 - omit)] = Face(f);
  }
  return out;
}

std::string Simplex4::name() const {
  std::string out;
  for (Vertex v : verts) out += std::to_string(v);
  return out;
}

Scalar phi_det(Vertex a, Vertex b, Vertex c, const VertexData& v) {
  check_vertex(a);
  check_vertex(b);
  check_vertex(c);
  check_distinct(std::array<Vertex, 3>{a, b, c});
  const auto& xa = v.xi[static_cast<std::size_t>(a - 1)];
  const auto& xb = v.xi[static_cast<std::size_t>(b - 1)];
  const auto& xc = v.xi[static_cast<std::size_t>(c - 1)];
  const auto& ya = v.eta[static_cast<std::size_t>(a - 1)];
  const auto& yb = v.eta[static_cast<std::size_t>(b - 1)];
  const auto& yc = v.eta[static_cast<std::size_t>(c - 1)];
  // Subtracting column a from b and c reduces to a 2x2 determinant.
  return (xb - xa) * (yc - ya) - (xc - xa) * (yb - ya);
}

PhiFunction determinant_phi(VertexData v) {
  return [data = std::move(v)](Vertex a, Vertex b, Vertex c) { return phi_det(a, b, c, data); };
}

Scalar cocycle_defect(Vertex a, Vertex b, Vertex c, Vertex d, const PhiFunction& phi) {
  check_distinct(std::array<Vertex, 4>{a, b, c, d});
  return phi(b, c, d) - phi(a, c, d) + phi(a, b, d) - phi(a, b, c);
}

int perm_sign(std::span<const Vertex> seq, std::span<const Vertex> ref) {
  if (seq.size() != ref.size()) throw DegenerateDataError("perm_sign: length mismatch");
  std::vector<std::size_t> positions;
  positions.reserve(seq.size());
  std::vector<bool> used(ref.size(), false);
  for (Vertex v : seq) {
    const auto it = std::ranges::find(ref, v);
    if (it == ref.end()) throw DegenerateDataError("perm_sign: sequence is not a permutation of ref");
    const auto pos = static_cast<std::size_t>(it - ref.begin());
    if (used[pos]) throw DegenerateDataError("perm_sign: repeated element");
    used[pos] = true;
    positions.push_back(pos);
  }
  int inversions = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (positions[i] > positions[j]) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

std::vector<std::array<Vertex, 3>> all_two_faces() {
  std::vector<std::array<Vertex, 3>> out;
  for (Vertex a = 1; a <= kVertexCount; ++a)
    for (Vertex b = a + 1; b <= kVertexCount; ++b)
      for (Vertex c = b + 1; c <= kVertexCount; ++c) out.push_back({a, b, c});
  return out;
}

std::vector<Face> all_faces() {
  std::vector<Face> out;
  for (Vertex a = 1; a <= kVertexCount; ++a)
    for (Vertex b = a + 1; b <= kVertexCount; ++b)
      for (Vertex c = b + 1; c <= kVertexCount; ++c)
        for (Vertex d = c + 1; d <= kVertexCount; ++d) out.emplace_back(a, b, c, d);
  return out;
}

QuadraticForm build_phi_form(const Simplex4& s, const PhiFunction& phi, const Field& field) {
  if (s.orientation != 1 && s.orientation != -1) {
    throw DegenerateDataError("simplex orientation must be +1 or -1");
  }
  for (Vertex v : s.verts) check_vertex(v);
  check_distinct(s.verts);
  if (!std::ranges::is_sorted(s.verts)) throw DegenerateDataError("simplex vertices must be sorted");

  QuadraticForm q{s, s.faces(), filled<5>(filled<5>(field.zero()))};

  const auto face_slot = [&](const Face& f) {
    return static_cast<std::size_t>(std::ranges::find(q.faces, f) - q.faces.begin());
  };
  const Scalar p = field.from_integer(s.orientation);

  // Two-faces abc of s are the complements of the pairs d1 < d2.
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      const Vertex d1 = s.verts[i];
      const Vertex d2 = s.verts[j];
      std::array<Vertex, 3> abc{};
      std::size_t k = 0;
      for (Vertex v : s.verts) {
        if (v != d1 && v != d2) abc[k++] = v;
      }
      const auto [a, b, c] = abc;
      const std::array<Vertex, 5> sub{d1, a, b, c, d2};
      const int eps = perm_sign(sub, s.verts);
      const Scalar value = phi(a, b, c);
      field.check(value);
      const Scalar coeff = eps > 0 ? p * value : -(p * value);
      const std::size_t r = face_slot(Face(a, b, c, d1));
      const std::size_t col = face_slot(Face(a, b, c, d2));
      q.matrix[r][col] += coeff;
      q.matrix[col][r] -= coeff;
    }
  }
  return q;
}

Element form_to_element(const QuadraticForm& q, const AlgebraPtr& algebra) {
  Element out(algebra);
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = r + 1; c < 5; ++c) {
      if (algebra->field().is_zero(q.matrix[r][c])) continue;
      const Element xr = Element::generator(algebra, q.faces[r].name());
      const Element xc = Element::generator(algebra, q.faces[c].name());
      out += q.matrix[r][c] * (xr * xc);
    }
  }
  return out;
}

int rank_of_form(const QuadraticForm& q, double svd_threshold) {
  const FieldKind kind = q.matrix[0][0].kind();
  if (kind == FieldKind::Complex) {
    Eigen::Matrix<std::complex<double>, 5, 5> m;
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c)
        m(r, c) = q.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].as_complex();
    const Eigen::JacobiSVD<decltype(m)> svd(m);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i) {
      if (sigma(i) > svd_threshold * sigma(0)) ++rank;
    }
    return rank;
  }

  auto m = q.matrix;
  int rank = 0;
  for (std::size_t col = 0; col < 5 && rank < 5; ++col) {
    const auto row = static_cast<std::size_t>(rank);
    std::size_t pivot = row;
    while (pivot < 5 && m[pivot][col].is_zero()) ++pivot;
    if (pivot == 5) continue;
    std::swap(m[pivot], m[row]);
    const Scalar inv = m[row][col].inverse();
    for (std::size_t r = row + 1; r < 5; ++r) {
      if (m[r][col].is_zero()) continue;
      const Scalar factor = m[r][col] * inv;
      for (std::size_t c = col; c < 5; ++c) m[r][c] -= factor * m[row][c];
    }
    ++rank;
  }
  return rank;
}

AlgebraPtr make_face_algebra(const Field& field) {
  std::vector<std::string> names;
  for (const Face& f : all_faces()) names.push_back(f.name());
  return Algebra::create(field, std::move(names));
}

MoveConfig MoveConfig::standard() {
  return MoveConfig{
      {simplex({1, 2, 3, 4, 5}, 1), simplex({1, 2, 3, 4, 6}, -1), simplex({1, 2, 3, 5, 6}, 1)},
      {simplex({1, 2, 4, 5, 6}, 1), simplex({1, 3, 4, 5, 6}, -1), simplex({2, 3, 4, 5, 6}, 1)},
      {Face(1, 2, 3, 4), Face(1, 2, 3, 5), Face(1, 2, 3, 6)},
      {Face(1, 4, 5, 6), Face(2, 4, 5, 6), Face(3, 4, 5, 6)},
      {1, 2, 3},
      {4, 5, 6},
  };
}

MoveConfig MoveConfig::with_flipped_orientations() const {
  MoveConfig out = *this;
  for (auto& s : out.lhs) s.orientation = -s.orientation;
  for (auto& s : out.rhs) s.orientation = -s.orientation;
  return out;
}

std::vector<Face> MoveConfig::boundary_faces(Side side) const {
  std::vector<Face> out;
  const auto& inner_faces = inner(side);
  for (const Simplex4& s : simplices(side)) {
    for (const Face& f : s.faces()) {
      if (std::ranges::find(inner_faces, f) != inner_faces.end()) continue;
      if (std::ranges::find(out, f) == out.end()) out.push_back(f);
    }
  }
  std::ranges::sort(out);
  return out;
}

Element weight(const Simplex4& s, const PhiFunction& phi, const AlgebraPtr& algebra,
               const std::optional<Scalar>& h) {
  const Element form = form_to_element(build_phi_form(s, phi, algebra->field()), algebra);
  if (h) return Element::constant(algebra, *h) + form;
  return exp(form);
}

Element side_integral(Side side, const MoveConfig& move, const PhiFunction& phi,
                      const AlgebraPtr& algebra, const std::optional<HTriple>& h) {
  Element product = Element::one(algebra);
  const auto& simplices = move.simplices(side);
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const std::optional<Scalar> hi = h ? std::optional<Scalar>((*h)[i]) : std::nullopt;
    product = product * weight(simplices[i], phi, algebra, hi);
  }
  std::array<GeneratorId, 3> order{};
  for (std::size_t i = 0; i < 3; ++i) order[i] = algebra->id(move.inner(side)[i].name());
  return berezin(product, order);
}

HTriple h_transform(const HTriple& h_lhs, const PhiFunction& phi) {
  const Scalar phi456 = phi(4, 5, 6);
  if (phi456.is_zero()) throw DegenerateDataError("h_transform: phi_456 vanishes");
  const Scalar inv = phi456.inverse();
  const auto& [h12345, h12346, h12356] = h_lhs;
  // Row v in {3,2,1} gives h for the rhs simplex missing vertex v.
  const auto row = [&](Vertex v) {
    return (phi(v, 4, 5) * h12345 - phi(v, 4, 6) * h12346 + phi(v, 5, 6) * h12356) * inv;
  };
  return {row(3), row(2), row(1)};
}

void require_generic(const PhiFunction& phi, const Field& field) {
  for (const auto& [a, b, c] : all_two_faces()) {
    const Scalar value = phi(a, b, c);
    field.check(value);
    if (field.is_zero(value)) {
      throw DegenerateDataError("phi_" + std::to_string(a) + std::to_string(b) +
                                std::to_string(c) + " vanishes");
    }
  }
}

Verification verify_33(const MoveConfig& move, const PhiFunction& phi, const Field& field,
                       const VerifyOptions& options) {
  require_generic(phi, field);
  const AlgebraPtr algebra = make_face_algebra(field);

  std::optional<HTriple> h_rhs;
  if (options.h_lhs) h_rhs = h_transform(*options.h_lhs, phi);

  const auto& lp = move.lhs_pivot;
  const auto& rp = move.rhs_pivot;
  const Scalar f_lhs = phi(lp[0], lp[1], lp[2]).inverse();
  const Scalar f_rhs = phi(rp[0], rp[1], rp[2]).inverse();
  Element lhs = f_lhs * side_integral(Side::Lhs, move, phi, algebra, options.h_lhs);
  Element rhs = f_rhs * side_integral(Side::Rhs, move, phi, algebra, h_rhs);

  std::vector<Monomial> support;
  for (const auto& [m, c] : lhs.terms()) support.push_back(m);
  for (const auto& [m, c] : rhs.terms()) support.push_back(m);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  double scale = 0.0;
  for (Monomial m : support) {
    scale = std::max({scale, lhs.coefficient(m).magnitude(), rhs.coefficient(m).magnitude()});
  }

  std::vector<CoefficientResidual> residuals;
  std::size_t mismatches = 0;
  std::size_t plus_mismatches = 0;
  double max_residual = 0.0;
  double max_plus_residual = 0.0;
  for (Monomial m : support) {
    const Scalar l = lhs.coefficient(m);
    const Scalar r = rhs.coefficient(m);
    const Scalar sum = l + r;
    const Scalar diff = l - r;
    double residual = 0.0;
    bool ok = true;
    if (field.is_exact()) {
      ok = sum.is_zero();
      if (!ok) ++mismatches;
      if (!diff.is_zero()) ++plus_mismatches;
      residual = ok ? 0.0 : 1.0;
    } else {
      residual = scale > 0.0 ? sum.magnitude() / scale : 0.0;
      max_plus_residual = std::max(max_plus_residual, scale > 0.0 ? diff.magnitude() / scale : 0.0);
      ok = residual < options.tolerance;
      if (!ok) ++mismatches;
    }
    max_residual = std::max(max_residual, residual);
    if (!ok || options.record_all) {
      Element label = Element::term(algebra, m, field.one());
      residuals.push_back({label.to_string(), l, r, residual});
    }
  }

  Verification out{.passed = false,
                   .plus_sign_matches = false,
                   .mismatches = mismatches,
                   .max_residual = 0.0,
                   .coefficient_count = support.size(),
                   .residuals = std::move(residuals),
                   .lhs = std::move(lhs),
                   .rhs = std::move(rhs)};
  if (field.is_exact()) {
    out.max_residual = static_cast<double>(mismatches);
    out.passed = mismatches == 0;
    out.plus_sign_matches = plus_mismatches == 0;
  } else {
    out.max_residual = max_residual;
    out.passed = max_residual < options.tolerance;
    out.plus_sign_matches = max_plus_residual < options.tolerance;
  }
  return out;
}

VertexData sample_generic_vertices(const Field& field, Rng& rng, std::int64_t lo, std::int64_t hi,
                                   int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    VertexData v{filled<kVertexCount>(field.zero()), filled<kVertexCount>(field.zero())};
    for (std::size_t i = 0; i < kVertexCount; ++i) {
      v.xi[i] = field.random_integer(lo, hi, rng);
      v.eta[i] = field.random_integer(lo, hi, rng);
    }
    const bool generic = std::ranges::none_of(all_two_faces(), [&](const auto& t) {
      return field.is_zero(phi_det(t[0], t[1], t[2], v));
    });
    if (generic) return v;
  }
  throw DegenerateDataError("no generic vertex data after " + std::to_string(max_attempts) +
                            " attempts");
}

}  // namespace pachner33
