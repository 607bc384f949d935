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
#include <complex>

#include "pachner33/pachner.hpp"
#include "pachner33/scalar.hpp"

namespace pachner33 {

/// Argument too close to a pole of sn, or modulus outside |k| < 1.
class EllipticDomainError : public Error {
 public:
  using Error::Error;
};

/// Minimum distance from a pole of sn, measured after lattice reduction.
inline constexpr double kPoleMargin = 1e-3;

/// Jacobi elliptic sine sn(u, k) for complex u and complex modulus k with
/// |k| < 1 (k == 1 exactly gives tanh). Periods 4K and 2iK' are removed
/// first, then sn is evaluated by descending Landen transformations down
/// to |k_n| < 1e-16.
Complex sn(Complex u, Complex k);

namespace detail {

struct JacobiTriple {
  Complex sn;
  Complex cn;
  Complex dn;
};

/// sn, cn and dn together; same domain rules as sn().
JacobiTriple jacobi_sncndn(Complex u, Complex k);

/// Complete elliptic integrals K(k) and K'(k) = K(sqrt(1-k^2)) via the
/// arithmetic-geometric mean. K' is +inf at k == 0.
struct QuarterPeriods {
  Complex K;
  Complex K_prime;
};
QuarterPeriods quarter_periods(Complex k);

}  // namespace detail

/// One complex parameter per vertex (index = vertex - 1) and a shared modulus.
struct EllipticVertexData {
  std::array<Complex, kVertexCount> alpha;
  Complex modulus;
};

/// sn(a_a - a_b) sn(a_b - a_c) sn(a_c - a_a).
Complex phi_ell(Vertex a, Vertex b, Vertex c, const EllipticVertexData& e);
PhiFunction elliptic_phi(EllipticVertexData e);

struct EllipticSampling {
  /// alpha_i drawn uniformly from [-box, box]^2, so |alpha_i| <= box*sqrt(2).
  double box = 0.7;
  /// Accepted data has |phi_abc| above this on all 20 two-faces.
  double min_phi = 1e-6;
  int max_attempts = 1000;
};

/// Throws DegenerateDataError if some |phi_abc| <= min_phi, or
/// EllipticDomainError if a difference sits on a pole.
void require_generic_elliptic(const EllipticVertexData& e, double min_phi = 1e-6);

EllipticVertexData sample_generic_elliptic(Rng& rng, Complex k, const EllipticSampling& options = {});

/// Complex-mode 3-3 check with exp(Phi) weights and elliptic face values.
Verification verify_33_elliptic(const EllipticVertexData& e, double tolerance);

}  // namespace pachner33
