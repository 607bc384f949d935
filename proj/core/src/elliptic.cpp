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

#include "pachner33/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace pachner33 {
namespace {

constexpr double kLandenStop = 1e-16;
constexpr int kMaxLandenSteps = 64;

void check_modulus(Complex k) {
  if (!std::isfinite(k.real()) || !std::isfinite(k.imag()) || std::abs(k) >= 1.0) {
    throw EllipticDomainError("elliptic modulus must satisfy |k| < 1");
  }
}

/// Complementary modulus sqrt(1 - k^2) on the principal branch.
Complex complementary(Complex k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

Complex agm(Complex a, Complex b) {
  for (int i = 0; i < 64; ++i) {
    const Complex mean = 0.5 * (a + b);
    Complex geo = std::sqrt(a * b);
    // Right choice of root keeps the iteration on the principal AGM.
    if (std::abs(mean - geo) > std::abs(mean + geo)) geo = -geo;
    a = mean;
    b = geo;
    if (std::abs(a - b) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(a)) break;
  }
  return 0.5 * (a + b);
}

/// Evaluates at a reduced argument; no periodicity handling here.
detail::JacobiTriple landen(Complex z, Complex k) {
  std::vector<Complex> moduli;
  Complex kn = k;
  Complex kn_prime = complementary(k);
  while (std::abs(kn) >= kLandenStop) {
    if (static_cast<int>(moduli.size()) == kMaxLandenSteps) {
      throw EllipticDomainError("Landen recursion did not converge");
    }
    const Complex denom = 1.0 + kn_prime;
    const Complex next = kn * kn / (denom * denom);
    const Complex next_prime = 2.0 * std::sqrt(kn_prime) / denom;
    moduli.push_back(next);
    z /= 1.0 + next;
    kn = next;
    kn_prime = next_prime;
  }

  // Small-modulus expansion, exact to O(k^4).
  const Complex m = kn * kn;
  const Complex s = std::sin(z);
  const Complex c = std::cos(z);
  const Complex corr = 0.25 * m * (z - s * c);
  detail::JacobiTriple t{s - corr * c, c + corr * s, 1.0 - 0.5 * m * s * s};

  // Unwind: value at (z (1 + k1), k0) from value at (z, k1).
  for (auto it = moduli.rbegin(); it != moduli.rend(); ++it) {
    const Complex k1 = *it;
    const Complex sn2 = t.sn * t.sn;
    const Complex denom = 1.0 + k1 * sn2;
    t = detail::JacobiTriple{(1.0 + k1) * t.sn / denom, t.cn * t.dn / denom,
                             (1.0 - k1 * sn2) / denom};
  }
  return t;
}

}  // namespace

namespace detail {

QuarterPeriods quarter_periods(Complex k) {
  check_modulus(k);
  const double half_pi = std::numbers::pi / 2;
  const Complex K = half_pi / agm(1.0, complementary(k));
  if (k == Complex(0.0, 0.0)) {
    return {K, Complex(std::numeric_limits<double>::infinity(), 0.0)};
  }
  return {K, half_pi / agm(1.0, k)};
}

JacobiTriple jacobi_sncndn(Complex u, Complex k) {
  if (k == Complex(1.0, 0.0)) {
    const Complex sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  check_modulus(k);

  const auto [K, K_prime] = quarter_periods(k);
  const Complex w1 = 4.0 * K;
  Complex z = u;
  double sign = 1.0;

  if (std::isinf(K_prime.real())) {
    // k == 0: only the real period 2 pi.
    z -= std::round(z.real() / w1.real()) * w1;
    return {std::sin(z), std::cos(z), 1.0};
  }

  // Solve u = s w1 + t w2 over the reals and subtract the nearest lattice point.
  const Complex w2 = Complex(0.0, 2.0) * K_prime;
  const double det = w1.real() * w2.imag() - w2.real() * w1.imag();
  const double s = (u.real() * w2.imag() - w2.real() * u.imag()) / det;
  const double t = (w1.real() * u.imag() - u.real() * w1.imag()) / det;
  const double ns = std::round(s);
  const double nt = std::round(t);
  z = u - ns * w1 - nt * w2;
  // cn and dn flip sign under u -> u + 2iK'.
  if (static_cast<long long>(nt) % 2 != 0) sign = -1.0;

  // Poles sit at 2mK + (2n+1) iK'.
  for (int m = -2; m <= 2; ++m) {
    for (int n = -1; n <= 0; ++n) {
      const Complex pole = 2.0 * m * K + Complex(0.0, 2.0 * n + 1.0) * K_prime;
      if (std::abs(z - pole) < kPoleMargin) {
        throw EllipticDomainError("sn argument within pole margin");
      }
    }
  }

  JacobiTriple out = landen(z, k);
  out.cn *= sign;
  out.dn *= sign;
  return out;
}

}  // namespace detail

Complex sn(Complex u, Complex k) { return detail::jacobi_sncndn(u, k).sn; }

Complex phi_ell(Vertex a, Vertex b, Vertex c, const EllipticVertexData& e) {
  if (a < 1 || a > kVertexCount || b < 1 || b > kVertexCount || c < 1 || c > kVertexCount) {
    throw DegenerateDataError("vertex outside 1..6");
  }
  if (a == b || b == c || a == c) throw DegenerateDataError("repeated vertex");
  const auto alpha = [&](Vertex v) { return e.alpha[static_cast<std::size_t>(v - 1)]; };
  const Complex k = e.modulus;
  return sn(alpha(a) - alpha(b), k) * sn(alpha(b) - alpha(c), k) * sn(alpha(c) - alpha(a), k);
}

PhiFunction elliptic_phi(EllipticVertexData e) {
  return [data = e](Vertex a, Vertex b, Vertex c) { return Scalar(phi_ell(a, b, c, data)); };
}

void require_generic_elliptic(const EllipticVertexData& e, double min_phi) {
  for (const auto& [a, b, c] : all_two_faces()) {
    if (std::abs(phi_ell(a, b, c, e)) <= min_phi) {
      throw DegenerateDataError("|phi_" + std::to_string(a) + std::to_string(b) +
                                std::to_string(c) + "| below genericity threshold");
    }
  }
}

EllipticVertexData sample_generic_elliptic(Rng& rng, Complex k, const EllipticSampling& options) {
  check_modulus(k);
  std::uniform_real_distribution<double> coord(-options.box, options.box);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    EllipticVertexData e{{}, k};
    for (auto& a : e.alpha) {
      const double re = coord(rng);
      const double im = coord(rng);
      a = Complex(re, im);
    }
    try {
      require_generic_elliptic(e, options.min_phi);
      return e;
    } catch (const Error&) {
      // pole hit or small phi: draw again
    }
  }
  throw DegenerateDataError("no generic elliptic data after " +
                            std::to_string(options.max_attempts) + " attempts");
}

Verification verify_33_elliptic(const EllipticVertexData& e, double tolerance) {
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  check_modulus(e.modulus);
  require_generic_elliptic(e);
  VerifyOptions options;
  options.tolerance = tolerance;
  return verify_33(MoveConfig::standard(), elliptic_phi(e), Field::complex(), options);
}

}  // namespace pachner33
