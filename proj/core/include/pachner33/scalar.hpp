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

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace pachner33 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different fields (or different prime moduli).
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// A field operation has no value here: 1/0, n! not invertible mod p, etc.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Malformed field configuration or an operation unavailable in this mode.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Seeded generator used by every randomized routine.
using Rng = std::mt19937_64;

/// Absolute threshold below which a complex value counts as zero.
inline constexpr double kDefaultZeroTolerance = 1e-12;

enum class FieldKind { Rational, PrimeField, Complex };

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Residue class modulo an odd prime.
struct Residue {
  std::uint64_t value = 0;
  std::uint64_t modulus = 0;

  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Element of Q, F_p or C. Immutable value type; operations between
/// different modes throw ModeMismatch.
class Scalar {
 public:
  explicit Scalar(Rational value);
  explicit Scalar(Residue value);
  explicit Scalar(Complex value);

  static Scalar rational(long numerator, long denominator = 1);
  static Scalar complex(double re, double im = 0.0) {
    return Scalar(Complex(re, im));
  }

  FieldKind kind() const;
  bool is_exact() const { return kind() != FieldKind::Complex; }

  const Rational& as_rational() const;
  const Residue& as_residue() const;
  Complex as_complex() const;

  /// Exact test in Q and F_p; |a| <= zero_tolerance in C.
  bool is_zero(double zero_tolerance = kDefaultZeroTolerance) const;
  /// |a| as a double. Residues report their canonical representative.
  double magnitude() const;

  Scalar inverse() const;
  Scalar operator-() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

  /// Representation equality (bitwise for complex values).
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  std::variant<Rational, Residue, Complex> value_;
};

/// Deterministic primality test, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Describes a coefficient field and manufactures its scalars.
///
/// Configuration strings: "rational", "fp:<p>" with p an odd prime below
/// 2^63, "complex". The complex zero tolerance is carried here so that
/// every pruning decision downstream goes through one place.
class Field {
 public:
  static Field rational();
  static Field prime(std::uint64_t p);
  static Field complex(double zero_tolerance = kDefaultZeroTolerance);
  static Field parse(std::string_view config);

  FieldKind kind() const { return kind_; }
  bool is_exact() const { return kind_ != FieldKind::Complex; }
  std::uint64_t modulus() const { return modulus_; }
  double zero_tolerance() const { return zero_tolerance_; }
  std::string name() const;

  Scalar zero() const { return from_integer(0); }
  Scalar one() const { return from_integer(1); }
  Scalar from_integer(std::int64_t n) const;
  /// numerator/denominator; in F_p the denominator must be a unit.
  Scalar from_fraction(std::int64_t numerator, std::int64_t denominator) const;

  bool contains(const Scalar& s) const;
  bool is_zero(const Scalar& s) const { return s.is_zero(zero_tolerance_); }
  /// Throws ModeMismatch unless s belongs to this field.
  void check(const Scalar& s) const;

  /// Uniform integer in [lo, hi], mapped into the field. Exact modes only.
  Scalar random_integer(std::int64_t lo, std::int64_t hi, Rng& rng) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(FieldKind kind, std::uint64_t modulus, double zero_tolerance)
      : kind_(kind), modulus_(modulus), zero_tolerance_(zero_tolerance) {}

  FieldKind kind_;
  std::uint64_t modulus_;
  double zero_tolerance_;
};

}  // namespace pachner33
