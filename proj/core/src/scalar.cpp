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

#include "pachner33/scalar.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace pachner33 {
namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce(std::int64_t n, std::uint64_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  std::int64_t r = n % sp;
  if (r < 0) r += sp;
  return static_cast<std::uint64_t>(r);
}

const char* kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::Rational: return "rational";
    case FieldKind::PrimeField: return "prime field";
    case FieldKind::Complex: return "complex";
  }
  return "?";
}

[[noreturn]] void mismatch(const Scalar& a, const Scalar& b) {
  throw ModeMismatch(std::string("scalar mode mismatch: ") + kind_name(a.kind()) +
                     " vs " + kind_name(b.kind()));
}

void check_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus != b.modulus) {
    throw ModeMismatch("prime field mismatch: F_" + std::to_string(a.modulus) +
                       " vs F_" + std::to_string(b.modulus));
  }
}

template <typename RationalOp, typename ResidueOp, typename ComplexOp>
Scalar combine(const Scalar& a, const Scalar& b, RationalOp on_rational,
               ResidueOp on_residue, ComplexOp on_complex) {
  if (a.kind() != b.kind()) mismatch(a, b);
  switch (a.kind()) {
    case FieldKind::Rational:
      return Scalar(on_rational(a.as_rational(), b.as_rational()));
    case FieldKind::PrimeField: {
      const Residue& x = a.as_residue();
      const Residue& y = b.as_residue();
      check_same_modulus(x, y);
      return Scalar(Residue{on_residue(x.value, y.value, x.modulus), x.modulus});
    }
    case FieldKind::Complex:
      return Scalar(on_complex(a.as_complex(), b.as_complex()));
  }
  throw Error("unreachable scalar kind");
}

}  // namespace

Scalar::Scalar(Rational value) : value_(std::move(value)) {
  std::get<Rational>(value_).canonicalize();
}

Scalar::Scalar(Residue value) : value_(value) {
  if (value.modulus < 3) throw ConfigError("residue modulus must be an odd prime");
  std::get<Residue>(value_).value %= value.modulus;
}

Scalar::Scalar(Complex value) : value_(value) {}

Scalar Scalar::rational(long numerator, long denominator) {
  if (denominator == 0) throw ArithmeticError("zero denominator");
  return Scalar(Rational(numerator, denominator));
}

FieldKind Scalar::kind() const {
  switch (value_.index()) {
    case 0: return FieldKind::Rational;
    case 1: return FieldKind::PrimeField;
    default: return FieldKind::Complex;
  }
}

const Rational& Scalar::as_rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw ModeMismatch("scalar is not rational");
}

const Residue& Scalar::as_residue() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return *r;
  throw ModeMismatch("scalar is not a prime-field residue");
}

Complex Scalar::as_complex() const {
  if (const auto* c = std::get_if<Complex>(&value_)) return *c;
  throw ModeMismatch("scalar is not complex");
}

bool Scalar::is_zero(double zero_tolerance) const {
  switch (kind()) {
    case FieldKind::Rational: return sgn(as_rational()) == 0;
    case FieldKind::PrimeField: return as_residue().value == 0;
    case FieldKind::Complex: return std::abs(as_complex()) <= zero_tolerance;
  }
  return false;
}

double Scalar::magnitude() const {
  switch (kind()) {
    case FieldKind::Rational: return std::abs(as_rational().get_d());
    case FieldKind::PrimeField: return static_cast<double>(as_residue().value);
    case FieldKind::Complex: return std::abs(as_complex());
  }
  return 0.0;
}

Scalar Scalar::inverse() const {
  if (kind() != FieldKind::Complex && is_zero()) {
    throw ArithmeticError("inverse of zero");
  }
  switch (kind()) {
    case FieldKind::Rational: return Scalar(Rational(1) / as_rational());
    case FieldKind::PrimeField: {
      const Residue& r = as_residue();
      // Fermat: a^(p-2) for prime p.
      return Scalar(Residue{pow_mod(r.value, r.modulus - 2, r.modulus), r.modulus});
    }
    case FieldKind::Complex: {
      const Complex c = as_complex();
      if (c == Complex(0.0, 0.0)) throw ArithmeticError("inverse of zero");
      return Scalar(Complex(1.0, 0.0) / c);
    }
  }
  throw Error("unreachable scalar kind");
}

Scalar Scalar::operator-() const {
  switch (kind()) {
    case FieldKind::Rational: return Scalar(Rational(-as_rational()));
    case FieldKind::PrimeField: {
      const Residue& r = as_residue();
      return Scalar(Residue{r.value == 0 ? 0 : r.modulus - r.value, r.modulus});
    }
    case FieldKind::Complex: return Scalar(-as_complex());
  }
  throw Error("unreachable scalar kind");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); },
      [](std::uint64_t x, std::uint64_t y, std::uint64_t p) {
        return static_cast<std::uint64_t>((static_cast<u128>(x) + y) % p);
      },
      [](Complex x, Complex y) { return x + y; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x - y); },
      [](std::uint64_t x, std::uint64_t y, std::uint64_t p) {
        return x >= y ? x - y : p - (y - x);
      },
      [](Complex x, Complex y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); },
      [](std::uint64_t x, std::uint64_t y, std::uint64_t p) { return mul_mod(x, y, p); },
      [](Complex x, Complex y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.kind() != b.kind()) mismatch(a, b);
  return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.kind() != b.kind()) return false;
  return a.value_ == b.value_;
}

std::string Scalar::to_string() const {
  switch (kind()) {
    case FieldKind::Rational: return as_rational().get_str();
    case FieldKind::PrimeField: return std::to_string(as_residue().value);
    case FieldKind::Complex: {
      const Complex c = as_complex();
      std::ostringstream out;
      out.precision(17);
      out << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      return out.str();
    }
  }
  return {};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::rational() { return Field(FieldKind::Rational, 0, 0.0); }

Field Field::prime(std::uint64_t p) {
  if (p <= 2) throw ConfigError("prime field needs characteristic > 2, got " + std::to_string(p));
  if (p >= (std::uint64_t{1} << 63)) throw ConfigError("prime modulus must be below 2^63");
  if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  return Field(FieldKind::PrimeField, p, 0.0);
}

Field Field::complex(double zero_tolerance) {
  if (!(zero_tolerance >= 0.0) || !std::isfinite(zero_tolerance)) {
    throw ConfigError("zero tolerance must be a finite non-negative number");
  }
  return Field(FieldKind::Complex, 0, zero_tolerance);
}

Field Field::parse(std::string_view config) {
  if (config == "rational") return rational();
  if (config == "complex") return complex();
  constexpr std::string_view prefix = "fp:";
  if (config.starts_with(prefix)) {
    const std::string_view digits = config.substr(prefix.size());
    std::uint64_t p = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || end != digits.data() + digits.size() || digits.empty()) {
      throw ConfigError("bad prime in field config '" + std::string(config) + "'");
    }
    return prime(p);
  }
  throw ConfigError("unknown field '" + std::string(config) +
                    "' (expected rational, fp:<p> or complex)");
}

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::Rational: return "rational";
    case FieldKind::PrimeField: return "fp:" + std::to_string(modulus_);
    case FieldKind::Complex: return "complex";
  }
  return {};
}

Scalar Field::from_integer(std::int64_t n) const {
  switch (kind_) {
    case FieldKind::Rational: return Scalar(Rational(static_cast<long>(n)));
    case FieldKind::PrimeField: return Scalar(Residue{reduce(n, modulus_), modulus_});
    case FieldKind::Complex: return Scalar(Complex(static_cast<double>(n), 0.0));
  }
  throw Error("unreachable field kind");
}

Scalar Field::from_fraction(std::int64_t numerator, std::int64_t denominator) const {
  if (denominator == 0) throw ArithmeticError("zero denominator");
  if (kind_ == FieldKind::Rational) {
    return Scalar(Rational(static_cast<long>(numerator), static_cast<long>(denominator)));
  }
  return from_integer(numerator) / from_integer(denominator);
}

bool Field::contains(const Scalar& s) const {
  if (s.kind() != kind_) return false;
  return kind_ != FieldKind::PrimeField || s.as_residue().modulus == modulus_;
}

void Field::check(const Scalar& s) const {
  if (!contains(s)) {
    throw ModeMismatch("scalar " + s.to_string() + " does not belong to field " + name());
  }
}

Scalar Field::random_integer(std::int64_t lo, std::int64_t hi, Rng& rng) const {
  if (!is_exact()) {
    throw ConfigError("random_integer is defined for exact fields only");
  }
  if (lo > hi) throw ConfigError("empty sampling interval");
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  return from_integer(dist(rng));
}

}  // namespace pachner33
