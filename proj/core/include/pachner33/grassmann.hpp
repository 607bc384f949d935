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

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pachner33/scalar.hpp"

namespace pachner33 {

/// Slot of a generator inside its algebra, in [0, 64).
struct GeneratorId {
  std::uint8_t index = 0;

  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

/// Canonically ordered product of distinct generators, stored as a bit set.
/// Bit i set means x_i is a factor; factors are read in increasing index.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}
  static constexpr Monomial of(GeneratorId g) { return Monomial(std::uint64_t{1} << g.index); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int degree() const { return std::popcount(bits_); }
  constexpr bool contains(GeneratorId g) const { return (bits_ >> g.index) & 1u; }
  constexpr bool is_unit() const { return bits_ == 0; }

  std::vector<GeneratorId> generators() const;

  /// Ordered by degree, then lexicographically on the sorted generator lists.
  friend constexpr bool operator<(Monomial a, Monomial b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return false;
    return (a.bits_ & (diff & (~diff + 1))) != 0;
  }
  friend constexpr bool operator==(Monomial, Monomial) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Sign (+1/-1) of reordering the concatenation a·b into canonical order;
/// 0 if the monomials share a generator.
int product_sign(Monomial a, Monomial b);

/// Generator registry plus coefficient field. Frozen at construction;
/// insertion order is the canonical generator order.
class Algebra {
 public:
  static constexpr std::size_t kMaxGenerators = 64;

  static std::shared_ptr<const Algebra> create(Field field, std::vector<std::string> names);

  const Field& field() const { return field_; }
  std::size_t size() const { return names_.size(); }
  GeneratorId id(std::string_view name) const;
  const std::string& name(GeneratorId g) const;
  bool has(GeneratorId g) const { return g.index < names_.size(); }

  Algebra(Field field, std::vector<std::string> names);

 private:
  Field field_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, GeneratorId> index_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Element of a Grassmann algebra: sparse map Monomial -> Scalar with no
/// stored zero coefficients (exact zero, or below the field's zero
/// tolerance in complex mode).
class Element {
 public:
  using Terms = std::map<Monomial, Scalar>;

  explicit Element(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  static Element zero(AlgebraPtr algebra) { return Element(std::move(algebra)); }
  static Element constant(AlgebraPtr algebra, const Scalar& c);
  static Element one(AlgebraPtr algebra);
  static Element generator(AlgebraPtr algebra, GeneratorId g);
  static Element generator(AlgebraPtr algebra, std::string_view name);
  static Element term(AlgebraPtr algebra, Monomial m, const Scalar& c);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Field& field() const { return algebra_->field(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(Monomial m) const;
  Scalar constant_term() const { return coefficient(Monomial()); }

  /// Terms grouped by total degree. Empty degrees are absent.
  std::map<int, Element> grade_decompose() const;
  /// True iff every term has even degree; the zero element is even.
  bool is_even() const;
  bool is_odd() const;
  int max_degree() const;

  Element operator-() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Scalar& c, const Element& a);
  Element& operator+=(const Element& other);

  /// Exact comparison of term maps (same algebra required).
  friend bool operator==(const Element& a, const Element& b);

  /// Stable debug form: `c * x{a}^x{b} + ...`, terms in Monomial order.
  std::string to_string() const;

 private:
  void add_term(Monomial m, const Scalar& c);
  void check_compatible(const Element& other) const;

  AlgebraPtr algebra_;
  Terms terms_;
};

inline Element scale(const Scalar& c, const Element& a) { return c * a; }

/// Grassmann exponential of an even element without constant term.
/// The series terminates by nilpotency; throws ArithmeticError if some
/// needed n! is not invertible in the field.
Element exp(const Element& a);

/// Single Berezin integral: anticommute x_g to the right end, strip it.
Element berezin(const Element& f, GeneratorId g);

/// Iterated Berezin integral. order[0] is applied first, so the written
/// `∫∫ f dy dx` corresponds to order {y, x}.
Element berezin(const Element& f, std::span<const GeneratorId> order);

}  // namespace pachner33
