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

#include "pachner33/grassmann.hpp"

#include <set>
#include <sstream>
#include <unordered_set>

namespace pachner33 {

std::vector<GeneratorId> Monomial::generators() const {
  std::vector<GeneratorId> out;
  out.reserve(static_cast<std::size_t>(degree()));
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(GeneratorId{static_cast<std::uint8_t>(std::countr_zero(rest))});
  }
  return out;
}

int product_sign(Monomial a, Monomial b) {
  if ((a.bits() & b.bits()) != 0) return 0;
  // Each generator j of b must hop over the generators of a above j.
  int inversions = 0;
  for (std::uint64_t rest = b.bits(); rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const std::uint64_t above = j == 63 ? 0 : ~((std::uint64_t{2} << j) - 1);
    inversions += std::popcount(a.bits() & above);
  }
  return (inversions & 1) ? -1 : 1;
}

Algebra::Algebra(Field field, std::vector<std::string> names)
    : field_(field), names_(std::move(names)) {
  if (names_.size() > kMaxGenerators) {
    throw ConfigError("at most 64 generators per algebra");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto [it, inserted] =
        index_.emplace(names_[i], GeneratorId{static_cast<std::uint8_t>(i)});
    if (!inserted) throw ConfigError("duplicate generator name '" + names_[i] + "'");
  }
}

std::shared_ptr<const Algebra> Algebra::create(Field field, std::vector<std::string> names) {
  return std::make_shared<const Algebra>(field, std::move(names));
}

GeneratorId Algebra::id(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) throw ConfigError("unregistered generator '" + std::string(name) + "'");
  return it->second;
}

const std::string& Algebra::name(GeneratorId g) const {
  if (!has(g)) throw ConfigError("unregistered generator slot " + std::to_string(g.index));
  return names_[g.index];
}

Element Element::constant(AlgebraPtr algebra, const Scalar& c) {
  return term(std::move(algebra), Monomial(), c);
}

Element Element::one(AlgebraPtr algebra) {
  const Scalar unit = algebra->field().one();
  return constant(std::move(algebra), unit);
}

Element Element::generator(AlgebraPtr algebra, GeneratorId g) {
  if (!algebra->has(g)) throw ConfigError("unregistered generator slot " + std::to_string(g.index));
  const Scalar unit = algebra->field().one();
  return term(std::move(algebra), Monomial::of(g), unit);
}

Element Element::generator(AlgebraPtr algebra, std::string_view name) {
  const GeneratorId g = algebra->id(name);
  return generator(std::move(algebra), g);
}

Element Element::term(AlgebraPtr algebra, Monomial m, const Scalar& c) {
  if (m.degree() > 0 && static_cast<std::size_t>(std::bit_width(m.bits())) > algebra->size()) {
    throw ConfigError("monomial references unregistered generators");
  }
  algebra->field().check(c);
  Element e(std::move(algebra));
  e.add_term(m, c);
  return e;
}

void Element::add_term(Monomial m, const Scalar& c) {
  const Field& f = field();
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!f.is_zero(c)) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (f.is_zero(it->second)) terms_.erase(it);
}

void Element::check_compatible(const Element& other) const {
  if (algebra_ != other.algebra_) {
    throw ModeMismatch("elements belong to different algebra instances");
  }
}

Scalar Element::coefficient(Monomial m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? field().zero() : it->second;
}

std::map<int, Element> Element::grade_decompose() const {
  std::map<int, Element> out;
  for (const auto& [m, c] : terms_) {
    auto [it, _] = out.try_emplace(m.degree(), algebra_);
    it->second.terms_.emplace_hint(it->second.terms_.end(), m, c);
  }
  return out;
}

bool Element::is_even() const {
  for (const auto& [m, c] : terms_) {
    if (m.degree() % 2 != 0) return false;
  }
  return true;
}

bool Element::is_odd() const {
  for (const auto& [m, c] : terms_) {
    if (m.degree() % 2 == 0) return false;
  }
  return true;
}

int Element::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Element Element::operator-() const {
  Element out(algebra_);
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, -c);
  return out;
}

Element& Element::operator+=(const Element& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Element operator+(const Element& a, const Element& b) {
  Element out = a;
  out += b;
  return out;
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element operator*(const Element& a, const Element& b) {
  a.check_compatible(b);
  Element out(a.algebra_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const int sign = product_sign(ma, mb);
      if (sign == 0) continue;
      const Scalar c = ca * cb;
      out.add_term(Monomial(ma.bits() | mb.bits()), sign > 0 ? c : -c);
    }
  }
  return out;
}

Element operator*(const Scalar& c, const Element& a) {
  a.field().check(c);
  Element out(a.algebra_);
  for (const auto& [m, v] : a.terms_) out.add_term(m, c * v);
  return out;
}

bool operator==(const Element& a, const Element& b) {
  return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.to_string();
    if (m.is_unit()) continue;
    out << " * ";
    bool first_gen = true;
    for (GeneratorId g : m.generators()) {
      if (!first_gen) out << '^';
      first_gen = false;
      out << "x{" << algebra_->name(g) << '}';
    }
  }
  return out.str();
}

namespace {

/// Monomials that can occur in x * a, ignoring coefficient cancellation.
std::set<std::uint64_t> structural_product(const std::set<std::uint64_t>& x, const Element& a) {
  std::set<std::uint64_t> out;
  for (std::uint64_t m : x) {
    for (const auto& [ma, c] : a.terms()) {
      if ((m & ma.bits()) == 0) out.insert(m | ma.bits());
    }
  }
  return out;
}

}  // namespace

Element exp(const Element& a) {
  if (!a.is_even()) throw ArithmeticError("exp: argument must be an even element");
  if (!a.field().is_zero(a.constant_term())) {
    throw ArithmeticError("exp: argument must have zero constant part");
  }
  const Field& field = a.field();
  Element sum = Element::one(a.algebra());
  Element power = Element::one(a.algebra());  // a^(n-1) / (n-1)!
  std::set<std::uint64_t> support{0};         // monomials a^(n-1) may touch
  for (std::int64_t n = 1; ; ++n) {
    const Scalar n_scalar = field.from_integer(n);
    if (field.is_exact() && n_scalar.is_zero()) {
      // a^n / n! is undefined in characteristic p unless a^n vanishes for
      // structural reasons (too few generators left).
      support = structural_product(support, a);
      if (support.empty()) break;
      throw ArithmeticError("exp: " + std::to_string(n) + "! is not invertible in " + field.name());
    }
    power = n_scalar.inverse() * (power * a);
    if (power.is_zero()) break;
    sum += power;
    if (field.is_exact() && field.modulus() != 0) support = structural_product(support, a);
  }
  return sum;
}

Element berezin(const Element& f, GeneratorId g) {
  if (!f.algebra()->has(g)) {
    throw ConfigError("berezin: unregistered generator slot " + std::to_string(g.index));
  }
  const std::uint64_t bit = std::uint64_t{1} << g.index;
  const std::uint64_t above = g.index == 63 ? 0 : ~((bit << 1) - 1);
  Element out(f.algebra());
  for (const auto& [m, c] : f.terms()) {
    if ((m.bits() & bit) == 0) continue;
    const bool odd_hops = std::popcount(m.bits() & above) & 1;
    out += Element::term(f.algebra(), Monomial(m.bits() & ~bit), odd_hops ? -c : c);
  }
  return out;
}

Element berezin(const Element& f, std::span<const GeneratorId> order) {
  std::unordered_set<std::uint8_t> seen;
  for (GeneratorId g : order) {
    if (!seen.insert(g.index).second) {
      throw ConfigError("berezin: generator slot " + std::to_string(g.index) +
                        " appears twice in the integration order");
    }
  }
  Element out = f;
  for (GeneratorId g : order) out = berezin(out, g);
  return out;
}

}  // namespace pachner33
