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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "pachner33/grassmann.hpp"

namespace {

using namespace pachner33;

AlgebraPtr algebra_of(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  return Algebra::create(Field::rational(), names);
}

/// Sum of `terms` pseudo-random monomials of degree <= 3.
Element dense_element(const AlgebraPtr& alg, int terms, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(alg->size());
  Element e(alg);
  for (int t = 0; t < terms; ++t) {
    std::uint64_t bits = 0;
    for (int d = 0; d < 3; ++d) bits |= std::uint64_t{1} << (rng() % n);
    e += Element::term(alg, Monomial(bits), Scalar::rational(static_cast<long>(rng() % 7) - 3));
  }
  return e;
}

void BM_Multiply(benchmark::State& state) {
  const AlgebraPtr alg = algebra_of(16);
  Rng rng(1);
  const Element a = dense_element(alg, static_cast<int>(state.range(0)), rng);
  const Element b = dense_element(alg, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Multiply)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_Exp(benchmark::State& state) {
  const AlgebraPtr alg = algebra_of(static_cast<int>(2 * state.range(0)));
  Element a(alg);
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    a += Element::generator(alg, GeneratorId{static_cast<std::uint8_t>(2 * i)}) *
         Element::generator(alg, GeneratorId{static_cast<std::uint8_t>(2 * i + 1)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(exp(a));
}
BENCHMARK(BM_Exp)->DenseRange(2, 6);

void BM_BerezinAll(benchmark::State& state) {
  const AlgebraPtr alg = algebra_of(16);
  Rng rng(2);
  const Element f = dense_element(alg, 256, rng);
  std::vector<GeneratorId> order;
  for (std::uint8_t g = 0; g < 8; ++g) order.push_back(GeneratorId{g});
  for (auto _ : state) benchmark::DoNotOptimize(berezin(f, order));
}
BENCHMARK(BM_BerezinAll);

}  // namespace
