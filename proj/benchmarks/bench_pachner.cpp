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

#include "pachner33/elliptic.hpp"
#include "pachner33/pachner.hpp"

namespace {

using namespace pachner33;

void BM_Verify33(benchmark::State& state, Field field) {
  Rng rng(7);
  const PhiFunction phi = determinant_phi(sample_generic_vertices(field, rng));
  const MoveConfig move = MoveConfig::standard();
  for (auto _ : state) benchmark::DoNotOptimize(verify_33(move, phi, field).passed);
}
BENCHMARK_CAPTURE(BM_Verify33, rational, Field::rational());
BENCHMARK_CAPTURE(BM_Verify33, f65537, Field::prime(65537));

void BM_Verify33Elliptic(benchmark::State& state) {
  Rng rng(7);
  const EllipticVertexData e = sample_generic_elliptic(rng, Complex(0.7, 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(verify_33_elliptic(e, 1e-8).passed);
}
BENCHMARK(BM_Verify33Elliptic);

void BM_JacobiSn(benchmark::State& state) {
  const Complex k(0.7, 0.1);
  Complex u(0.1, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sn(u, k));
    u += Complex(1e-3, 0.0);
  }
}
BENCHMARK(BM_JacobiSn);

}  // namespace
BENCHMARK_MAIN();
