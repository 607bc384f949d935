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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pachner33/campaign.hpp"
#include "pachner33/elliptic.hpp"
#include "pachner33/grassmann.hpp"
#include "pachner33/pachner.hpp"
#include "support/dense_oracle.hpp"
#include "support/random_elements.hpp"

using namespace pachner33;

namespace {

constexpr std::uint64_t kSeed = 20261018;
constexpr std::size_t kTrials = 100;
constexpr double kTimeLimitSeconds = 10.0;
constexpr double kEllipticTolerance = 1e-8;
constexpr std::size_t kEllipticSeeds = 20;
constexpr double kRankThreshold = 1e-6;
constexpr std::size_t kOracleCases = 1000;

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s %-4s %-44s %s\n", o.passed ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
  if (!o.passed) ++failures;
}

/// Applies body to kTrials seeded trials and counts the ones returning true.
std::size_t count_passing(std::uint64_t seed, std::size_t trials,
                          const std::function<bool(Rng&)>& body) {
  std::atomic<std::size_t> ok{0};
  run_trials(trials, [&](std::size_t i) {
    Rng rng = trial_rng(seed, i);
    if (body(rng)) ++ok;
  });
  return ok.load();
}

using PhiTweak = std::function<PhiFunction(PhiFunction)>;

std::size_t det33_campaign(const Field& field, const MoveConfig& move,
                           const PhiTweak& tweak = nullptr) {
  return count_passing(kSeed, kTrials, [&](Rng& rng) {
    PhiFunction phi = determinant_phi(sample_generic_vertices(field, rng));
    if (tweak) phi = tweak(std::move(phi));
    return verify_33(move, phi, field).passed;
  });
}

std::string fraction(std::size_t ok, std::size_t total) {
  return std::to_string(ok) + "/" + std::to_string(total);
}

Outcome ac1_rational() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t ok = det33_campaign(Field::rational(), MoveConfig::standard());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << fraction(ok, kTrials) << " trials, " << secs << " s (limit " << kTimeLimitSeconds << " s)";
  return {ok == kTrials && secs < kTimeLimitSeconds, d.str()};
}

Outcome ac2_prime_fields() {
  bool all = true;
  std::string detail;
  for (std::uint64_t p : {5ULL, 101ULL, 65537ULL}) {
    const std::size_t ok = det33_campaign(Field::prime(p), MoveConfig::standard());
    all = all && ok == kTrials;
    detail += "F_" + std::to_string(p) + " " + fraction(ok, kTrials) + "  ";
  }
  return {all, detail};
}

Outcome ac3_cocycle() {
  const Field q = Field::rational();
  const std::vector<Face> tets = all_faces();
  std::atomic<std::size_t> nonzero{0};
  const std::size_t ok = count_passing(kSeed + 3, kTrials, [&](Rng& rng) {
    const PhiFunction phi = determinant_phi(sample_generic_vertices(q, rng));
    bool clean = true;
    for (const Face& t : tets) {
      const auto& v = t.verts();
      if (!cocycle_defect(v[0], v[1], v[2], v[3], phi).is_zero()) {
        ++nonzero;
        clean = false;
      }
    }
    return clean;
  });
  return {tets.size() == 15 && ok == kTrials,
          std::to_string(tets.size()) + " tetrahedra x " + fraction(ok, kTrials) +
              " coordinate sets, " + std::to_string(nonzero.load()) + " nonzero defects"};
}

Outcome ac4_truncation_and_rank() {
  const Field q = Field::rational();
  const AlgebraPtr alg = make_face_algebra(q);
  const MoveConfig move = MoveConfig::standard();
  std::atomic<std::size_t> forms{0};
  const std::size_t ok = count_passing(kSeed + 4, kTrials, [&](Rng& rng) {
    const PhiFunction phi = determinant_phi(sample_generic_vertices(q, rng));
    bool good = true;
    for (Side side : {Side::Lhs, Side::Rhs}) {
      for (const Simplex4& s : move.simplices(side)) {
        const QuadraticForm form = build_phi_form(s, phi, q);
        const Element e = form_to_element(form, alg);
        const bool truncates = exp(e) == Element::one(alg) + e;
        const bool rank2 = rank_of_form(form) == 2;
        if (truncates && rank2) ++forms;
        good = good && truncates && rank2;
      }
    }
    return good;
  });
  return {ok == kTrials, std::to_string(forms.load()) + "/" + std::to_string(6 * kTrials) +
                             " forms with exp = 1 + Phi and rank 2"};
}

Outcome ac5_h_form() {
  const Field q = Field::rational();
  const MoveConfig move = MoveConfig::standard();
  std::atomic<std::size_t> fixed{0};
  const std::size_t ok = count_passing(kSeed + 5, kTrials, [&](Rng& rng) {
    const PhiFunction phi = determinant_phi(sample_generic_vertices(q, rng));
    const auto random_h = [&] {
      return q.random_integer(-9, 9, rng) / q.random_integer(1, 9, rng);
    };
    const HTriple h{random_h(), random_h(), random_h()};
    VerifyOptions options;
    options.h_lhs = h;
    const bool relation = verify_33(move, phi, q, options).passed;
    const HTriple ones{q.one(), q.one(), q.one()};
    const bool ones_fixed = h_transform(ones, phi) == ones;
    if (ones_fixed) ++fixed;
    return relation && ones_fixed;
  });
  return {ok == kTrials, fraction(ok, kTrials) + " trials, (1,1,1) -> (1,1,1) in " +
                             fraction(fixed.load(), kTrials)};
}

Outcome ac6_elliptic() {
  struct Modulus {
    Complex k;
    const char* label;
    int expected_rank;
  };
  // At k = 0 sn reduces to sin and every form has rank 2.
  const std::array<Modulus, 4> moduli{{{Complex(0.0, 0.0), "0", 2},
                                       {Complex(0.3, 0.0), "0.3", 4},
                                       {Complex(0.5, 0.0), "0.5", 4},
                                       {Complex(0.7, 0.1), "0.7+0.1i", 4}}};
  const MoveConfig move = MoveConfig::standard();
  const Field c = Field::complex();
  bool all = true;
  std::ostringstream d;
  double worst = 0.0;
  for (std::size_t m = 0; m < moduli.size(); ++m) {
    const Modulus& mod = moduli[m];
    std::vector<double> residuals(kEllipticSeeds, 0.0);
    std::vector<char> passed(kEllipticSeeds, 0);
    std::vector<char> ranks_ok(kEllipticSeeds, 0);
    run_trials(kEllipticSeeds, [&](std::size_t i) {
      Rng rng = trial_rng(kSeed + 6 + m, i);
      const EllipticVertexData e = sample_generic_elliptic(rng, mod.k);
      const Verification v = verify_33_elliptic(e, kEllipticTolerance);
      residuals[i] = v.max_residual;
      passed[i] = v.passed;
      const PhiFunction phi = elliptic_phi(e);
      bool ranks = true;
      for (Side side : {Side::Lhs, Side::Rhs}) {
        for (const Simplex4& s : move.simplices(side)) {
          ranks = ranks && rank_of_form(build_phi_form(s, phi, c), kRankThreshold) == mod.expected_rank;
        }
      }
      ranks_ok[i] = ranks;
    });
    const auto npass = static_cast<std::size_t>(std::ranges::count(passed, 1));
    const auto nrank = static_cast<std::size_t>(std::ranges::count(ranks_ok, 1));
    const double max_res = *std::ranges::max_element(residuals);
    worst = std::max(worst, max_res);
    all = all && npass == kEllipticSeeds && nrank == kEllipticSeeds;
    d << "k=" << mod.label << " " << fraction(npass, kEllipticSeeds) << " rank" << mod.expected_rank
      << " " << fraction(nrank, kEllipticSeeds) << "; ";
  }
  d << "max residual " << worst << " (tol " << kEllipticTolerance << ")";
  return {all, d.str()};
}

Outcome ac7_oracle() {
  const AlgebraPtr alg = testing::numbered_algebra(Field::rational(), 6);
  Rng rng(kSeed + 7);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < kOracleCases; ++i) {
    const Element f = testing::random_element(alg, rng, 1 + static_cast<int>(rng() % 16));
    std::vector<GeneratorId> order;
    for (int g = 1; g <= 6; ++g) order.push_back(alg->id(std::to_string(g)));
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(1 + rng() % 6);
    if (berezin(f, order) == testing::dense_oracle_berezin(f, order)) ++agree;
  }
  return {agree == kOracleCases, fraction(agree, kOracleCases) + " random elements agree"};
}

Outcome ac8_negative_controls() {
  const Field q = Field::rational();
  const PhiTweak flip_245 = [](PhiFunction phi) -> PhiFunction {
    return [phi](Vertex a, Vertex b, Vertex c) {
      std::array<Vertex, 3> t{a, b, c};
      std::ranges::sort(t);
      const Scalar v = phi(a, b, c);
      return t == std::array<Vertex, 3>{2, 4, 5} ? -v : v;
    };
  };
  const std::size_t flipped_ok = det33_campaign(q, MoveConfig::standard(), flip_245);
  MoveConfig wrong = MoveConfig::standard();
  wrong.rhs[1].orientation = -wrong.rhs[1].orientation;
  const std::size_t table_ok = det33_campaign(q, wrong);
  return {flipped_ok < kTrials && table_ok < kTrials,
          "phi_245 sign flip passes " + fraction(flipped_ok, kTrials) +
              ", wrong p(13456) passes " + fraction(table_ok, kTrials)};
}

Outcome ac9_examples() {
  const AlgebraPtr alg = Algebra::create(Field::rational(), {"1", "2", "3", "4"});
  const auto x = [&](const char* n) { return Element::generator(alg, n); };
  const Element e = exp(x("1") * x("2") + x("3") * x("4"));
  const Element expected = Element::one(alg) + x("1") * x("2") + x("3") * x("4") +
                           x("1") * x("2") * x("3") * x("4");

  const AlgebraPtr xy = Algebra::create(Field::rational(), {"x", "y"});
  const std::array<GeneratorId, 2> dy_dx{xy->id("y"), xy->id("x")};
  const Element integral =
      berezin(Element::generator(xy, "x") * Element::generator(xy, "y"), dy_dx);

  const bool ok = e == expected && integral == Element::one(xy);
  return {ok, "exp(x1x2+x3x4) = " + e.to_string() + ";  int int xy dy dx = " +
                  integral.to_string()};
}

}  // namespace

int main() {
  report("AC1", "3-3 relation over Q, fixed seed, < 10 s", ac1_rational);
  report("AC2", "3-3 relation over F_5, F_101, F_65537", ac2_prime_fields);
  report("AC3", "phi_det cocycle on all tetrahedra", ac3_cocycle);
  report("AC4", "exp(Phi) = 1 + Phi and rank 2", ac4_truncation_and_rank);
  report("AC5", "h-form relation and fixed point", ac5_h_form);
  report("AC6", "elliptic relation and form ranks", ac6_elliptic);
  report("AC7", "Berezin integrator vs dense oracle", ac7_oracle);
  report("AC8", "negative controls break the relation", ac8_negative_controls);
  report("AC9", "worked exp and Berezin examples", ac9_examples);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
