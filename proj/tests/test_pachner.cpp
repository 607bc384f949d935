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

#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "pachner33/pachner.hpp"

using namespace pachner33;

namespace {

VertexData coords(const Field& f, std::array<int, 6> xi, std::array<int, 6> eta) {
  VertexData v{{f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero()},
               {f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero()}};
  for (std::size_t i = 0; i < 6; ++i) {
    v.xi[i] = f.from_integer(xi[i]);
    v.eta[i] = f.from_integer(eta[i]);
  }
  return v;
}

PhiFunction sample_phi(const Field& f, std::uint64_t seed) {
  Rng rng(seed);
  return determinant_phi(sample_generic_vertices(f, rng));
}

Element integrate_in_order(Side side, const MoveConfig& move, const PhiFunction& phi,
                           const AlgebraPtr& alg, std::array<std::size_t, 3> perm) {
  const auto& simplices = move.simplices(side);
  Element product = Element::one(alg);
  for (std::size_t i : perm) product = product * weight(simplices[i], phi, alg);
  std::array<GeneratorId, 3> order{};
  for (std::size_t i = 0; i < 3; ++i) order[i] = alg->id(move.inner(side)[i].name());
  return berezin(product, order);
}

}  // namespace

TEST_SUITE("pachner") {

TEST_CASE("faces are order free and named by sorted vertices") {
  CHECK(Face(4, 2, 3, 1) == Face(1, 2, 3, 4));
  CHECK(Face(6, 1, 5, 3).name() == "1356");
  CHECK_THROWS_AS(Face(1, 1, 2, 3), DegenerateDataError);
  CHECK_THROWS_AS(Face(0, 1, 2, 3), DegenerateDataError);
  CHECK(all_faces().size() == 15);
  CHECK(all_two_faces().size() == 20);
  const auto faces = Simplex4{{1, 2, 3, 4, 5}, 1}.faces();
  CHECK(faces[0].name() == "1234");
  CHECK(faces[4].name() == "2345");
  CHECK(std::is_sorted(faces.begin(), faces.end()));
}

TEST_CASE("phi_det") {
  const Field q = Field::rational();
  const VertexData v = coords(q, {0, 1, 0, 5, -2, 3}, {0, 0, 1, 7, 4, -1});
  CHECK(phi_det(1, 2, 3, v) == q.one());
  CHECK(phi_det(2, 1, 3, v) == -phi_det(1, 2, 3, v));
  CHECK(phi_det(2, 3, 1, v) == phi_det(1, 2, 3, v));
  const VertexData line = coords(q, {0, 1, 2, 5, -2, 3}, {0, 1, 2, 7, 4, -1});
  CHECK(phi_det(1, 2, 3, line).is_zero());
  CHECK_THROWS_AS(phi_det(1, 1, 3, v), DegenerateDataError);
  CHECK_THROWS_AS(verify_33(MoveConfig::standard(), determinant_phi(line), q), DegenerateDataError);
}

TEST_CASE("perm_sign") {
  const std::array<Vertex, 5> ref{1, 2, 3, 4, 5};
  CHECK(perm_sign(std::array<Vertex, 5>{1, 2, 3, 4, 5}, ref) == 1);
  CHECK(perm_sign(std::array<Vertex, 5>{2, 1, 3, 4, 5}, ref) == -1);
  // Inversions of (4,1,2,3,5): (4,1), (4,2), (4,3).
  CHECK(perm_sign(std::array<Vertex, 5>{4, 1, 2, 3, 5}, ref) == -1);
  CHECK(perm_sign(std::array<Vertex, 5>{5, 4, 3, 2, 1}, ref) == 1);
  CHECK_THROWS_AS(perm_sign(std::array<Vertex, 5>{1, 2, 3, 4, 6}, ref), DegenerateDataError);
  CHECK_THROWS_AS(perm_sign(std::array<Vertex, 5>{1, 1, 3, 4, 5}, ref), DegenerateDataError);
}

TEST_CASE("cocycle identity holds exactly") {
  for (const Field& field : {Field::rational(), Field::prime(101)}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PhiFunction phi = sample_phi(field, seed);
      for (const Face& t : all_faces()) {
        const auto [a, b, c, d] = t.verts();
        CHECK(cocycle_defect(a, b, c, d, phi).is_zero());
        CHECK(cocycle_defect(b, a, c, d, phi).is_zero());
      }
    }
  }
  CHECK_THROWS_AS(cocycle_defect(1, 1, 2, 3, sample_phi(Field::rational(), 1)), DegenerateDataError);
}

TEST_CASE("sampler is deterministic and generic") {
  const Field q = Field::rational();
  Rng a(42), b(42);
  const VertexData va = sample_generic_vertices(q, a);
  const VertexData vb = sample_generic_vertices(q, b);
  CHECK(va.xi == vb.xi);
  CHECK(va.eta == vb.eta);
  for (const auto& [x, y, z] : all_two_faces()) CHECK_FALSE(phi_det(x, y, z, va).is_zero());
  Rng rng(1);
  // Every point on one line: never generic.
  CHECK_THROWS_AS(sample_generic_vertices(q, rng, 3, 3, 10), DegenerateDataError);
}

TEST_CASE("sampler finds the rare generic configurations of F_5") {
  // Generic sextuples of F_5^2 are affine conics, about 0.3% of all draws.
  const Field f5 = Field::prime(5);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const VertexData v = sample_generic_vertices(f5, rng);
    for (const auto& [x, y, z] : all_two_faces()) REQUIRE_FALSE(phi_det(x, y, z, v).is_zero());
  }
}

TEST_CASE("phi forms are antisymmetric rank-2 matrices") {
  const Field q = Field::rational();
  const MoveConfig move = MoveConfig::standard();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PhiFunction phi = sample_phi(q, seed);
    for (Side side : {Side::Lhs, Side::Rhs}) {
      for (const Simplex4& s : move.simplices(side)) {
        const QuadraticForm form = build_phi_form(s, phi, q);
        for (std::size_t r = 0; r < 5; ++r) {
          CHECK(form.matrix[r][r].is_zero());
          for (std::size_t c = 0; c < 5; ++c) CHECK(form.matrix[r][c] == -form.matrix[c][r]);
        }
        CHECK(rank_of_form(form) == 2);
      }
    }
  }
}

TEST_CASE("form is independent of the d1/d2 labelling") {
  // Rebuild with subscript (d2, a, b, c, d1) and entry (abcd2, abcd1).
  const Field q = Field::rational();
  const PhiFunction phi = sample_phi(q, 7);
  const Simplex4 s{{1, 2, 3, 5, 6}, 1};
  const QuadraticForm form = build_phi_form(s, phi, q);
  auto swapped = form.matrix;
  for (auto& row : swapped) row.fill(q.zero());
  const auto faces = s.faces();
  const auto slot = [&](const Face& f) {
    return static_cast<std::size_t>(std::find(faces.begin(), faces.end(), f) - faces.begin());
  };
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      const Vertex d1 = s.verts[i], d2 = s.verts[j];
      std::vector<Vertex> abc;
      for (Vertex v : s.verts) {
        if (v != d1 && v != d2) abc.push_back(v);
      }
      const std::array<Vertex, 5> sub{d2, abc[0], abc[1], abc[2], d1};
      const Scalar coeff = q.from_integer(perm_sign(sub, s.verts)) * phi(abc[0], abc[1], abc[2]);
      const std::size_t r = slot(Face(abc[0], abc[1], abc[2], d2));
      const std::size_t c = slot(Face(abc[0], abc[1], abc[2], d1));
      swapped[r][c] += coeff;
      swapped[c][r] -= coeff;
    }
  }
  CHECK(swapped == form.matrix);
}

TEST_CASE("form_to_element") {
  const Field q = Field::rational();
  const AlgebraPtr alg = make_face_algebra(q);
  QuadraticForm zero = build_phi_form(Simplex4{{1, 2, 3, 4, 5}, 1}, sample_phi(q, 3), q);
  for (auto& row : zero.matrix) row.fill(q.zero());
  CHECK(form_to_element(zero, alg).is_zero());
  CHECK(rank_of_form(zero) == 0);

  QuadraticForm single = zero;
  single.matrix[0][1] = q.from_integer(5);
  single.matrix[1][0] = q.from_integer(-5);
  const Element e = form_to_element(single, alg);
  CHECK(e == q.from_integer(5) * (Element::generator(alg, "1234") * Element::generator(alg, "1235")));
  CHECK(rank_of_form(single) == 2);

  const QuadraticForm form = build_phi_form(Simplex4{{1, 3, 4, 5, 6}, -1}, sample_phi(q, 4), q);
  const Element back = form_to_element(form, alg);
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = r + 1; c < 5; ++c) {
      const Monomial m(Monomial::of(alg->id(form.faces[r].name())).bits() |
                       Monomial::of(alg->id(form.faces[c].name())).bits());
      CHECK(back.coefficient(m) == form.matrix[r][c]);
    }
  }
  const AlgebraPtr small = Algebra::create(q, {"1234", "1235"});
  CHECK_THROWS_AS(form_to_element(form, small), ConfigError);
}

TEST_CASE("exp weights truncate to 1 + Phi and match h = 1") {
  const Field q = Field::rational();
  const AlgebraPtr alg = make_face_algebra(q);
  const MoveConfig move = MoveConfig::standard();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PhiFunction phi = sample_phi(q, seed);
    for (Side side : {Side::Lhs, Side::Rhs}) {
      for (const Simplex4& s : move.simplices(side)) {
        const Element form = form_to_element(build_phi_form(s, phi, q), alg);
        const Element w = weight(s, phi, alg);
        CHECK(w == Element::one(alg) + form);
        CHECK(weight(s, phi, alg, q.one()) == w);
        CHECK(w.max_degree() == 2);
      }
    }
  }
}

TEST_CASE("side integrals live on the boundary and are odd") {
  const Field q = Field::rational();
  const AlgebraPtr alg = make_face_algebra(q);
  const MoveConfig move = MoveConfig::standard();
  const auto lhs_boundary = move.boundary_faces(Side::Lhs);
  CHECK(lhs_boundary.size() == 9);
  CHECK(lhs_boundary == move.boundary_faces(Side::Rhs));

  std::uint64_t boundary_mask = 0;
  for (const Face& f : lhs_boundary) boundary_mask |= Monomial::of(alg->id(f.name())).bits();

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PhiFunction phi = sample_phi(q, seed);
    for (Side side : {Side::Lhs, Side::Rhs}) {
      const Element r = side_integral(side, move, phi, alg);
      CHECK_FALSE(r.is_zero());
      CHECK(r.is_odd());
      std::uint64_t support = 0;
      for (const auto& [m, c] : r.terms()) support |= m.bits();
      CHECK((support & ~boundary_mask) == 0);
      if (seed == 0) CHECK(support == boundary_mask);
      for (const Face& f : move.inner(side)) CHECK((support & Monomial::of(alg->id(f.name())).bits()) == 0);
    }
  }
}

TEST_CASE("weight order inside the integrand is immaterial") {
  const Field q = Field::rational();
  const AlgebraPtr alg = make_face_algebra(q);
  const MoveConfig move = MoveConfig::standard();
  const PhiFunction phi = sample_phi(q, 11);
  for (Side side : {Side::Lhs, Side::Rhs}) {
    const Element written = side_integral(side, move, phi, alg);
    std::array<std::size_t, 3> perm{0, 1, 2};
    do {
      CHECK(integrate_in_order(side, move, phi, alg, perm) == written);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("3-3 relation holds exactly with the minus sign") {
  const MoveConfig move = MoveConfig::standard();
  for (const Field& field : {Field::rational(), Field::prime(5), Field::prime(101), Field::prime(65537)}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Verification v = verify_33(move, sample_phi(field, seed), field);
      CHECK_MESSAGE(v.passed, field.name() << " seed " << seed);
      CHECK_FALSE(v.plus_sign_matches);
      CHECK(v.mismatches == 0);
      CHECK(v.coefficient_count > 0);
      CHECK(v.lhs == -v.rhs);
    }
  }
}

TEST_CASE("flipping all orientations keeps the relation") {
  const Field q = Field::rational();
  const MoveConfig flipped = MoveConfig::standard().with_flipped_orientations();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(verify_33(flipped, sample_phi(q, seed), q).passed);
  }
}

TEST_CASE("negative controls fail") {
  const Field q = Field::rational();
  const PhiFunction phi = sample_phi(q, 5);

  SUBCASE("one phi value with flipped sign") {
    const PhiFunction corrupted = [phi](Vertex a, Vertex b, Vertex c) {
      const std::set<Vertex> face{a, b, c};
      const Scalar value = phi(a, b, c);
      return face == std::set<Vertex>{2, 4, 5} ? -value : value;
    };
    const Verification v = verify_33(MoveConfig::standard(), corrupted, q);
    CHECK_FALSE(v.passed);
    CHECK(v.mismatches > 0);
    CHECK_FALSE(v.residuals.empty());
  }

  SUBCASE("literal left-hand p-table") {
    MoveConfig move = MoveConfig::standard();
    move.lhs[2].orientation = -1;
    CHECK_FALSE(verify_33(move, phi, q).passed);
  }

  SUBCASE("single rhs orientation flipped") {
    MoveConfig move = MoveConfig::standard();
    move.rhs[1].orientation = 1;
    CHECK_FALSE(verify_33(move, phi, q).passed);
  }
}

TEST_CASE("h_transform") {
  const Field q = Field::rational();
  const PhiFunction phi = sample_phi(q, 8);
  const HTriple zeros{q.zero(), q.zero(), q.zero()};
  CHECK(h_transform(zeros, phi) == zeros);
  const HTriple ones{q.one(), q.one(), q.one()};
  CHECK(h_transform(ones, phi) == ones);

  const Field f = Field::prime(65537);
  const PhiFunction phi_p = sample_phi(f, 8);
  CHECK(h_transform({f.one(), f.one(), f.one()}, phi_p) == HTriple{f.one(), f.one(), f.one()});

  const PhiFunction degenerate = [phi](Vertex a, Vertex b, Vertex c) {
    const std::set<Vertex> face{a, b, c};
    return face == std::set<Vertex>{4, 5, 6} ? Scalar::rational(0) : phi(a, b, c);
  };
  CHECK_THROWS_AS(h_transform(ones, degenerate), DegenerateDataError);
}

TEST_CASE("h-form weights satisfy the relation with transformed coefficients") {
  const Field q = Field::rational();
  Rng rng(77);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PhiFunction phi = sample_phi(q, seed);
    VerifyOptions options;
    options.h_lhs = HTriple{q.random_integer(-9, 9, rng) / q.random_integer(1, 9, rng),
                            q.random_integer(-9, 9, rng) / q.random_integer(1, 9, rng),
                            q.random_integer(-9, 9, rng) / q.random_integer(1, 9, rng)};
    CHECK(verify_33(MoveConfig::standard(), phi, q, options).passed);
  }
}

TEST_CASE("h-form with untransformed rhs coefficients fails") {
  const Field q = Field::rational();
  const PhiFunction phi = sample_phi(q, 2);
  const AlgebraPtr alg = make_face_algebra(q);
  const MoveConfig move = MoveConfig::standard();
  const HTriple h{q.from_integer(2), q.from_integer(-3), q.from_integer(5)};
  const Element lhs = phi(1, 2, 3).inverse() * side_integral(Side::Lhs, move, phi, alg, h);
  const Element rhs_ok = phi(4, 5, 6).inverse() * side_integral(Side::Rhs, move, phi, alg, h_transform(h, phi));
  const Element rhs_bad = phi(4, 5, 6).inverse() * side_integral(Side::Rhs, move, phi, alg, h);
  CHECK(lhs == -rhs_ok);
  CHECK_FALSE(lhs == -rhs_bad);
}

}  // TEST_SUITE
