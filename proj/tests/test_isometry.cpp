#include <random>

#include "doctest.h"

#include "cubical/isometry.hpp"
#include "test_support.hpp"

using namespace cubical;

namespace {

RationalOrthoAffine rotation345(RatVec b = {Rational(0), Rational(0)}) {
  return RationalOrthoAffine({{Rational(3, 5), Rational(-4, 5)},
                              {Rational(4, 5), Rational(3, 5)}},
                             std::move(b));
}

RationalOrthoAffine swap_reflection_1387() {
  return RationalOrthoAffine({{Rational(-5, 13), Rational(12, 13)},
                              {Rational(12, 13), Rational(5, 13)}},
                             {Rational(0), Rational(0)});
}

}  // namespace

TEST_CASE("orthogonality check") {
  CHECK(check_orthogonal(identity_matrix(3)));
  CHECK(check_orthogonal({{Rational(3, 5), Rational(-4, 5)}, {Rational(4, 5), Rational(3, 5)}}));
  CHECK_FALSE(check_orthogonal({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}}));
  CHECK_THROWS_AS(check_orthogonal({{Rational(1), Rational(0)}}), std::invalid_argument);
}

TEST_CASE("translation reduction") {
  auto t1 = RationalOrthoAffine(identity_matrix(2), {Rational(3), Rational(-2)});
  auto [r1, s1] = reduce_translation(t1);
  CHECK(r1.b == RatVec{Rational(0), Rational(0)});
  CHECK(s1 == std::vector<long long>{3, -2});

  auto t2 = RationalOrthoAffine(identity_matrix(2), {Rational(7, 10), Rational(0)});
  auto [r2, s2] = reduce_translation(t2);
  CHECK(r2.b == RatVec{Rational(-3, 10), Rational(0)});
  CHECK(s2 == std::vector<long long>{1, 0});

  // Ties round toward zero.
  auto t3 = RationalOrthoAffine(identity_matrix(2), {Rational(1, 2), Rational(1, 2)});
  auto [r3, s3] = reduce_translation(t3);
  CHECK(r3.b == RatVec{Rational(1, 2), Rational(1, 2)});
  CHECK(s3 == std::vector<long long>{0, 0});

  auto t4 = RationalOrthoAffine(identity_matrix(2), {Rational(-1, 2), Rational(3, 2)});
  auto [r4, s4] = reduce_translation(t4);
  CHECK(r4.b == RatVec{Rational(-1, 2), Rational(1, 2)});
  CHECK(s4 == std::vector<long long>{0, 1});

  // Exact bound 2 b_i^2 < 1 and vanishing of integral components.
  for (const auto& x : r2.b) CHECK(Rational(2) * x * x < Rational(1));
  CHECK(r1.b[0].is_zero());
}

TEST_CASE("cubicality") {
  RatMat swap = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  CHECK(is_cubical_map(RationalOrthoAffine(swap, {Rational(0), Rational(0)})));
  CHECK_FALSE(is_cubical_map(swap_reflection_1387()));
  CHECK_FALSE(is_cubical_map(
      RationalOrthoAffine(identity_matrix(2), {Rational(1, 2), Rational(0)})));
}

TEST_CASE("hypersurface preservation: block witness") {
  // Rotation plus a fixed axis with integral offset.
  RatMat a = identity_matrix(3);
  auto r = rotation345();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[i][j] = r.A[i][j];
  auto t = RationalOrthoAffine(a, {Rational(0), Rational(0), Rational(3)});
  auto split = preserves_proper_hypersurface(t);
  REQUIRE(split.has_value());
  CHECK(split->coords2 == std::vector<int>{2});
  CHECK(split->b2 == RatVec{Rational(3)});
  CHECK(split->hypersurface.free_coords == std::vector<int>{0, 1});

  // Connected non-cubical block with fractional translation: nothing.
  CHECK_FALSE(preserves_proper_hypersurface(rotation345({Rational(1, 3), Rational(0)})));

  // Identity: any singleton component works.
  auto id_split =
      preserves_proper_hypersurface(RationalOrthoAffine(identity_matrix(2), {Rational(0), Rational(0)}));
  REQUIRE(id_split.has_value());
  CHECK(id_split->coords1.size() + id_split->coords2.size() == 2);
}

TEST_CASE("hypersurface decision matches the subset oracle") {
  std::mt19937 rng(20240811);
  int checked = 0;
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < 40; ++i) {
      auto t = test_support::random_map(n, rng);
      CHECK(preserves_proper_hypersurface(t).has_value() == test_support::hypersurface_oracle(t));
      ++checked;
    }
  CHECK(checked == 120);
}

TEST_CASE("normal form classifies blocks") {
  // Quarter turn: wholly cubical, two lambda entries after post-composition.
  auto turn = RationalOrthoAffine({{Rational(0), Rational(-1)}, {Rational(1), Rational(0)}},
                                  {Rational(0), Rational(0)});
  auto nf1 = normal_form(turn);
  CHECK(nf1.all_lambda());
  CHECK(nf1.lambda_rank() == 2);
  CHECK(nf1.reconstruct() == turn);

  // Swap reflection: one strict 2x2 block.
  auto nf2 = normal_form(swap_reflection_1387());
  REQUIRE(nf2.blocks.size() == 1);
  CHECK(nf2.blocks[0].kind == BlockKind::BStrict);
  CHECK(nf2.blocks[0].coords == std::vector<int>{0, 1});
  CHECK(nf2.reconstruct() == swap_reflection_1387());

  // Identity ++ rotation with a fractional translation on the first axis.
  RatMat a = identity_matrix(3);
  auto r = rotation345();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[i + 1][j + 1] = r.A[i][j];
  auto t = RationalOrthoAffine(a, {Rational(1, 2), Rational(0), Rational(0)});
  auto nf3 = normal_form(t);
  REQUIRE(nf3.blocks.size() == 2);
  CHECK(nf3.blocks[0].kind == BlockKind::B0);
  CHECK(nf3.blocks[0].coords == std::vector<int>{0});
  CHECK(nf3.blocks[0].translation == RatVec{Rational(1, 2)});
  CHECK(nf3.blocks[1].kind == BlockKind::BStrict);
  CHECK(nf3.blocks[1].coords == std::vector<int>{1, 2});
  CHECK(nf3.reconstruct() == t);
}

TEST_CASE("normal form round trip and cubicality equivalence on random maps") {
  std::mt19937 rng(77);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + (i % 3);
    auto t = test_support::random_map(n, rng);
    auto nf = normal_form(t);
    CHECK(nf.reconstruct() == t);
    CHECK(nf.all_lambda() == is_cubical_map(t));
  }
  // Signed permutations with integral translations are entirely lambda.
  for (const auto& m : test_support::all_signed_permutations(3)) {
    auto t = RationalOrthoAffine(m, {Rational(1), Rational(0), Rational(-2)});
    CHECK(normal_form(t).all_lambda());
  }
}

TEST_CASE("transverse witness on edges and squares") {
  auto rot = rotation345();
  auto p = transverse_witness(rot, {{0}, {0, 0}});
  auto image = rot.apply(p);
  int non_integral = 0;
  for (const auto& x : image)
    if (!x.is_integer()) ++non_integral;
  CHECK(non_integral == 2);

  CHECK_THROWS_AS(
      transverse_witness(RationalOrthoAffine(identity_matrix(2), {Rational(0), Rational(0)}),
                         {{0}, {0, 0}}),
      std::domain_error);

  // Product of two rational rotations: connected 3x3 pattern; a square must
  // meet cube interiors in all three coordinates.
  RatMat r12 = identity_matrix(3), r23 = identity_matrix(3);
  auto r = rotation345();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      r12[i][j] = r.A[i][j];
      r23[i + 1][j + 1] = r.A[i][j];
    }
  auto prod = RationalOrthoAffine(mat_mul(r12, r23), {Rational(0), Rational(0), Rational(0)});
  REQUIRE_FALSE(preserves_proper_hypersurface(prod).has_value());
  auto w = transverse_witness(prod, {{0, 1}, {0, 0, 0}});
  auto wi = prod.apply(w);
  int count = 0;
  for (const auto& x : wi)
    if (!x.is_integer()) ++count;
  CHECK(count == 3);
}

TEST_CASE("witness property on random hypersurface-free maps") {
  std::mt19937 rng(5150);
  int exercised = 0;
  while (exercised < 50) {
    int n = 2 + (exercised % 3);
    auto t = test_support::random_map(n, rng);
    if (is_cubical_map(t) || preserves_proper_hypersurface(t)) continue;
    int d = 1 + (exercised % (n - 1));
    CubeSpec cube;
    for (int k = 0; k < d; ++k) cube.spanning.push_back(k);
    cube.offset.assign(n, 0);
    RatVec point;
    try {
      point = transverse_witness(t, cube);
    } catch (const std::domain_error&) {
      continue;  // image confined to the hypersurface web; allowed
    }
    auto image = t.apply(point);
    int non_integral = 0;
    for (const auto& x : image)
      if (!x.is_integer()) ++non_integral;
    CHECK(non_integral > d);
    // The witness lies in the open cube.
    for (int k : cube.spanning) {
      CHECK(Rational(0) < point[k]);
      CHECK(point[k] < Rational(1));
    }
    ++exercised;
  }
}

TEST_CASE("general transverse trichotomy") {
  // Identity ++ rotation: an edge along the fixed axis translates.
  RatMat a = identity_matrix(3);
  auto r = rotation345();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[i + 1][j + 1] = r.A[i][j];
  auto t = RationalOrthoAffine(a, {Rational(0), Rational(0), Rational(0)});

  auto fixed_edge = general_transverse(t, {{0}, {0, 0, 0}});
  REQUIRE(std::holds_alternative<IntegralTranslate>(fixed_edge));
  CHECK(std::get<IntegralTranslate>(fixed_edge).shift == std::vector<long long>{0, 0, 0});

  auto rotated_edge = general_transverse(t, {{1}, {0, 0, 0}});
  REQUIRE(std::holds_alternative<RatVec>(rotated_edge));
  auto image = t.apply(std::get<RatVec>(rotated_edge));
  int non_integral = 0;
  for (const auto& x : image)
    if (!x.is_integer()) ++non_integral;
  CHECK(non_integral >= 2);

  // Fractional translation on the rotating block: the fixed-axis edge now
  // lands off the integral web.
  auto t2 = RationalOrthoAffine(a, {Rational(0), Rational(1, 3), Rational(0)});
  auto off = general_transverse(t2, {{0}, {0, 0, 0}});
  CHECK(std::holds_alternative<RatVec>(off));

  // Pure fractional shift along an edge keeps the image inside the
  // 1-skeleton; neither branch of the trichotomy applies.
  auto glide = RationalOrthoAffine(identity_matrix(2), {Rational(1, 2), Rational(0)});
  CHECK_THROWS_AS(general_transverse(glide, {{0}, {0, 0}}), std::domain_error);
}

TEST_CASE("integral point enumeration") {
  CHECK(enumerate_integral_points(2, Rational(1)).size() == 5);
  CHECK(enumerate_integral_points(2, Rational(0)).size() == 1);

  // Boundary sphere of squared radius 65: exactly the sixteen lattice
  // points with both coordinates nonzero norms 1-8 / 4-7.
  auto points = enumerate_integral_points(2, Rational(9));  // radius 9 covers it
  int on_sphere = 0;
  for (const auto& z : points)
    if (z[0] * z[0] + z[1] * z[1] == 65) ++on_sphere;
  CHECK(on_sphere == 16);

  std::vector<std::vector<long long>> expected = {
      {-8, -1}, {-8, 1}, {-7, -4}, {-7, 4}, {-4, -7}, {-4, 7}, {-1, -8}, {-1, 8},
      {1, -8},  {1, 8},  {4, -7},  {4, 7},  {7, -4},  {7, 4},  {8, -1},  {8, 1}};
  std::vector<std::vector<long long>> got;
  for (const auto& z : points)
    if (z[0] * z[0] + z[1] * z[1] == 65) got.push_back(z);
  CHECK(got == expected);
}

TEST_CASE("reduction bound and inverses on random maps") {
  std::mt19937 rng(3133);
  for (int i = 0; i < 120; ++i) {
    int n = 2 + (i % 3);
    auto t = test_support::random_map(n, rng);
    auto [reduced, shift] = reduce_translation(t);
    for (int k = 0; k < n; ++k) {
      CHECK(Rational(2) * reduced.b[k] * reduced.b[k] < Rational(1));
      if (t.b[k].is_integer()) CHECK(reduced.b[k].is_zero());
      CHECK(reduced.b[k] + Rational(shift[k]) == t.b[k]);
    }
    // inverse composes to the identity on both sides
    auto id1 = t.compose_after(t.inverse());
    auto id2 = t.inverse().compose_after(t);
    CHECK(mat_equal(id1.A, identity_matrix(n)));
    CHECK(vec_is_integral(id1.b));
    for (const auto& x : id1.b) CHECK(x.is_zero());
    CHECK(mat_equal(id2.A, identity_matrix(n)));
    for (const auto& x : id2.b) CHECK(x.is_zero());
  }
}

TEST_CASE("isometry JSON uses canonical rational strings") {
  auto t = swap_reflection_1387();
  auto text = t.to_json_string();
  CHECK(text.find("-5/13") != std::string::npos);
  auto parsed = RationalOrthoAffine::from_json_string(text);
  CHECK(parsed == t);
  CHECK(parsed.to_json_string() == text);
}
