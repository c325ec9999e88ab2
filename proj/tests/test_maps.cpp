#include "rosl/maps.hpp"

#include <cmath>

#include "doctest.h"
#include "rosl/rng.hpp"

using namespace rosl;

namespace {

const Polytope kDiamond{{Vector{1, 0}, Vector{0, -1}, Vector{-1, 0}, Vector{0, 1}}};

RotatedPolytopeSpec rotated_square_spec() {
  RotatedPolytopeSpec s;
  s.matrix = {{{-3.0, 0.0}, {0.0, -3.0}}};
  s.polytope = kDiamond;
  s.declared_l = -2.0;
  s.declared_L = 3.0;
  return s;
}

Multimap identity_map() {
  return Multimap(
      1, [](const Vector& x) -> ConvexSet { return Singleton{x}; }, 1.0, 1.0, "identity");
}

const Box kBox22{Vector{-2, -2}, Vector{2, 2}};
const Box kBox33{Vector{-3, -3}, Vector{3, 3}};

}  // namespace

TEST_CASE("evaluate: rotation2d formula") {
  Multimap f = make_multimap(Rotation2DSpec{-1.0, std::sqrt(2.0), {}, {}});
  ConvexSet fx = evaluate(f, Vector{1, 0});
  const Singleton* s = fx.as_singleton();
  REQUIRE(s != nullptr);
  CHECK((s->point - Vector{-1, -1}).norm() < 1e-12);
  CHECK(f.declared_l() == -1.0);
  CHECK(f.declared_L() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("evaluate: piecewise1d branches") {
  Multimap f = make_multimap(Piecewise1DSpec{-1.0, 3.0, {}, {}});
  CHECK(evaluate(f, Vector{0.5}).as_singleton()->point[0] == doctest::Approx(-1.5));
  const double xs[] = {-2, -1, 0, 1, 2};
  const double ys[] = {4, 3, 0, -3, -4};
  for (int i = 0; i < 5; ++i)
    CHECK(evaluate(f, Vector{xs[i]}).as_singleton()->point[0] ==
          doctest::Approx(ys[i]).epsilon(1e-14));
}

TEST_CASE("evaluate: rotated polytope at the origin is the polytope itself") {
  Multimap f = make_multimap(rotated_square_spec());
  ConvexSet fx = evaluate(f, Vector{0, 0});
  const Polytope* p = fx.as_polytope();
  REQUIRE(p != nullptr);
  REQUIRE(p->vertices.size() == 4);
  for (size_t i = 0; i < 4; ++i)
    CHECK((p->vertices[i] - kDiamond.vertices[i]).norm() < 1e-15);
}

TEST_CASE("evaluate: rotated polytope vertices are M*x + A(|x|)*v") {
  Multimap f = make_multimap(rotated_square_spec());
  Vector x{1, 0};
  ConvexSet fx = evaluate(f, x);
  const Polytope* p = fx.as_polytope();
  REQUIRE(p != nullptr);
  const double c = std::cos(1.0), s = std::sin(1.0);
  for (size_t i = 0; i < 4; ++i) {
    const Vector& v = kDiamond.vertices[i];
    Vector expect{-3.0 + c * v[0] - s * v[1], s * v[0] + c * v[1]};
    CHECK((p->vertices[i] - expect).norm() < 1e-14);
  }
}

TEST_CASE("evaluate: input validation and determinism") {
  Multimap f = make_multimap(Rotation2DSpec{-1.0, 1.5, {}, {}});
  CHECK_THROWS_AS(evaluate(f, Vector{1.0}), std::invalid_argument);
  double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(evaluate(f, Vector{nan, 0.0}), std::invalid_argument);

  ConvexSet a = evaluate(f, Vector{0.3, -0.7});
  ConvexSet b = evaluate(f, Vector{0.3, -0.7});
  CHECK(a.as_singleton()->point == b.as_singleton()->point);
}

TEST_CASE("map constructors: constant validation") {
  CHECK_THROWS_AS(make_multimap(Rotation2DSpec{-1.0, 0.5, {}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(make_multimap(Rotation2DSpec{0.5, 1.0, {}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(make_multimap(Piecewise1DSpec{-1.0, 0.2, {}, {}}), std::invalid_argument);
  RotatedPolytopeSpec bad = rotated_square_spec();
  bad.polytope = Polytope{{Vector{1.0}}};
  CHECK_THROWS_AS(make_multimap(bad), std::invalid_argument);
}

TEST_CASE("rosl_pair_check: rotation2d attains l exactly") {
  Multimap f = make_multimap(Rotation2DSpec{-1.0, std::sqrt(2.0), {}, {}});
  CHECK(rosl_pair_check(f, Vector{1, 0}, Vector{0, 0}, -1.0));
  CHECK_THROWS_AS(rosl_pair_check(f, Vector{1, 0}, Vector{1, 0}, -1.0), std::invalid_argument);

  // Sharpness: l holds on random pairs, l - 0.01 fails somewhere.
  SplitMix64 rng(9);
  bool tighter_failed = false;
  for (int k = 0; k < 1000; ++k) {
    Vector x{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    Vector x2{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    if ((x - x2).norm() < 1e-9) continue;
    CHECK(rosl_pair_check(f, x, x2, -1.0));
    if (!rosl_pair_check(f, x, x2, -1.01)) tighter_failed = true;
  }
  CHECK(tighter_failed);
}

TEST_CASE("rosl_pair_check: rotated square and identity map") {
  Multimap f = make_multimap(rotated_square_spec());
  // Oracle: enumerate rotated vertices. support(F(1,0)) - support(F(0,0))
  // along d = (1,0) is (-3 + sin 1) - 1, far below -2*|d|^2.
  Vector x{1, 0}, x2{0, 0}, d = x - x2;
  double s1 = support(evaluate(f, x), d);
  double s2 = support(evaluate(f, x2), d);
  CHECK(s1 == doctest::Approx(-3.0 + std::sin(1.0)).epsilon(1e-12));
  CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s1 - s2 <= -2.0 * dot(d, d));
  CHECK(rosl_pair_check(f, x, x2, -2.0));

  Multimap id = identity_map();
  CHECK(!rosl_pair_check(id, Vector{1.0}, Vector{0.0}, -1.0));
}

TEST_CASE("estimate_lipschitz: conformal map is exact, constant map is zero") {
  Multimap rot = make_multimap(Rotation2DSpec{-1.0, std::sqrt(2.0), {}, {}});
  double L = estimate_lipschitz(rot, kBox22, 500, 17);
  CHECK(L == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(std::abs(L - std::sqrt(2.0)) <= 1e-6);

  Multimap constant = make_multimap(ConstantSpec{ConvexSet(kDiamond), {}, {}});
  CHECK(estimate_lipschitz(constant, kBox22, 100, 17) == 0.0);
}

TEST_CASE("estimate_rosl: rotation2d and piecewise1d hit the declared l") {
  Multimap rot = make_multimap(Rotation2DSpec{-1.0, std::sqrt(2.0), {}, {}});
  CHECK(estimate_rosl(rot, kBox22, 500, 17) == doctest::Approx(-1.0).epsilon(1e-9));

  Multimap pw = make_multimap(Piecewise1DSpec{-1.0, 3.0, {}, {}});
  Box box1{Vector{-3.0}, Vector{3.0}};
  double l_est = estimate_rosl(pw, box1, 2000, 17);
  CHECK(l_est <= -1.0 + 1e-6);
  CHECK(l_est >= -1.0 - 1e-9);  // same-side outer pairs realize exactly l
}

TEST_CASE("estimators: rotated square stays within the declared constants") {
  Multimap f = make_multimap(rotated_square_spec());
  double L_est = estimate_lipschitz(f, kBox33, 2000, 23);
  CHECK(L_est <= 4.0 + 1e-6);
  CHECK(L_est >= 3.0 - 1e-6);  // same-norm pairs realize the translation part alone
  double l_est = estimate_rosl(f, kBox33, 2000, 23);
  CHECK(l_est <= -2.0 + 1e-6);
}

TEST_CASE("estimators: deterministic and monotone under nested sampling") {
  Multimap f = make_multimap(rotated_square_spec());
  double a = estimate_lipschitz(f, kBox33, 300, 99);
  double b = estimate_lipschitz(f, kBox33, 300, 99);
  CHECK(a == b);
  double c = estimate_lipschitz(f, kBox33, 900, 99);
  CHECK(c >= a);
  double ra = estimate_rosl(f, kBox33, 300, 99);
  double rc = estimate_rosl(f, kBox33, 900, 99);
  CHECK(rc >= ra);

  CHECK_THROWS_AS(estimate_rosl(f, kBox33, 1, 99), std::invalid_argument);
  Box degenerate{Vector{0, 0}, Vector{0, 1}};
  CHECK_THROWS_AS(estimate_rosl(f, degenerate, 10, 99), std::invalid_argument);
}

TEST_CASE("json: map specs round trip") {
  BuiltinMapSpec specs[] = {
      Rotation2DSpec{-1.0, 1.5, {}, {}},
      Piecewise1DSpec{-1.0, 3.0, {}, {}},
      rotated_square_spec(),
      ConstantSpec{ConvexSet(kDiamond), -2.0, 0.0},
  };
  for (const BuiltinMapSpec& s : specs) {
    nlohmann::json j = to_json(s);
    Multimap f = multimap_from_json(j);
    Multimap g = make_multimap(s);
    CHECK(f.dim() == g.dim());
    CHECK(f.declared_l() == g.declared_l());
    CHECK(f.declared_L() == g.declared_L());
    SplitMix64 rng(3);
    for (int k = 0; k < 5; ++k) {
      std::vector<double> c(f.dim());
      for (double& ci : c) ci = rng.uniform(-2, 2);
      Vector x(c);
      CHECK(hausdorff(f(x), g(x)) == 0.0);
    }
  }

  Multimap f = multimap_from_json(
      nlohmann::json::parse(R"({"rotation2d":{"l":-1,"L":1.5,"declared_l":-0.5}})"));
  CHECK(f.declared_l() == -0.5);
  CHECK(f.declared_L() == 1.5);

  CHECK_THROWS_AS(multimap_from_json(nlohmann::json::parse(R"({"spiral":{}})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(multimap_from_json(nlohmann::json::parse(
                      R"({"rotated_polytope":{"matrix":[[1,0]],"polytope":{"vertices":[[1,0]]}}})")),
                  std::invalid_argument);
}
