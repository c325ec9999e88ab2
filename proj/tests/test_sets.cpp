#include "rosl/sets.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rosl/rng.hpp"

using namespace rosl;

namespace {

const Polytope kDiamond{{Vector{1, 0}, Vector{0, -1}, Vector{-1, 0}, Vector{0, 1}}};

Polytope random_polytope(SplitMix64& rng, int max_vertices) {
  int m = 1 + static_cast<int>(rng.next() % max_vertices);
  Polytope p;
  for (int i = 0; i < m; ++i)
    p.vertices.push_back(Vector{rng.uniform(-4, 4), rng.uniform(-4, 4)});
  return p;
}

}  // namespace

TEST_CASE("support: closed forms per variant") {
  CHECK(support(Ball{Vector{1, 0}, 2.0}, Vector{1, 0}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(support(ConvexSet(kDiamond), Vector{1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(support(Singleton{Vector{2, 3}}, Vector{0, 1}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(support(Interval{-2.0, 5.0}, Vector{-1.0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(support(Ball{Vector{0, 0}, 1.0}, Vector{1.0}), std::invalid_argument);
}

TEST_CASE("support: positive homogeneity") {
  SplitMix64 rng(11);
  ConvexSet sets[] = {ConvexSet(kDiamond), ConvexSet(Ball{Vector{0.5, -1}, 2.0}),
                      ConvexSet(Singleton{Vector{2, 3}})};
  for (const ConvexSet& s : sets) {
    for (int k = 0; k < 50; ++k) {
      Vector dir{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      double lambda = rng.uniform(0.01, 10.0);
      double lhs = support(s, lambda * dir);
      double rhs = lambda * support(s, dir);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("project: ball, interval, singleton closed forms") {
  Vector p = project(Vector{3, 0}, Ball{Vector{0, 0}, 1.0});
  CHECK((p - Vector{1, 0}).norm() < 1e-14);
  CHECK(project(Vector{0.2, 0.3}, Ball{Vector{0, 0}, 1.0}) == Vector{0.2, 0.3});
  CHECK(project(Vector{7.0}, Interval{-1.0, 2.0})[0] == 2.0);
  CHECK(project(Vector{5, 5}, Singleton{Vector{1, 2}}) == Vector{1, 2});
}

TEST_CASE("project: polytope nearest point (oracle-checked)") {
  // Interior point maps to itself.
  Vector inside = project(Vector{0.5, 0}, ConvexSet(kDiamond));
  CHECK((inside - Vector{0.5, 0}).norm() < 1e-10);

  // (2,2) projects onto the edge x+y=1 at (0.5, 0.5); confirmed by dense
  // brute force over convex combinations before freezing.
  auto brute = oracles::brute_hull_nearest(Vector{2, 2}, kDiamond.vertices, 200000, 7);
  CHECK((brute.nearest - Vector{0.5, 0.5}).norm() < 5e-3);
  Vector p = project(Vector{2, 2}, ConvexSet(kDiamond));
  CHECK((p - Vector{0.5, 0.5}).norm() < 1e-9);

  CHECK_THROWS_AS(project(Vector{1.0}, ConvexSet(kDiamond)), std::invalid_argument);
}

TEST_CASE("project: degenerate polytopes are accepted") {
  Polytope dup{{Vector{1, 1}, Vector{1, 1}, Vector{1, 1}}};
  CHECK((project(Vector{0, 0}, ConvexSet(dup)) - Vector{1, 1}).norm() < 1e-12);

  Polytope collinear{{Vector{-1, 0}, Vector{0, 0}, Vector{0.5, 0}, Vector{1, 0}}};
  Vector p = project(Vector{0.25, 2}, ConvexSet(collinear));
  CHECK((p - Vector{0.25, 0}).norm() < 1e-9);
}

TEST_CASE("distance: examples") {
  CHECK(distance(Vector{3, 0}, Ball{Vector{0, 0}, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(distance(Vector{0, 0}, ConvexSet(kDiamond)) < 1e-12);
  // |(2,2) - (0.5,0.5)| = 1.5*sqrt(2); same oracle as the projection test.
  CHECK(distance(Vector{2, 2}, ConvexSet(kDiamond)) ==
        doctest::Approx(1.5 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("distance: zero on convex combinations of vertices") {
  SplitMix64 rng(23);
  for (int t = 0; t < 20; ++t) {
    Polytope poly = random_polytope(rng, 8);
    for (int k = 0; k < 5; ++k) {
      Vector y = oracles::random_hull_point(poly.vertices, rng);
      CHECK(distance(y, ConvexSet(poly)) <= 1e-10);
    }
  }
}

TEST_CASE("projection: idempotence and variational inequality") {
  SplitMix64 rng(42);
  for (int t = 0; t < 30; ++t) {
    Polytope poly = random_polytope(rng, 8);
    ConvexSet s(poly);
    Vector y{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Vector p = project(y, s);
    CHECK((project(p, s) - p).norm() <= 1e-10);
    for (const Vector& v : poly.vertices) CHECK(dot(y - p, v - p) <= 1e-9);
    for (int k = 0; k < 20; ++k) {
      Vector sp = oracles::random_hull_point(poly.vertices, rng);
      CHECK(dot(y - p, sp - p) <= 1e-9);
    }
  }
}

TEST_CASE("projection agrees with dense brute force on random polytopes") {
  SplitMix64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    Polytope poly = random_polytope(rng, 8);
    Vector y{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Vector p = project(y, ConvexSet(poly));
    auto brute = oracles::brute_hull_nearest(y, poly.vertices, 20000, 1000 + t);
    // The projection can never be beaten by a feasible sample.
    CHECK((y - p).norm() <= brute.min_distance + 1e-6);
    // Feasibility of the returned point via the reported weights.
    auto hull = detail::project_hull(y, poly.vertices);
    double wsum = 0.0;
    Vector recon = Vector::zero(2);
    for (size_t i = 0; i < poly.vertices.size(); ++i) {
      CHECK(hull.weights[i] >= -1e-12);
      wsum += hull.weights[i];
      recon += hull.weights[i] * poly.vertices[i];
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-12);
    CHECK((recon - p).norm() <= 1e-10);
  }
}

TEST_CASE("hausdorff: closed forms and identity") {
  CHECK(hausdorff(Ball{Vector{0, 0}, 1.0}, Ball{Vector{0, 0}, 2.0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hausdorff(ConvexSet(kDiamond), ConvexSet(kDiamond)) == 0.0);
  CHECK(hausdorff(Interval{-1, 2}, Interval{0, 2}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hausdorff(Singleton{Vector{1, 1}}, Singleton{Vector{4, 5}}) ==
        doctest::Approx(5.0).epsilon(1e-12));

  auto info = hausdorff_info(Ball{Vector{1, 1}, 0.5}, Ball{Vector{2, 1}, 1.0});
  CHECK(info.exact);
  CHECK(info.value == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("hausdorff: diamond vs unit ball (oracle-checked)") {
  // sup over angles of |max(|cos|,|sin|) - 1| = 1 - 1/sqrt(2); the brute
  // two-sided computation over dense samplings confirms the frozen value.
  double brute = oracles::brute_hausdorff_polytope_ball(kDiamond.vertices, Vector{0, 0}, 1.0,
                                                        20000, 720, 3);
  const double expected = 1.0 - 1.0 / std::sqrt(2.0);
  CHECK(std::abs(brute - expected) < 2e-2);

  auto info = hausdorff_info(ConvexSet(kDiamond), Ball{Vector{0, 0}, 1.0});
  CHECK(!info.exact);
  CHECK(info.direction_resolution > 0.0);
  CHECK(std::abs(info.value - expected) < 1e-6);
}

TEST_CASE("hausdorff: symmetry is bit-identical") {
  SplitMix64 rng(5);
  for (int t = 0; t < 10; ++t) {
    ConvexSet a(random_polytope(rng, 6));
    ConvexSet b(Ball{Vector{rng.uniform(-2, 2), rng.uniform(-2, 2)}, rng.uniform(0, 2)});
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    ConvexSet c(random_polytope(rng, 6));
    CHECK(hausdorff(a, c) == hausdorff(c, a));
  }
}

TEST_CASE("hausdorff: dimension limits") {
  Polytope p4{{Vector{1, 0, 0, 0}, Vector{0, 1, 0, 0}}};
  CHECK_THROWS_AS(hausdorff(ConvexSet(p4), ConvexSet(p4)), std::invalid_argument);
  // Balls stay exact in any dimension.
  CHECK(hausdorff(Ball{Vector{0, 0, 0, 0}, 1.0}, Ball{Vector{0, 0, 0, 0}, 3.0}) ==
        doctest::Approx(2.0));
  // d = 3 sampling path.
  Polytope tetra{{Vector{0, 0, 0}, Vector{1, 0, 0}, Vector{0, 1, 0}, Vector{0, 0, 1}}};
  double h = hausdorff(ConvexSet(tetra), Ball{Vector{0, 0, 0}, 1.0});
  CHECK(h > 0.5);
  CHECK(h < 2.0);
}

TEST_CASE("set_norm: examples") {
  CHECK(set_norm(Ball{Vector{3, 4}, 1.0}) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(set_norm(ConvexSet(kDiamond)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(set_norm(Singleton{Vector{0, 0}}) == 0.0);
  CHECK(set_norm(Interval{-3.0, 2.0}) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("constructors: invariant validation") {
  CHECK_THROWS_AS(ConvexSet(Ball{Vector{0, 0}, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexSet(Interval{2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexSet(Polytope{}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexSet(Polytope{{Vector{1, 0}, Vector{1.0}}}), std::invalid_argument);
  double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(ConvexSet(Singleton{Vector{inf, 0}}), std::invalid_argument);
}

TEST_CASE("json: round trips and errors") {
  ConvexSet sets[] = {ConvexSet(Ball{Vector{1, -2}, 0.5}), ConvexSet(kDiamond),
                      ConvexSet(Interval{-1.5, 2.5}), ConvexSet(Singleton{Vector{3, 4}})};
  for (const ConvexSet& s : sets) {
    ConvexSet back = convex_set_from_json(to_json(s));
    CHECK(back.dim() == s.dim());
    CHECK(hausdorff(s, back) == 0.0);
  }
  CHECK(to_json(ConvexSet(Ball{Vector{1, 0}, 2.0}))["ball"]["radius"] == 2.0);
  CHECK_THROWS_AS(convex_set_from_json(nlohmann::json{{"cube", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(convex_set_from_json(nlohmann::json::parse(R"({"interval":{"lo":3,"hi":1}})")),
                  std::invalid_argument);
}
