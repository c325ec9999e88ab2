#pragma once
// Test-only oracles, independent of the library's solver/projection paths:
// dense-sampling nearest-point search, brute-force Hausdorff distances,
// closed-form 2x2 spectral norms, and dense scalar scans.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rosl/rng.hpp"
#include "rosl/sets.hpp"

namespace oracles {

// Random convex combination over a random vertex subset (subset size 1..m,
// normalized exponential weights). Subsets put sample mass on vertices,
// edges and faces, not just the hull interior.
inline rosl::Vector random_hull_point(const std::vector<rosl::Vector>& vertices,
                                      rosl::SplitMix64& rng) {
  const int m = static_cast<int>(vertices.size());
  const int k = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(m));
  rosl::Vector p = rosl::Vector::zero(vertices.front().dim());
  double total = 0.0;
  std::vector<double> w(k);
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) {
    idx[i] = static_cast<int>(rng.next() % static_cast<std::uint64_t>(m));
    w[i] = -std::log(1.0 - rng.next_double());
    total += w[i];
  }
  for (int i = 0; i < k; ++i) p += (w[i] / total) * vertices[idx[i]];
  return p;
}

struct HullSearch {
  rosl::Vector nearest;
  double min_distance = 0.0;
};

// Dense random search for the nearest point of conv{vertices} to y.
// Vertices themselves are always included as candidates.
inline HullSearch brute_hull_nearest(const rosl::Vector& y,
                                     const std::vector<rosl::Vector>& vertices, int n_samples,
                                     std::uint64_t seed) {
  rosl::SplitMix64 rng(seed);
  HullSearch best{vertices.front(), (y - vertices.front()).norm()};
  for (const rosl::Vector& v : vertices) {
    double d = (y - v).norm();
    if (d < best.min_distance) best = {v, d};
  }
  for (int k = 0; k < n_samples; ++k) {
    rosl::Vector p = random_hull_point(vertices, rng);
    double d = (y - p).norm();
    if (d < best.min_distance) best = {p, d};
  }
  return best;
}

// Largest singular value of [[a, b], [c, d]], from the closed-form
// eigenvalues of M^T M.
inline double mat2_spectral_norm(double a, double b, double c, double d) {
  double t = a * a + b * b + c * c + d * d;
  double det = a * d - b * c;
  double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
  return std::sqrt(0.5 * (t + disc));
}

// Two-sided brute-force Hausdorff distance between a polytope and a ball in
// the plane, over dense samplings of both sets.
inline double brute_hausdorff_polytope_ball(const std::vector<rosl::Vector>& vertices,
                                            const rosl::Vector& center, double radius,
                                            int hull_samples, int boundary_samples,
                                            std::uint64_t seed) {
  rosl::SplitMix64 rng(seed);
  std::vector<rosl::Vector> hull;
  hull.reserve(hull_samples + vertices.size());
  for (const rosl::Vector& v : vertices) hull.push_back(v);
  for (int k = 0; k < hull_samples; ++k) hull.push_back(random_hull_point(vertices, rng));

  // sup over polytope points of dist(p, ball) -- point-to-ball is closed form.
  double sup_pb = 0.0;
  for (const rosl::Vector& p : hull)
    sup_pb = std::max(sup_pb, std::max(0.0, (p - center).norm() - radius));

  // sup over ball boundary of dist(q, polytope), via the dense hull sample.
  double sup_bp = 0.0;
  for (int k = 0; k < boundary_samples; ++k) {
    double t = 2.0 * M_PI * k / boundary_samples;
    rosl::Vector q{center[0] + radius * std::cos(t), center[1] + radius * std::sin(t)};
    double dmin = (q - hull.front()).norm();
    for (const rosl::Vector& p : hull) dmin = std::min(dmin, (q - p).norm());
    sup_bp = std::max(sup_bp, dmin);
  }
  return std::max(sup_pb, sup_bp);
}

}  // namespace oracles
