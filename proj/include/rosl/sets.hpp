#pragma once
// Nonempty compact convex subsets of R^d (balls, V-polytopes, intervals,
// singletons) with support, projection, distance and Hausdorff queries.

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace rosl {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> coords) : c_(std::move(coords)) {}
  Vector(std::initializer_list<double> coords) : c_(coords) {}

  static Vector zero(int dim) { return Vector(std::vector<double>(dim, 0.0)); }

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  const std::vector<double>& coords() const { return c_; }

  double norm() const;
  bool finite() const;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(double s);

  friend bool operator==(const Vector& a, const Vector& b) { return a.c_ == b.c_; }

 private:
  std::vector<double> c_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);
double dot(const Vector& a, const Vector& b);

struct Ball {
  Vector center;
  double radius = 0.0;
};

struct Polytope {
  std::vector<Vector> vertices;  // the set is the convex hull of these
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Singleton {
  Vector point;
};

/// A nonempty compact convex set. Immutable after construction; construction
/// validates finiteness and shape invariants.
class ConvexSet {
 public:
  using Variant = std::variant<Ball, Polytope, Interval, Singleton>;

  ConvexSet(Ball b);             // NOLINT: implicit by design
  ConvexSet(Polytope p);         // NOLINT
  ConvexSet(Interval iv);        // NOLINT
  ConvexSet(Singleton s);        // NOLINT

  int dim() const { return dim_; }
  const Variant& value() const { return v_; }

  const Ball* as_ball() const { return std::get_if<Ball>(&v_); }
  const Polytope* as_polytope() const { return std::get_if<Polytope>(&v_); }
  const Interval* as_interval() const { return std::get_if<Interval>(&v_); }
  const Singleton* as_singleton() const { return std::get_if<Singleton>(&v_); }

 private:
  Variant v_;
  int dim_ = 0;
};

/// max_{s in S} <s, dir>. Exact for every variant; dir need not be unit.
double support(const ConvexSet& s, const Vector& dir);

/// The unique nearest point of S to y (metric projection).
Vector project(const Vector& y, const ConvexSet& s);

/// |y - project(y, S)|.
double distance(const Vector& y, const ConvexSet& s);

/// max_{a in A} |a|.
double set_norm(const ConvexSet& s);

/// Symmetric Hausdorff distance. Exact closed forms for ball/singleton pairs
/// and for any pair in d=1; otherwise the support functions are compared over
/// a dense direction sample (3600 angles in d=2, 5000 low-discrepancy sphere
/// points in d=3). Polytopes in d > 3 are unsupported.
double hausdorff(const ConvexSet& a, const ConvexSet& b);

struct HausdorffEstimate {
  double value = 0.0;
  bool exact = false;
  double direction_resolution = 0.0;  // max angular gap of the sample; 0 when exact
};

/// Like hausdorff(), but reports whether the value is exact and, if sampled,
/// the angular resolution of the direction sample.
HausdorffEstimate hausdorff_info(const ConvexSet& a, const ConvexSet& b);

// Scalar value range of a 1-dimensional set (used by the interval bisection).
double value_min(const ConvexSet& s);
double value_max(const ConvexSet& s);

namespace detail {

struct HullProjection {
  Vector point;
  std::vector<double> weights;  // convex-combination weights, one per vertex
  int iterations = 0;
  double gap = 0.0;  // optimality gap |x|^2 - min_j <x, p_j> at termination
};

// Nearest point of conv{vertices} to y via Wolfe's recursive nearest-point
// method (a tiny active-set QP over the convex-combination weights).
// Terminates when the optimality gap falls below `tol`; throws when the
// iteration cap 10 * vertices^2 is exhausted first.
HullProjection project_hull(const Vector& y, const std::vector<Vector>& vertices,
                            double tol = 1e-12);

}  // namespace detail

nlohmann::json to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConvexSet& s);
ConvexSet convex_set_from_json(const nlohmann::json& j);

}  // namespace rosl
