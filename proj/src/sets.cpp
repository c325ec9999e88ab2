#include "rosl/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rosl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void check_dims(int a, int b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace

double Vector::norm() const {
  double s = 0.0;
  for (double x : c_) s += x * x;
  return std::sqrt(s);
}

bool Vector::finite() const { return all_finite(c_); }

Vector& Vector::operator+=(const Vector& o) {
  check_dims(dim(), o.dim(), "vector add");
  for (int i = 0; i < dim(); ++i) c_[i] += o.c_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  check_dims(dim(), o.dim(), "vector sub");
  for (int i = 0; i < dim(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector a) { return a *= s; }

double dot(const Vector& a, const Vector& b) {
  check_dims(a.dim(), b.dim(), "dot");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

ConvexSet::ConvexSet(Ball b) : v_(std::move(b)) {
  const Ball& bb = std::get<Ball>(v_);
  require(bb.center.dim() >= 1, "ball: center must have dimension >= 1");
  require(bb.center.finite(), "ball: center must be finite");
  require(std::isfinite(bb.radius) && bb.radius >= 0.0, "ball: radius must be finite and >= 0");
  dim_ = bb.center.dim();
}

ConvexSet::ConvexSet(Polytope p) : v_(std::move(p)) {
  const Polytope& pp = std::get<Polytope>(v_);
  require(!pp.vertices.empty(), "polytope: needs at least one vertex");
  dim_ = pp.vertices.front().dim();
  require(dim_ >= 1, "polytope: vertices must have dimension >= 1");
  for (const Vector& v : pp.vertices) {
    require(v.dim() == dim_, "polytope: vertices must share one dimension");
    require(v.finite(), "polytope: vertices must be finite");
  }
}

ConvexSet::ConvexSet(Interval iv) : v_(iv) {
  require(std::isfinite(iv.lo) && std::isfinite(iv.hi), "interval: endpoints must be finite");
  require(iv.lo <= iv.hi, "interval: lo must be <= hi");
  dim_ = 1;
}

ConvexSet::ConvexSet(Singleton s) : v_(std::move(s)) {
  const Singleton& ss = std::get<Singleton>(v_);
  require(ss.point.dim() >= 1, "singleton: point must have dimension >= 1");
  require(ss.point.finite(), "singleton: point must be finite");
  dim_ = ss.point.dim();
}

double support(const ConvexSet& s, const Vector& dir) {
  check_dims(s.dim(), dir.dim(), "support");
  require(dir.finite(), "support: direction must be finite");
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return dot(v.center, dir) + v.radius * dir.norm();
        } else if constexpr (std::is_same_v<T, Polytope>) {
          double best = -std::numeric_limits<double>::infinity();
          for (const Vector& p : v.vertices) best = std::max(best, dot(p, dir));
          return best;
        } else if constexpr (std::is_same_v<T, Interval>) {
          return std::max(v.lo * dir[0], v.hi * dir[0]);
        } else {
          return dot(v.point, dir);
        }
      },
      s.value());
}

namespace detail {

namespace {

// Gaussian elimination with partial pivoting on the bordered Gram system
//   [ G  e ] [u ]   [0]
//   [ e' 0 ] [-mu] = [1]
// for the affine minimizer of |sum u_i q_i|^2 with sum u_i = 1.
// Returns false when the system is (numerically) singular.
bool solve_affine_weights(const std::vector<Vector>& pts, const std::vector<int>& active,
                          std::vector<double>& u_out) {
  const int m = static_cast<int>(active.size());
  const int n = m + 1;
  std::vector<double> a(n * n, 0.0), rhs(n, 0.0);
  double scale = 1.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double g = dot(pts[active[i]], pts[active[j]]);
      a[i * n + j] = g;
      scale = std::max(scale, std::abs(g));
    }
    a[i * n + m] = 1.0;
    a[m * n + i] = 1.0;
  }
  rhs[m] = 1.0;

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  const double pivot_floor = 1e-13 * scale;
  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[perm[r] * n + col]) > std::abs(a[perm[best] * n + col])) best = r;
    std::swap(perm[col], perm[best]);
    double piv = a[perm[col] * n + col];
    if (std::abs(piv) <= pivot_floor) return false;
    for (int r = col + 1; r < n; ++r) {
      double f = a[perm[r] * n + col] / piv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[perm[r] * n + c] -= f * a[perm[col] * n + c];
      rhs[perm[r]] -= f * rhs[perm[col]];
    }
  }
  std::vector<double> sol(n);
  for (int col = n - 1; col >= 0; --col) {
    double s = rhs[perm[col]];
    for (int c = col + 1; c < n; ++c) s -= a[perm[col] * n + c] * sol[c];
    sol[col] = s / a[perm[col] * n + col];
  }
  u_out.assign(sol.begin(), sol.begin() + m);
  return true;
}

Vector combine(const std::vector<Vector>& pts, const std::vector<int>& active,
               const std::vector<double>& w) {
  Vector x = Vector::zero(pts.front().dim());
  for (size_t i = 0; i < active.size(); ++i) x += w[i] * pts[active[i]];
  return x;
}

}  // namespace

HullProjection project_hull(const Vector& y, const std::vector<Vector>& vertices, double tol) {
  const int m = static_cast<int>(vertices.size());
  // Work on the translated points p_i = v_i - y; the target is the nearest
  // point of conv{p_i} to the origin.
  std::vector<Vector> p;
  p.reserve(m);
  for (const Vector& v : vertices) p.push_back(v - y);

  int start = 0;
  double best = dot(p[0], p[0]);
  for (int j = 1; j < m; ++j) {
    double nj = dot(p[j], p[j]);
    if (nj < best) {
      best = nj;
      start = j;
    }
  }
  std::vector<int> active{start};
  std::vector<double> w{1.0};
  Vector x = p[start];

  const int cap = 10 * m * m;
  int iter = 0;
  double gap = 0.0;
  while (true) {
    double xx = dot(x, x);
    int jbest = 0;
    double hbest = dot(x, p[0]);
    for (int j = 1; j < m; ++j) {
      double h = dot(x, p[j]);
      if (h < hbest) {
        hbest = h;
        jbest = j;
      }
    }
    gap = xx - hbest;
    if (gap <= tol) break;
    if (std::find(active.begin(), active.end(), jbest) != active.end()) break;
    if (++iter > cap)
      throw std::runtime_error("project: nearest-point QP exceeded iteration cap (degenerate or badly scaled input)");

    active.push_back(jbest);
    w.push_back(0.0);

    // Minor cycle: restore positive weights over the active set.
    while (true) {
      std::vector<double> u;
      if (!solve_affine_weights(p, active, u)) {
        // Affinely dependent active set (roundoff); drop the newcomer.
        active.pop_back();
        w.pop_back();
        break;
      }
      bool interior = true;
      for (double ui : u)
        if (ui <= 1e-14) interior = false;
      if (interior) {
        w = u;
        break;
      }
      if (++iter > cap)
        throw std::runtime_error("project: nearest-point QP exceeded iteration cap (degenerate or badly scaled input)");
      double theta = 1.0;
      for (size_t i = 0; i < u.size(); ++i)
        if (u[i] <= 1e-14) theta = std::min(theta, w[i] / (w[i] - u[i]));
      for (size_t i = 0; i < u.size(); ++i) w[i] = (1.0 - theta) * w[i] + theta * u[i];
      for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
        if (w[i] <= 1e-14) {
          active.erase(active.begin() + i);
          w.erase(w.begin() + i);
        }
      }
      double total = 0.0;
      for (double wi : w) total += wi;
      for (double& wi : w) wi /= total;
    }
    x = combine(p, active, w);
  }

  HullProjection out;
  out.point = y + x;
  out.weights.assign(m, 0.0);
  for (size_t i = 0; i < active.size(); ++i) out.weights[active[i]] = w[i];
  out.iterations = iter;
  out.gap = gap;
  return out;
}

}  // namespace detail

Vector project(const Vector& y, const ConvexSet& s) {
  check_dims(y.dim(), s.dim(), "project");
  require(y.finite(), "project: point must be finite");
  return std::visit(
      [&](const auto& v) -> Vector {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          Vector delta = y - v.center;
          double n = delta.norm();
          if (n <= v.radius) return y;
          return v.center + (v.radius / n) * delta;
        } else if constexpr (std::is_same_v<T, Polytope>) {
          return detail::project_hull(y, v.vertices).point;
        } else if constexpr (std::is_same_v<T, Interval>) {
          return Vector{std::clamp(y[0], v.lo, v.hi)};
        } else {
          return v.point;
        }
      },
      s.value());
}

double distance(const Vector& y, const ConvexSet& s) { return (y - project(y, s)).norm(); }

double set_norm(const ConvexSet& s) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return v.center.norm() + v.radius;
        } else if constexpr (std::is_same_v<T, Polytope>) {
          double best = 0.0;
          for (const Vector& p : v.vertices) best = std::max(best, p.norm());
          return best;
        } else if constexpr (std::is_same_v<T, Interval>) {
          return std::max(std::abs(v.lo), std::abs(v.hi));
        } else {
          return v.point.norm();
        }
      },
      s.value());
}

double value_min(const ConvexSet& s) {
  require(s.dim() == 1, "value_min: set must be 1-dimensional");
  return -support(s, Vector{-1.0});
}

double value_max(const ConvexSet& s) {
  require(s.dim() == 1, "value_max: set must be 1-dimensional");
  return support(s, Vector{1.0});
}

namespace {

bool ball_like(const ConvexSet& s, Vector& center, double& radius) {
  if (const Ball* b = s.as_ball()) {
    center = b->center;
    radius = b->radius;
    return true;
  }
  if (const Singleton* p = s.as_singleton()) {
    center = p->point;
    radius = 0.0;
    return true;
  }
  return false;
}

std::vector<Vector> sphere_directions(int dim) {
  std::vector<Vector> dirs;
  if (dim == 2) {
    const int n = 3600;
    dirs.reserve(n);
    for (int k = 0; k < n; ++k) {
      double t = 2.0 * std::numbers::pi * k / n;
      dirs.push_back(Vector{std::cos(t), std::sin(t)});
    }
  } else if (dim == 3) {
    // Fibonacci sphere: 5000 low-discrepancy points.
    const int n = 5000;
    dirs.reserve(n);
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      double z = 1.0 - 2.0 * (k + 0.5) / n;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double t = ga * k;
      dirs.push_back(Vector{r * std::cos(t), r * std::sin(t), z});
    }
  }
  return dirs;
}

}  // namespace

HausdorffEstimate hausdorff_info(const ConvexSet& a, const ConvexSet& b) {
  check_dims(a.dim(), b.dim(), "hausdorff");
  const int d = a.dim();
  HausdorffEstimate out;

  Vector ca, cb;
  double ra = 0.0, rb = 0.0;
  if (ball_like(a, ca, ra) && ball_like(b, cb, rb)) {
    out.value = (ca - cb).norm() + std::abs(ra - rb);
    out.exact = true;
    return out;
  }
  if (d == 1) {
    // Every compact convex set on the line is an interval.
    double alo = value_min(a), ahi = value_max(a);
    double blo = value_min(b), bhi = value_max(b);
    out.value = std::max(std::abs(alo - blo), std::abs(ahi - bhi));
    out.exact = true;
    return out;
  }
  if (d > 3)
    throw std::invalid_argument("hausdorff: polytopes in dimension > 3 are unsupported");

  // dist_H(A,B) = sup over unit directions of |h_A(u) - h_B(u)|.
  std::vector<Vector> dirs = sphere_directions(d);
  double best = 0.0;
  for (const Vector& u : dirs) best = std::max(best, std::abs(support(a, u) - support(b, u)));
  out.value = best;
  out.exact = false;
  out.direction_resolution =
      d == 2 ? 2.0 * std::numbers::pi / 3600.0 : 2.0 * std::sqrt(4.0 * std::numbers::pi / 5000.0);
  return out;
}

double hausdorff(const ConvexSet& a, const ConvexSet& b) { return hausdorff_info(a, b).value; }

nlohmann::json to_json(const Vector& v) { return nlohmann::json(v.coords()); }

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("vector: expected a nonempty array of numbers");
  std::vector<double> c;
  c.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw std::invalid_argument("vector: expected a nonempty array of numbers");
    c.push_back(e.get<double>());
  }
  Vector v(std::move(c));
  if (!v.finite()) throw std::invalid_argument("vector: coordinates must be finite");
  return v;
}

nlohmann::json to_json(const ConvexSet& s) {
  return std::visit(
      [&](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return {{"ball", {{"center", to_json(v.center)}, {"radius", v.radius}}}};
        } else if constexpr (std::is_same_v<T, Polytope>) {
          nlohmann::json verts = nlohmann::json::array();
          for (const Vector& p : v.vertices) verts.push_back(to_json(p));
          return {{"polytope", {{"vertices", verts}}}};
        } else if constexpr (std::is_same_v<T, Interval>) {
          return {{"interval", {{"lo", v.lo}, {"hi", v.hi}}}};
        } else {
          return {{"singleton", {{"point", to_json(v.point)}}}};
        }
      },
      s.value());
}

ConvexSet convex_set_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1)
    throw std::invalid_argument("convex set: expected an object with exactly one variant key");
  if (j.contains("ball")) {
    const auto& b = j.at("ball");
    return Ball{vector_from_json(b.at("center")), b.at("radius").get<double>()};
  }
  if (j.contains("polytope")) {
    const auto& p = j.at("polytope");
    const auto& verts = p.at("vertices");
    if (!verts.is_array() || verts.empty())
      throw std::invalid_argument("polytope: vertices must be a nonempty array");
    Polytope poly;
    for (const auto& v : verts) poly.vertices.push_back(vector_from_json(v));
    return poly;
  }
  if (j.contains("interval")) {
    const auto& iv = j.at("interval");
    return Interval{iv.at("lo").get<double>(), iv.at("hi").get<double>()};
  }
  if (j.contains("singleton")) {
    return Singleton{vector_from_json(j.at("singleton").at("point"))};
  }
  throw std::invalid_argument("convex set: unknown variant '" + j.begin().key() + "'");
}

}  // namespace rosl
