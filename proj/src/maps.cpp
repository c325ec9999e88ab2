#include "rosl/maps.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "rosl/rng.hpp"

namespace rosl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

}  // namespace

Multimap::Multimap(int dim, Evaluator eval, std::optional<double> declared_l,
                   std::optional<double> declared_L, std::string name)
    : dim_(dim),
      eval_(std::move(eval)),
      declared_l_(declared_l),
      declared_L_(declared_L),
      name_(std::move(name)) {
  require(dim_ >= 1, "multimap: dimension must be >= 1");
  require(static_cast<bool>(eval_), "multimap: evaluator must be callable");
  if (declared_l_) require(std::isfinite(*declared_l_), "multimap: declared_l must be finite");
  if (declared_L_)
    require(std::isfinite(*declared_L_) && *declared_L_ >= 0.0,
            "multimap: declared_L must be finite and >= 0");
}

ConvexSet Multimap::operator()(const Vector& x) const {
  if (x.dim() != dim_)
    throw std::invalid_argument("multimap '" + name_ + "': input dimension " +
                                std::to_string(x.dim()) + " != " + std::to_string(dim_));
  if (!x.finite())
    throw std::invalid_argument("multimap '" + name_ + "': input must be finite");
  ConvexSet out = eval_(x);
  if (out.dim() != dim_)
    throw std::logic_error("multimap '" + name_ + "': evaluator returned dimension " +
                           std::to_string(out.dim()));
  return out;
}

ConvexSet evaluate(const Multimap& f, const Vector& x) { return f(x); }

namespace {

Multimap make_rotation2d(const Rotation2DSpec& s) {
  require(std::isfinite(s.l) && s.l < 0.0, "rotation2d: l must be finite and < 0");
  require(std::isfinite(s.L) && s.L >= -s.l,
          "rotation2d: L must satisfy L >= -l so alpha = sqrt(L^2 - l^2) is real");
  const double l = s.l;
  const double alpha = std::sqrt(s.L * s.L - s.l * s.l);
  return Multimap(
      2,
      [l, alpha](const Vector& x) -> ConvexSet {
        return Singleton{Vector{l * x[0] + alpha * x[1], l * x[1] - alpha * x[0]}};
      },
      s.declared_l.value_or(s.l), s.declared_L.value_or(s.L),
      "rotation2d(l=" + fmt(s.l) + ",L=" + fmt(s.L) + ")");
}

Multimap make_piecewise1d(const Piecewise1DSpec& s) {
  require(std::isfinite(s.l) && s.l < 0.0, "piecewise1d: l must be finite and < 0");
  require(std::isfinite(s.L) && s.L >= -s.l, "piecewise1d: L must satisfy L >= -l");
  const double l = s.l, L = s.L;
  return Multimap(
      1,
      [l, L](const Vector& xv) -> ConvexSet {
        double x = xv[0];
        double y;
        if (x >= 1.0)
          y = -L + l * (x - 1.0);
        else if (x >= -1.0)
          y = -L * x;
        else
          y = L + l * (x + 1.0);
        return Singleton{Vector{y}};
      },
      s.declared_l.value_or(s.l), s.declared_L.value_or(s.L),
      "piecewise1d(l=" + fmt(s.l) + ",L=" + fmt(s.L) + ")");
}

Multimap make_rotated_polytope(const RotatedPolytopeSpec& s) {
  ConvexSet check(s.polytope);  // validates the vertex list
  require(check.dim() == 2, "rotated_polytope: polytope must be 2-dimensional");
  for (const auto& row : s.matrix)
    for (double m : row) require(std::isfinite(m), "rotated_polytope: matrix must be finite");
  const auto M = s.matrix;
  const Polytope P = s.polytope;
  return Multimap(
      2,
      [M, P](const Vector& x) -> ConvexSet {
        const double theta = x.norm();
        const double c = std::cos(theta), sn = std::sin(theta);
        Vector shift{M[0][0] * x[0] + M[0][1] * x[1], M[1][0] * x[0] + M[1][1] * x[1]};
        Polytope out;
        out.vertices.reserve(P.vertices.size());
        for (const Vector& v : P.vertices)
          out.vertices.push_back(
              Vector{shift[0] + c * v[0] - sn * v[1], shift[1] + sn * v[0] + c * v[1]});
        return out;
      },
      s.declared_l, s.declared_L, "rotated_polytope");
}

Multimap make_constant(const ConstantSpec& s) {
  ConvexSet set = s.set;
  return Multimap(
      set.dim(), [set](const Vector&) -> ConvexSet { return set; }, s.declared_l, s.declared_L,
      "constant");
}

}  // namespace

Multimap make_multimap(const BuiltinMapSpec& spec) {
  return std::visit(
      [](const auto& s) -> Multimap {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Rotation2DSpec>)
          return make_rotation2d(s);
        else if constexpr (std::is_same_v<T, Piecewise1DSpec>)
          return make_piecewise1d(s);
        else if constexpr (std::is_same_v<T, RotatedPolytopeSpec>)
          return make_rotated_polytope(s);
        else
          return make_constant(s);
      },
      spec);
}

bool rosl_pair_check(const Multimap& f, const Vector& x, const Vector& x2, double l) {
  if (x == x2) throw std::invalid_argument("rosl_pair_check: x and x2 must differ");
  Vector d = x - x2;
  double lhs = support(f(x), d) - support(f(x2), d);
  return lhs <= l * dot(d, d) + 1e-9;
}

namespace {

Vector sample_box(SplitMix64& rng, const Box& box) {
  std::vector<double> c(box.dim());
  for (int i = 0; i < box.dim(); ++i) c[i] = rng.uniform(box.lo[i], box.hi[i]);
  return Vector(std::move(c));
}

void check_estimator_args(const Multimap& f, const Box& box, int n_samples) {
  require(box.dim() == f.dim(), "estimator: box dimension must match the map");
  require(n_samples >= 2, "estimator: need n_samples >= 2");
  for (int i = 0; i < box.dim(); ++i)
    require(box.lo[i] < box.hi[i], "estimator: box must be nondegenerate");
}

template <class Ratio>
double estimate_pairwise(const Box& box, int n_samples, std::uint64_t rng_seed, Ratio ratio) {
  SplitMix64 rng(rng_seed);
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_samples; ++k) {
    Vector x, x2;
    do {
      x = sample_box(rng, box);
      x2 = sample_box(rng, box);
    } while ((x - x2).norm() < 1e-6);
    best = std::max(best, ratio(x, x2));
  }
  return best;
}

}  // namespace

double estimate_lipschitz(const Multimap& f, const Box& box, int n_samples,
                          std::uint64_t rng_seed) {
  check_estimator_args(f, box, n_samples);
  return estimate_pairwise(box, n_samples, rng_seed, [&](const Vector& x, const Vector& x2) {
    return hausdorff(f(x), f(x2)) / (x - x2).norm();
  });
}

double estimate_rosl(const Multimap& f, const Box& box, int n_samples, std::uint64_t rng_seed) {
  check_estimator_args(f, box, n_samples);
  return estimate_pairwise(box, n_samples, rng_seed, [&](const Vector& x, const Vector& x2) {
    Vector d = x - x2;
    return (support(f(x), d) - support(f(x2), d)) / dot(d, d);
  });
}

namespace {

void read_declared(const nlohmann::json& j, std::optional<double>& l, std::optional<double>& L) {
  if (j.contains("declared_l")) l = j.at("declared_l").get<double>();
  if (j.contains("declared_L")) L = j.at("declared_L").get<double>();
}

}  // namespace

nlohmann::json to_json(const BuiltinMapSpec& spec) {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Rotation2DSpec>) {
          nlohmann::json body = {{"l", s.l}, {"L", s.L}};
          if (s.declared_l) body["declared_l"] = *s.declared_l;
          if (s.declared_L) body["declared_L"] = *s.declared_L;
          return {{"rotation2d", body}};
        } else if constexpr (std::is_same_v<T, Piecewise1DSpec>) {
          nlohmann::json body = {{"l", s.l}, {"L", s.L}};
          if (s.declared_l) body["declared_l"] = *s.declared_l;
          if (s.declared_L) body["declared_L"] = *s.declared_L;
          return {{"piecewise1d", body}};
        } else if constexpr (std::is_same_v<T, RotatedPolytopeSpec>) {
          nlohmann::json verts = nlohmann::json::array();
          for (const Vector& v : s.polytope.vertices) verts.push_back(to_json(v));
          nlohmann::json body = {{"matrix", s.matrix}, {"polytope", {{"vertices", verts}}}};
          if (s.declared_l) body["declared_l"] = *s.declared_l;
          if (s.declared_L) body["declared_L"] = *s.declared_L;
          return {{"rotated_polytope", body}};
        } else {
          nlohmann::json body = {{"set", to_json(s.set)}};
          if (s.declared_l) body["declared_l"] = *s.declared_l;
          if (s.declared_L) body["declared_L"] = *s.declared_L;
          return {{"constant", body}};
        }
      },
      spec);
}

BuiltinMapSpec map_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1)
    throw std::invalid_argument("map: expected an object with exactly one variant key");
  if (j.contains("rotation2d")) {
    const auto& b = j.at("rotation2d");
    Rotation2DSpec s{b.at("l").get<double>(), b.at("L").get<double>(), {}, {}};
    read_declared(b, s.declared_l, s.declared_L);
    return s;
  }
  if (j.contains("piecewise1d")) {
    const auto& b = j.at("piecewise1d");
    Piecewise1DSpec s{b.at("l").get<double>(), b.at("L").get<double>(), {}, {}};
    read_declared(b, s.declared_l, s.declared_L);
    return s;
  }
  if (j.contains("rotated_polytope")) {
    const auto& b = j.at("rotated_polytope");
    RotatedPolytopeSpec s;
    const auto& m = b.at("matrix");
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 ||
        !m[1].is_array() || m[1].size() != 2)
      throw std::invalid_argument("rotated_polytope: matrix must be 2x2");
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) s.matrix[r][c] = m[r][c].get<double>();
    const auto& verts = b.at("polytope").at("vertices");
    if (!verts.is_array() || verts.empty())
      throw std::invalid_argument("rotated_polytope: polytope needs vertices");
    for (const auto& v : verts) s.polytope.vertices.push_back(vector_from_json(v));
    read_declared(b, s.declared_l, s.declared_L);
    return s;
  }
  if (j.contains("constant")) {
    const auto& b = j.at("constant");
    ConstantSpec s{convex_set_from_json(b.at("set")), {}, {}};
    read_declared(b, s.declared_l, s.declared_L);
    return s;
  }
  throw std::invalid_argument("map: unknown variant '" + j.begin().key() + "'");
}

Multimap multimap_from_json(const nlohmann::json& j) {
  return make_multimap(map_spec_from_json(j));
}

nlohmann::json to_json(const Box& b) {
  return {{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}};
}

Box box_from_json(const nlohmann::json& j) {
  Box b{vector_from_json(j.at("lo")), vector_from_json(j.at("hi"))};
  if (b.lo.dim() != b.hi.dim()) throw std::invalid_argument("box: lo/hi dimension mismatch");
  for (int i = 0; i < b.dim(); ++i)
    if (b.lo[i] > b.hi[i]) throw std::invalid_argument("box: lo must be <= hi componentwise");
  return b;
}

}  // namespace rosl
