#pragma once
// Set-valued mappings F: R^d -> CC(R^d) with declared ROSL / Lipschitz
// constants, the built-in example maps, and empirical constant estimators.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "rosl/sets.hpp"

namespace rosl {

/// Axis-aligned box, used as a sampling domain.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return lo.dim(); }
};

/// A multimap x -> F(x) with declared regularity constants. Evaluators must
/// be pure and deterministic; evaluation is safe from concurrent threads.
class Multimap {
 public:
  using Evaluator = std::function<ConvexSet(const Vector&)>;

  Multimap(int dim, Evaluator eval, std::optional<double> declared_l,
           std::optional<double> declared_L, std::string name);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  std::optional<double> declared_l() const { return declared_l_; }
  std::optional<double> declared_L() const { return declared_L_; }

  ConvexSet operator()(const Vector& x) const;

 private:
  int dim_;
  Evaluator eval_;
  std::optional<double> declared_l_;
  std::optional<double> declared_L_;
  std::string name_;
};

/// F(x) as a ConvexSet; checks dimension and finiteness of x.
ConvexSet evaluate(const Multimap& f, const Vector& x);

// Built-in map family (also the JSON-facing configuration surface).

/// F(x) = l*x + alpha*x_perp with alpha = sqrt(L^2 - l^2), x_perp = (x2, -x1).
/// Single-valued, d = 2, l-OSL and L-Lipschitz; requires l < 0 and L >= -l.
/// The declared constants default to (l, L) unless overridden.
struct Rotation2DSpec {
  double l;
  double L;
  std::optional<double> declared_l;
  std::optional<double> declared_L;
};

/// Three-branch scalar map: -L + l(x-1) for x >= 1, -L*x on [-1, 1],
/// L + l(x+1) for x <= -1. Single-valued, d = 1; requires l < 0 and L >= -l.
/// The declared constants default to (l, L) unless overridden.
struct Piecewise1DSpec {
  double l;
  double L;
  std::optional<double> declared_l;
  std::optional<double> declared_L;
};

/// F(x) = M*x + A(|x|)*P with A the rotation by angle |x|; d = 2.
struct RotatedPolytopeSpec {
  std::array<std::array<double, 2>, 2> matrix;
  Polytope polytope;
  std::optional<double> declared_l;
  std::optional<double> declared_L;
};

/// F(x) = S for a fixed set S.
struct ConstantSpec {
  ConvexSet set;
  std::optional<double> declared_l;
  std::optional<double> declared_L;
};

using BuiltinMapSpec =
    std::variant<Rotation2DSpec, Piecewise1DSpec, RotatedPolytopeSpec, ConstantSpec>;

Multimap make_multimap(const BuiltinMapSpec& spec);

/// Checks the ROSL inequality for one pair via the support-function
/// reduction: support(F(x), d) - support(F(x2), d) <= l*|d|^2 + 1e-9 with
/// d = x - x2. Throws when x == x2.
bool rosl_pair_check(const Multimap& f, const Vector& x, const Vector& x2, double l);

/// Empirical Lipschitz estimate: max over sampled pairs of
/// hausdorff(F(x), F(x'))/|x - x'|. A lower bound on the true constant.
/// Deterministic for a given seed; pairs closer than 1e-6 are resampled.
double estimate_lipschitz(const Multimap& f, const Box& box, int n_samples,
                          std::uint64_t rng_seed);

/// Empirical ROSL estimate: max over sampled pairs of
/// [support(F(x), d) - support(F(x2), d)]/|d|^2. Any l above the returned
/// value passes rosl_pair_check on every sampled pair.
double estimate_rosl(const Multimap& f, const Box& box, int n_samples, std::uint64_t rng_seed);

nlohmann::json to_json(const BuiltinMapSpec& spec);
BuiltinMapSpec map_spec_from_json(const nlohmann::json& j);
Multimap multimap_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Box& b);
Box box_from_json(const nlohmann::json& j);

}  // namespace rosl
