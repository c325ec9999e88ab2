#pragma once
// Fixed-point iteration schemes for the algebraic inclusion y_bar in F(x)
// with ROSL multimaps F, per-iterate solution-localization certificates,
// a-priori error bounds and full trace recording.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rosl/maps.hpp"
#include "rosl/sets.hpp"

namespace rosl {

enum class Scheme { basic, basic_1d, lipschitz_refined, lipschitz_refined_1d, adaptive };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct SolveConfig {
  Scheme scheme = Scheme::basic;
  double l = 0.0;                 // ROSL constant, must be < 0
  std::optional<double> L;        // Lipschitz constant; required for refined schemes
  double defect_tol = 1e-10;
  int max_iter = 10000;
  double divergence_threshold = 1e12;
  // Adaptive-scheme knobs (trust-region style backtracking).
  double accept_factor = 1.0 - 1e-4;
  double backtrack_factor = 0.5;
  double growth_factor = 1.5;
  int max_backtracks = 60;
  std::optional<double> lambda0;  // initial step scale; default 1/(2l)
};

/// Solution localization for one iterate: a ball guaranteed to contain a
/// solution, plus (when L is known) a ball around the iterate guaranteed to
/// contain none.
struct Certificate {
  Vector inclusion_center;
  double inclusion_radius = 0.0;
  std::optional<double> exclusion_radius;
};

enum class SolveStatus { converged, max_iter, diverged };

std::string to_string(SolveStatus s);
SolveStatus status_from_string(const std::string& s);

struct IterationTrace {
  std::vector<Vector> iterates;        // x_0 ... x_N
  std::vector<Vector> defect_vectors;  // v_n = y_bar - Proj(y_bar, F(x_n))
  std::vector<double> defect_norms;
  std::vector<Certificate> certificates;
  SolveStatus status = SolveStatus::max_iter;
  std::optional<Vector> limit;
  std::string diagnostic;  // set when a step error forced the diverged status
};

struct StepResult {
  Vector x_next;
  Vector defect;
};

/// One step of the basic scheme: x_next = x + v/(2l) with
/// v = y_bar - Proj(y_bar, F(x)). Requires l < 0.
StepResult step_basic(const Multimap& f, const Vector& y_bar, const Vector& x, double l);

/// One step of the Lipschitz-refined scheme for d >= 2:
/// x_next = x + (l/L^2) v. Requires l < 0 and 0 < L <= -sqrt(2) l.
StepResult step_lipschitz_refined(const Multimap& f, const Vector& y_bar, const Vector& x,
                                  double l, double L);

/// One step of the Lipschitz-refined scheme for d = 1:
/// x_next = x + (1/2)(1/l - 1/L) v, the midpoint of the admissible interval
/// [x + v/l, x - v/L]. Requires l < 0 and 0 < L <= -2l.
StepResult step_lipschitz_refined_1d(const Multimap& f, const Vector& y_bar, const Vector& x,
                                     double l, double L);

struct AdaptiveState {
  double lambda = 0.0;   // current (negative) step scale
  double lambda0 = 0.0;  // initial scale; growth is capped here
};

struct AdaptiveStepResult {
  Vector x_next;
  Vector defect;
  AdaptiveState state;
};

/// Backtracking step x_trial = x + lambda v, accepted when the trial defect
/// drops below accept_factor * |v|; halves |lambda| on rejection (throws a
/// stall error after max_backtracks halvings) and regrows it on acceptance.
AdaptiveStepResult step_adaptive(const Multimap& f, const Vector& y_bar, const Vector& x,
                                 AdaptiveState state, const SolveConfig& cfg);

/// Inclusion ball for the iterate x: center x + v/(2l), radius -|v|/(2l).
/// Contains at least one solution of y_bar in F(.) when F is usc and l-ROSL.
Certificate inclusion_certificate(const Multimap& f, const Vector& y_bar, const Vector& x,
                                  double l);

/// dist(y_bar, F(x))/L; no solution lies strictly inside B(x, radius) when F
/// is L-Lipschitz. Requires L > 0.
double exclusion_radius(const Multimap& f, const Vector& y_bar, const Vector& x, double L);

struct BoundSchedule {
  std::vector<double> to_set;    // distance-to-solution-set bounds, n = 1..n_max
  std::vector<double> to_limit;  // distance-to-limit bounds, n = 1..n_max
};

/// A-priori error bounds after n = 1..n_max steps given the initial defect.
/// The basic scheme in d = 1 is analyzed with the sharper d = 1 rate.
BoundSchedule a_priori_bounds(double defect0, double l, double L, Scheme scheme, int d,
                              int n_max);

/// Distance-to-limit bound for a single index n >= 0 (same formulas as
/// a_priori_bounds).
double distance_to_limit_bound(double defect0, double l, double L, Scheme scheme, int d, int n);

/// The per-step defect contraction rate guaranteed by the scheme.
double scheme_rate(Scheme scheme, double l, double L, int d, double accept_factor = 1.0 - 1e-4);

/// Runs the configured scheme from x0 until the defect reaches defect_tol
/// (converged), max_iter steps elapse, or the defect blows past
/// divergence_threshold / turns non-finite (diverged). Step errors are
/// recorded as a diverged status with a diagnostic.
IterationTrace solve(const Multimap& f, const Vector& y_bar, const Vector& x0,
                     const SolveConfig& cfg);

// Trace CSV: one row per iterate, columns
//   n, x_1..x_d, v_1..v_d, defect, cert_center_1..d, cert_radius,
//   excl_radius, status
// with 17 significant digits and the status only on the final row.
void write_trace_csv(std::ostream& os, const IterationTrace& trace, int d);
IterationTrace read_trace_csv(std::istream& is, int* d_out = nullptr);

nlohmann::json to_json(const SolveConfig& cfg);
SolveConfig solve_config_from_json(const nlohmann::json& j);

}  // namespace rosl
