#pragma once
// Audit and exploration tools: set-valued interval bisection, solution-set
// scanning over a grid of starting points, and trace-vs-theory verification.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rosl/maps.hpp"
#include "rosl/solve.hpp"

namespace rosl {

/// Result of running the solver from every node of a regular grid.
/// All lists share the grid-major order of the nodes; membership_residuals
/// holds dist(y_bar, F(limit)) and is present exactly when the limit is.
struct ScanResult {
  std::vector<Vector> grid_points;
  std::vector<std::optional<Vector>> limits;
  std::vector<SolveStatus> statuses;
  std::vector<std::optional<double>> membership_residuals;
};

struct BisectResult {
  double root = 0.0;
  int bisections = 0;
};

/// Set-valued intermediate-value bisection for a 1-dimensional multimap:
/// finds x* with dist(y_bar, F(x*)) <= tol or bracket width <= tol, starting
/// from endpoints whose value intervals lie strictly on opposite sides of
/// y_bar (or already contain it). Throws a bracket error otherwise.
double ivt_bisect(const Multimap& f, double y_bar, double a, double b, double tol);
BisectResult ivt_bisect_traced(const Multimap& f, double y_bar, double a, double b, double tol);

/// Runs solve from each node of the regular grid over `box` (counts[i] nodes
/// along axis i; a single node sits at the box midpoint). Per-node failures
/// are recorded as diverged statuses and never abort the scan. `threads`
/// caps the worker count (0 = hardware concurrency); the result order is
/// grid-major regardless of the execution order.
ScanResult scan_solution_set(const Multimap& f, const Vector& y_bar, const Box& box,
                             const std::vector<int>& grid_counts, const SolveConfig& cfg,
                             int threads = 0);

struct BoundViolation {
  int iterate = 0;
  std::string kind;  // "defect_ratio", "distance_to_limit" or "exclusion"
  double observed = 0.0;
  double bound = 0.0;
};

struct BoundReport {
  std::vector<BoundViolation> violations;
  int checked_iterates = 0;
  double max_violation = 0.0;
};

/// Checks a converged trace against the scheme's guarantees: defect ratios
/// against the scheme rate, iterate-to-limit distances against the a-priori
/// bounds (skipped for the adaptive scheme, which has no closed-form bound),
/// and iterate-to-limit distances against the exclusion radii when L is
/// known. Throws on non-converged traces.
BoundReport verify_trace_bounds(const IterationTrace& trace, const SolveConfig& cfg);

// Scan CSV: columns gx_1..gx_d, status, limit_1..limit_d, residual with
// 17 significant digits; limit/residual cells are empty for failed nodes.
void write_scan_csv(std::ostream& os, const ScanResult& scan, int d);

nlohmann::json to_json(const BoundReport& report);

}  // namespace rosl
