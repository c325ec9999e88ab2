#include "rosl/analyze.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace rosl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool contains_scalar(const ConvexSet& s, double y) {
  return value_min(s) <= y && y <= value_max(s);
}

double scalar_defect(const ConvexSet& s, double y) {
  double lo = value_min(s), hi = value_max(s);
  if (y < lo) return lo - y;
  if (y > hi) return y - hi;
  return 0.0;
}

}  // namespace

BisectResult ivt_bisect_traced(const Multimap& f, double y_bar, double a, double b, double tol) {
  require(f.dim() == 1, "ivt_bisect: map must be 1-dimensional");
  require(a < b, "ivt_bisect: requires a < b");
  require(tol > 0.0, "ivt_bisect: tol must be > 0");

  ConvexSet fa = f(Vector{a});
  if (contains_scalar(fa, y_bar)) return {a, 0};
  ConvexSet fb = f(Vector{b});
  if (contains_scalar(fb, y_bar)) return {b, 0};

  // Endpoint value intervals must lie strictly on opposite sides of y_bar.
  bool a_above = value_min(fa) > y_bar;
  bool b_above = value_min(fb) > y_bar;
  if (a_above == b_above)
    throw std::invalid_argument(
        "ivt_bisect: no sign change over [a, b] and neither endpoint contains y_bar");

  double above = a_above ? a : b;
  double below = a_above ? b : a;
  int count = 0;
  while (std::abs(above - below) > tol) {
    double m = 0.5 * (above + below);
    ++count;
    ConvexSet fm = f(Vector{m});
    if (scalar_defect(fm, y_bar) <= tol) return {m, count};
    if (value_min(fm) > y_bar)
      above = m;
    else
      below = m;
  }
  return {0.5 * (above + below), count};
}

double ivt_bisect(const Multimap& f, double y_bar, double a, double b, double tol) {
  return ivt_bisect_traced(f, y_bar, a, b, tol).root;
}

namespace {

Vector grid_node(const Box& box, const std::vector<int>& counts, size_t flat) {
  const int d = box.dim();
  std::vector<double> c(d);
  // Grid-major: axis 0 varies slowest.
  for (int axis = d - 1; axis >= 0; --axis) {
    int n = counts[axis];
    int idx = static_cast<int>(flat % n);
    flat /= n;
    double t = n == 1 ? 0.5 : static_cast<double>(idx) / (n - 1);
    c[axis] = box.lo[axis] + t * (box.hi[axis] - box.lo[axis]);
  }
  return Vector(std::move(c));
}

}  // namespace

ScanResult scan_solution_set(const Multimap& f, const Vector& y_bar, const Box& box,
                             const std::vector<int>& grid_counts, const SolveConfig& cfg,
                             int threads) {
  require(box.dim() == f.dim(), "scan: box dimension must match the map");
  require(y_bar.dim() == f.dim(), "scan: y_bar dimension must match the map");
  require(grid_counts.size() == static_cast<size_t>(f.dim()),
          "scan: grid_counts must list one count per dimension");
  size_t total = 1;
  for (int n : grid_counts) {
    require(n >= 1, "scan: grid counts must be >= 1");
    total *= static_cast<size_t>(n);
  }

  ScanResult scan;
  scan.grid_points.resize(total, Vector{});
  scan.limits.resize(total);
  scan.statuses.resize(total, SolveStatus::diverged);
  scan.membership_residuals.resize(total);

  auto run_node = [&](size_t i) {
    Vector x0 = grid_node(box, grid_counts, i);
    scan.grid_points[i] = x0;
    try {
      IterationTrace trace = solve(f, y_bar, x0, cfg);
      scan.statuses[i] = trace.status;
      if (trace.limit) {
        scan.limits[i] = trace.limit;
        scan.membership_residuals[i] = distance(y_bar, f(*trace.limit));
      }
    } catch (const std::exception&) {
      scan.statuses[i] = SolveStatus::diverged;
    }
  };

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(std::min<size_t>(workers, total));

  if (workers == 1) {
    for (size_t i = 0; i < total; ++i) run_node(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) run_node(i);
      });
    for (std::thread& t : pool) t.join();
  }
  return scan;
}

BoundReport verify_trace_bounds(const IterationTrace& trace, const SolveConfig& cfg) {
  if (trace.status != SolveStatus::converged || !trace.limit)
    throw std::invalid_argument("verify_trace_bounds: trace must be converged with a limit");
  const size_t n_iter = trace.iterates.size();
  require(trace.defect_norms.size() == n_iter && trace.defect_vectors.size() == n_iter,
          "verify_trace_bounds: inconsistent trace lengths");

  const int d = trace.iterates.front().dim();
  const Vector& limit = *trace.limit;
  const double tol = 1e-9;

  BoundReport report;
  report.checked_iterates = static_cast<int>(n_iter);
  auto flag = [&](int n, const char* kind, double observed, double bound) {
    report.violations.push_back({n, kind, observed, bound});
    report.max_violation = std::max(report.max_violation, std::abs(observed - bound));
  };

  const bool has_L = cfg.L.has_value();
  require(has_L || cfg.scheme == Scheme::adaptive,
          "verify_trace_bounds: L is required for the scheme's rate and bounds");

  const double rate = scheme_rate(cfg.scheme, cfg.l, has_L ? *cfg.L : 0.0, d, cfg.accept_factor);
  for (size_t n = 0; n + 1 < n_iter; ++n) {
    if (trace.defect_norms[n] == 0.0) continue;
    double ratio = trace.defect_norms[n + 1] / trace.defect_norms[n];
    if (ratio > rate + tol) flag(static_cast<int>(n), "defect_ratio", ratio, rate);
  }

  if (cfg.scheme != Scheme::adaptive) {
    const double defect0 = trace.defect_norms.front();
    for (size_t n = 0; n < n_iter; ++n) {
      double bound =
          distance_to_limit_bound(defect0, cfg.l, *cfg.L, cfg.scheme, d, static_cast<int>(n));
      double observed = (trace.iterates[n] - limit).norm();
      if (observed > bound + tol) flag(static_cast<int>(n), "distance_to_limit", observed, bound);
    }
  }

  if (has_L && *cfg.L > 0.0) {
    for (size_t n = 0; n < n_iter; ++n) {
      double excl = trace.defect_norms[n] / *cfg.L;
      double observed = (limit - trace.iterates[n]).norm();
      if (observed < excl - tol) flag(static_cast<int>(n), "exclusion", observed, excl);
    }
  }
  return report;
}

namespace {

void put_g17(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  os << buf;
}

}  // namespace

void write_scan_csv(std::ostream& os, const ScanResult& scan, int d) {
  for (int i = 1; i <= d; ++i) os << (i == 1 ? "" : ",") << "gx_" << i;
  os << ",status";
  for (int i = 1; i <= d; ++i) os << ",limit_" << i;
  os << ",residual\n";
  for (size_t k = 0; k < scan.grid_points.size(); ++k) {
    for (int i = 0; i < d; ++i) {
      if (i) os << ',';
      put_g17(os, scan.grid_points[k][i]);
    }
    os << ',' << to_string(scan.statuses[k]);
    for (int i = 0; i < d; ++i) {
      os << ',';
      if (scan.limits[k]) put_g17(os, (*scan.limits[k])[i]);
    }
    os << ',';
    if (scan.membership_residuals[k]) put_g17(os, *scan.membership_residuals[k]);
    os << '\n';
  }
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const BoundViolation& v : report.violations)
    violations.push_back({{"iterate", v.iterate},
                          {"kind", v.kind},
                          {"observed", v.observed},
                          {"bound", v.bound}});
  return {{"violations", violations},
          {"violation_count", report.violations.size()},
          {"checked_iterates", report.checked_iterates},
          {"max_violation", report.max_violation}};
}

}  // namespace rosl
