#include "rosl/cli_commands.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rosl/analyze.hpp"
#include "rosl/problem.hpp"

namespace rosl {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpecError = 1;
constexpr int kExitMaxIter = 2;
constexpr int kExitDiverged = 3;

std::optional<Vector> parse_x0(const std::string& text) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') return std::nullopt;
    coords.push_back(v);
  }
  if (coords.empty()) return std::nullopt;
  return Vector(std::move(coords));
}

int scan_threads_from_env() {
  const char* env = std::getenv("ROSL_THREADS");
  if (!env) return 0;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 0;
  return static_cast<int>(v);
}

int status_exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return kExitOk;
    case SolveStatus::max_iter: return kExitMaxIter;
    case SolveStatus::diverged: return kExitDiverged;
  }
  return kExitSpecError;
}

nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json j{{"center", to_json(cert.inclusion_center)},
                   {"radius", cert.inclusion_radius}};
  if (cert.exclusion_radius) j["exclusion_radius"] = *cert.exclusion_radius;
  return j;
}

}  // namespace

int cmd_solve(const std::string& problem_file, const std::optional<std::string>& x0_override,
              const std::string& out_trace_path, std::ostream& out, std::ostream& err) {
  try {
    ProblemSpec spec = load_problem(problem_file);
    std::optional<Vector> x0 = spec.x0;
    if (x0_override) {
      x0 = parse_x0(*x0_override);
      if (!x0) {
        err << "solve: cannot parse --x0 '" << *x0_override << "'\n";
        return kExitSpecError;
      }
    }
    if (!x0) {
      err << "solve: no starting point (set \"x0\" in the problem file or pass --x0)\n";
      return kExitSpecError;
    }
    if (x0->dim() != spec.map.dim()) {
      err << "solve: x0 dimension must match the map\n";
      return kExitSpecError;
    }

    IterationTrace trace = solve(spec.map, spec.y_bar, *x0, spec.config);

    std::ofstream os(out_trace_path);
    if (!os) {
      err << "solve: cannot write '" << out_trace_path << "'\n";
      return kExitSpecError;
    }
    write_trace_csv(os, trace, spec.map.dim());

    nlohmann::json summary{{"status", to_string(trace.status)},
                           {"iterations", trace.iterates.size() - 1},
                           {"final_defect", trace.defect_norms.back()},
                           {"certificate", certificate_json(trace.certificates.back())}};
    if (!trace.diagnostic.empty()) summary["diagnostic"] = trace.diagnostic;
    out << summary.dump() << "\n";
    return status_exit_code(trace.status);
  } catch (const std::exception& e) {
    err << "solve: " << e.what() << "\n";
    return kExitSpecError;
  }
}

int cmd_scan(const std::string& problem_file, const std::string& out_csv_path, std::ostream& out,
             std::ostream& err) {
  try {
    ProblemSpec spec = load_problem(problem_file);
    if (!spec.box || spec.grid_counts.empty()) {
      err << "scan: the problem file must provide \"box\" and \"grid_counts\"\n";
      return kExitSpecError;
    }
    ScanResult scan = scan_solution_set(spec.map, spec.y_bar, *spec.box, spec.grid_counts,
                                        spec.config, scan_threads_from_env());

    std::ofstream os(out_csv_path);
    if (!os) {
      err << "scan: cannot write '" << out_csv_path << "'\n";
      return kExitSpecError;
    }
    write_scan_csv(os, scan, spec.map.dim());

    size_t converged = 0, capped = 0, diverged = 0;
    for (SolveStatus s : scan.statuses) {
      if (s == SolveStatus::converged) ++converged;
      else if (s == SolveStatus::max_iter) ++capped;
      else ++diverged;
    }
    out << nlohmann::json{{"nodes", scan.statuses.size()},
                          {"converged", converged},
                          {"max_iter", capped},
                          {"diverged", diverged}}
               .dump()
        << "\n";
    if (diverged > 0) return kExitDiverged;
    if (capped > 0) return kExitMaxIter;
    return kExitOk;
  } catch (const std::exception& e) {
    err << "scan: " << e.what() << "\n";
    return kExitSpecError;
  }
}

int cmd_estimate(const std::string& problem_file, int samples, std::uint64_t seed,
                 std::ostream& out, std::ostream& err) {
  try {
    ProblemSpec spec = load_problem(problem_file);
    if (!spec.box) {
      err << "estimate: the problem file must provide \"box\"\n";
      return kExitSpecError;
    }
    double l_est = estimate_rosl(spec.map, *spec.box, samples, seed);
    double L_est = estimate_lipschitz(spec.map, *spec.box, samples, seed);
    out << nlohmann::json{{"l_estimate", l_est},
                          {"L_estimate", L_est},
                          {"samples", samples},
                          {"seed", seed}}
               .dump()
        << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "estimate: " << e.what() << "\n";
    return kExitSpecError;
  }
}

int cmd_audit(const std::string& trace_csv_path, const std::string& problem_file,
              std::ostream& out, std::ostream& err) {
  try {
    ProblemSpec spec = load_problem(problem_file);
    std::ifstream is(trace_csv_path);
    if (!is) {
      err << "audit: cannot open '" << trace_csv_path << "'\n";
      return kExitSpecError;
    }
    int d = 0;
    IterationTrace trace = read_trace_csv(is, &d);
    if (d != spec.map.dim()) {
      err << "audit: trace dimension " << d << " does not match the problem map\n";
      return kExitSpecError;
    }
    if (trace.status != SolveStatus::converged) {
      err << "audit: trace did not converge (status " << to_string(trace.status) << ")\n";
      return kExitMaxIter;
    }
    BoundReport report = verify_trace_bounds(trace, spec.config);
    out << to_json(report).dump() << "\n";
    return report.violations.empty() ? kExitOk : kExitDiverged;
  } catch (const std::exception& e) {
    err << "audit: " << e.what() << "\n";
    return kExitSpecError;
  }
}

}  // namespace rosl
