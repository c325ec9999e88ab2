#pragma once
// Subcommand implementations behind the CLI entry point, kept callable from
// tests. Exit-code contract: 0 success/converged, 1 spec or input error,
// 2 max_iter (solve) or non-converged trace (audit), 3 diverged (solve/scan)
// or bound violations (audit).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace rosl {

int cmd_solve(const std::string& problem_file, const std::optional<std::string>& x0_override,
              const std::string& out_trace_path, std::ostream& out, std::ostream& err);

int cmd_scan(const std::string& problem_file, const std::string& out_csv_path, std::ostream& out,
             std::ostream& err);

int cmd_estimate(const std::string& problem_file, int samples, std::uint64_t seed,
                 std::ostream& out, std::ostream& err);

int cmd_audit(const std::string& trace_csv_path, const std::string& problem_file,
              std::ostream& out, std::ostream& err);

}  // namespace rosl
