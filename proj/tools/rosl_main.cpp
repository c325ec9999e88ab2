// rosl: solver CLI for ROSL algebraic inclusions y_bar in F(x).

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rosl/cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Solver for relaxed one-sided Lipschitz algebraic inclusions"};
  app.require_subcommand(1);

  std::string problem_file, out_path, trace_file;
  std::string x0_text;
  int samples = 1000;
  std::uint64_t seed = 1;

  CLI::App* solve = app.add_subcommand("solve", "Run the iteration and write a trace CSV");
  solve->add_option("--problem", problem_file, "Problem JSON file")->required();
  solve->add_option("--x0", x0_text, "Starting point as \"c1,c2,...\" (overrides the file)");
  solve->add_option("--out", out_path, "Output trace CSV path")->required();

  CLI::App* scan = app.add_subcommand("scan", "Solve from every node of the configured grid");
  scan->add_option("--problem", problem_file, "Problem JSON file")->required();
  scan->add_option("--out", out_path, "Output scan CSV path")->required();

  CLI::App* estimate =
      app.add_subcommand("estimate", "Empirical ROSL / Lipschitz constants over the box");
  estimate->add_option("--problem", problem_file, "Problem JSON file")->required();
  estimate->add_option("--samples", samples, "Number of sample pairs");
  estimate->add_option("--seed", seed, "RNG seed");

  CLI::App* audit = app.add_subcommand("audit", "Check a trace CSV against the scheme's bounds");
  audit->add_option("--trace", trace_file, "Trace CSV produced by solve")->required();
  audit->add_option("--problem", problem_file, "Problem JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    std::optional<std::string> x0;
    if (!x0_text.empty()) x0 = x0_text;
    return rosl::cmd_solve(problem_file, x0, out_path, std::cout, std::cerr);
  }
  if (scan->parsed()) return rosl::cmd_scan(problem_file, out_path, std::cout, std::cerr);
  if (estimate->parsed())
    return rosl::cmd_estimate(problem_file, samples, seed, std::cout, std::cerr);
  if (audit->parsed()) return rosl::cmd_audit(trace_file, problem_file, std::cout, std::cerr);
  return 1;
}
