#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eulerprod {

enum class Command { Expand, Classify, Boundary, Evaluate, Zeros, Igusa };
enum class OutputFormat { Text, Json };

std::string to_string(Command command);

struct RunConfig {
  Command command = Command::Classify;
  std::string poly;       // inline polynomial text
  std::string poly_file;  // or a file holding it
  int n = 0;
  long long c = 1;

  double delta = 1.0;
  std::optional<int> beta_bound;
  std::optional<int> degree_bound;
  std::optional<std::uint64_t> prime_limit;
  std::optional<std::uint64_t> cutoff;  // igusa partial-sum range M
  double tail_tolerance = 1e-9;

  std::string point;  // "0.3,0.4" or "0.5+14.1i,2"
  std::string face;   // term index or exponent "(1,0,1)"
  std::string sigma, tau, theta;
  std::string primes = "53,101,997";
  std::string m_range = "0,10";
  double u = 1.0, eta = 1.0;
  std::optional<int> nu;
  std::uint64_t seed = 20240607;

  OutputFormat format = OutputFormat::Text;
  std::string zeros_file;
  std::string plot_file;
  bool parallel = false;
  bool allow_flagged = false;
};

/// Runs one command and writes its report to `out`; diagnostics go to `err`.
/// Returns the process exit status: 0 success, 2 input, 3 precondition or
/// numerical failure, 4 resource guard, 5 internal invariant breach.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (args[0] is the program name) and runs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eulerprod
