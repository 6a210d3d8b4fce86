#ifndef SUBGAUSS_CLI_HPP
#define SUBGAUSS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subgauss/certificates.hpp"
#include "subgauss/distribution.hpp"

namespace subgauss {
namespace cli {

enum class Command { Norm, Proxy, Ratio, Verify, Scan };
enum class OutputFormat { Human, Json, Csv };

struct RunConfig {
  Command command = Command::Ratio;
  std::string dist_spec;
  double tol = 0.0;  // 0 selects the per-command default
  OutputFormat output = OutputFormat::Human;
  std::optional<std::string> out_path;
  std::uint64_t seed = 42;
  double u_max = 50.0;   // scan grid upper end
  int grid_n = 200;      // scan grid size
  long h3_trials = 100000;
  int band_laws = 1000;
};

/// Grammar: "gaussian" | "rademacher" | "binary:<u>,<x1>" | "file:<path>".
/// Throws ParseError (with position), FileError, InvalidDistribution.
Distribution parse_dist_spec(const std::string& spec);

/// The full verification battery run by the `verify` command. Deterministic
/// for a fixed seed.
std::vector<CertificateReport> verification_battery(std::uint64_t seed, long h3_trials,
                                                    int band_laws);

/// Executes one command. Exit codes: 0 success, 1 usage, 2 parse,
/// 3 verification failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace subgauss

#endif
