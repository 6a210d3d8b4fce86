#include <iostream>
#include <string>

#include "subgauss/cli.hpp"

#include "CLI11.hpp"

int main(int argc, char** argv) {
  using subgauss::cli::Command;
  using subgauss::cli::OutputFormat;
  using subgauss::cli::RunConfig;

  CLI::App app{"sub-Gaussian norm and variance-proxy calculator"};
  app.require_subcommand(1);

  RunConfig config;
  bool json = false;
  std::string csv_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", config.tol, "bracket tolerance (0 = command default)");
    cmd->add_flag("--json", json, "emit JSON instead of human-readable text");
    cmd->add_option("--seed", config.seed, "seed for randomized scans");
  };
  auto add_dist = [&](CLI::App* cmd) {
    cmd->add_option("dist", config.dist_spec,
                    "gaussian | rademacher | binary:<u>,<x1> | file:<path>")
        ->required();
  };

  CLI::App* norm = app.add_subcommand("norm", "compute the psi2 norm");
  add_dist(norm);
  add_common(norm);
  CLI::App* proxy = app.add_subcommand("proxy", "compute the sub-Gaussian parameter");
  add_dist(proxy);
  add_common(proxy);
  CLI::App* ratio = app.add_subcommand("ratio", "compute sigma / psi2-norm");
  add_dist(ratio);
  add_common(ratio);
  CLI::App* verify = app.add_subcommand("verify", "run the full certificate battery");
  add_common(verify);
  CLI::App* scan = app.add_subcommand("scan", "tabulate boundary binary laws over a u-grid");
  add_common(scan);
  scan->add_option("--u-max", config.u_max, "upper end of the u grid");
  scan->add_option("--grid", config.grid_n, "number of grid points");
  scan->add_option("--csv", csv_path, "write CSV rows to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (norm->parsed()) config.command = Command::Norm;
  if (proxy->parsed()) config.command = Command::Proxy;
  if (ratio->parsed()) config.command = Command::Ratio;
  if (verify->parsed()) config.command = Command::Verify;
  if (scan->parsed()) {
    config.command = Command::Scan;
    config.output = OutputFormat::Csv;
    if (!csv_path.empty()) config.out_path = csv_path;
  }
  if (json) config.output = OutputFormat::Json;

  return subgauss::cli::run(config, std::cout, std::cerr);
}
