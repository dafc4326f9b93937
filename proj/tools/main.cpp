#include <csignal>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hrl/cli/commands.hpp"
#include "hrl/cli/config.hpp"

namespace {

extern "C" void on_sigint(int) { hrl::cli::request_interrupt(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Hardy-Rellich numerical laboratory"};
  app.set_version_flag("--version", hrl::cli::kVersion);

  std::string subcommand, config_path, out_dir = "results", format = "csv";
  std::uint64_t seed = 0;
  int jobs = 0;
  bool dump = false;
  app.add_option("subcommand", subcommand, "verify-1d | verify-decomp | constants | quotient | degeneracy | "
                                           "stress | sweep | report")
      ->required()
      ->check(CLI::IsMember(hrl::cli::subcommands()));
  app.add_option("--config", config_path, "key = value config with [section] headers");
  auto* seed_opt = app.add_option("--seed", seed, "root seed (overrides the config)");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads (fallback: HRL_JOBS)")->check(CLI::PositiveNumber);
  app.add_flag("--dump-config", dump, "print the effective config and exit");
  CLI11_PARSE(app, argc, argv);

  hrl::cli::RunConfig config;
  try {
    if (!config_path.empty()) config = hrl::cli::load_config(config_path);
  } catch (const hrl::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (seed_opt->count() > 0) config.seed = seed;
  if (dump) {
    std::cout << config.canonical();
    return 0;
  }

  hrl::cli::RunOptions options;
  options.out_dir = out_dir;
  options.format = format == "json" ? hrl::cli::Format::Json : hrl::cli::Format::Csv;
  if (jobs_opt->count() > 0) {
    options.jobs = jobs;
  } else if (const char* env = std::getenv("HRL_JOBS")) {
    try {
      options.jobs = std::max(0, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "error: HRL_JOBS must be a positive integer\n";
      return 2;
    }
  }

  std::signal(SIGINT, on_sigint);
  return hrl::cli::run(subcommand, config, options, std::cout);
}
