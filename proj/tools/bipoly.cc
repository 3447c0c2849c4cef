// Command-line front end: demo, thresholds, simulate, privacy.

#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "bipoly/cli.h"

namespace {

void AddSchemeFlags(CLI::App* cmd, bipoly::SchemeParams& p) {
  cmd->add_option("--K", p.K, "row partitions of A")->capture_default_str();
  cmd->add_option("--L", p.L, "column partitions of B")->capture_default_str();
  cmd->add_option("--T", p.T, "collusion tolerance")->capture_default_str();
  cmd->add_option("--m", p.m, "max sub-tasks per worker")->capture_default_str();
  cmd->add_option("--N", p.N, "number of workers")->capture_default_str();
  cmd->add_option("--q", p.q, "prime field order")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = bipoly::cli;
  CLI::App app{"Private distributed matrix multiplication with bivariate Hermitian polynomial codes"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);

  const std::uint64_t env_seed = cli::SeedFromEnvironment(0);

  cli::DemoOptions demo;
  demo.seed = env_seed;
  std::string demo_dump;
  auto* demo_cmd = app.add_subcommand("demo", "encode, compute and decode a random product");
  AddSchemeFlags(demo_cmd, demo.params);
  demo_cmd->add_option("--r", demo.r, "rows of A")->capture_default_str();
  demo_cmd->add_option("--s", demo.s, "columns of A / rows of B")->capture_default_str();
  demo_cmd->add_option("--c", demo.c, "columns of B")->capture_default_str();
  demo_cmd->add_option("--seed", demo.seed, "RNG seed (default: $BIPOLY_SEED or 0)");
  demo_cmd->add_option("--dump", demo_dump, "directory for binary share/result files");

  cli::ThresholdOptions thr;
  std::string thr_out;
  auto* thr_cmd = app.add_subcommand("thresholds", "recovery thresholds versus upload budget");
  thr_cmd->add_option("--K", thr.K)->capture_default_str();
  thr_cmd->add_option("--L", thr.L)->capture_default_str();
  thr_cmd->add_option("--T", thr.T)->capture_default_str();
  thr_cmd->add_option("--budgets", thr.budgets, "budgets in matrix partitions per worker")
      ->delimiter(',');
  thr_cmd->add_option("--out", thr_out, "CSV output path (default: stdout)");

  cli::SimulateOptions sim;
  sim.threads = std::max(1u, std::thread::hardware_concurrency());
  std::string sim_config, sim_out;
  std::size_t sim_trials = 0;
  std::uint64_t sim_seed = env_seed;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo expected computation time sweep");
  sim_cmd->add_option("--config", sim_config, "sweep configuration file")->required();
  sim_cmd->add_option("--scheme", sim.scheme, "proposed, gasp or both")
      ->check(CLI::IsMember({"proposed", "gasp", "both"}))
      ->capture_default_str();
  auto* trials_opt = sim_cmd->add_option("--trials", sim_trials, "override config trial count");
  auto* seed_opt = sim_cmd->add_option("--seed", sim_seed, "override config seed");
  sim_cmd->add_option("--threads", sim.threads, "worker threads for the trial loop");
  sim_cmd->add_option("--out", sim_out, "CSV output path (default: stdout)");

  cli::PrivacyOptions priv;
  priv.seed = env_seed;
  auto* priv_cmd = app.add_subcommand("privacy", "verify collusion privacy of the encoding");
  AddSchemeFlags(priv_cmd, priv.params);
  priv_cmd->add_option("--sweeps", priv.sweeps, "independent point draws")->capture_default_str();
  priv_cmd->add_option("--seed", priv.seed, "RNG seed (default: $BIPOLY_SEED or 0)");
  priv_cmd->add_flag("--allow-degenerate", priv.allow_degenerate,
                     "force workers 1 and 2 to share a point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitValidation;
  }

  if (*demo_cmd) {
    if (!demo_dump.empty()) demo.dump_dir = demo_dump;
    return cli::RunDemo(demo, std::cout, std::cerr);
  }
  if (*thr_cmd) {
    if (!thr_out.empty()) thr.out = thr_out;
    return cli::RunThresholds(thr, std::cout, std::cerr);
  }
  if (*sim_cmd) {
    sim.config = sim_config;
    if (*trials_opt) sim.trials = sim_trials;
    if (*seed_opt || std::getenv("BIPOLY_SEED") != nullptr) sim.seed = sim_seed;
    if (!sim_out.empty()) sim.out = sim_out;
    return cli::RunSimulate(sim, std::cout, std::cerr);
  }
  return cli::RunPrivacy(priv, std::cout, std::cerr);
}
