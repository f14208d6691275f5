#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "hubplan/core/error.hpp"

namespace {

using hubplan::cli::RunConfig;

// Flags shared by every subcommand. Each one overrides the config file only
// when it is given on the command line.
struct Flags {
  std::string config;
  std::string catalog, tariffs, history, scenarios, out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_scenarios;
  std::optional<double> zeta;
  std::optional<double> time_limit;
  std::optional<int> jobs;
  std::string carbon_tax;
  std::string mode;
  std::string extreme;
  bool export_mps = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--catalog", f.catalog, "equipment catalog JSON");
  cmd->add_option("--tariffs", f.tariffs, "tariff JSON (defaults to the catalog document)");
  cmd->add_option("--history", f.history, "directory with the historical scenarios.csv and ev.csv");
  cmd->add_option("--scenarios", f.scenarios, "directory with a ready scenario set");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed, "scenario generator seed");
  cmd->add_option("-n,--n-scenarios", f.n_scenarios, "number of scenarios to generate");
  cmd->add_option("--zeta", f.zeta, "allowed share of substandard scenarios");
  cmd->add_option("--carbon-tax", f.carbon_tax, "carbon tax in CNY/t, or a comma separated list for sweep");
  cmd->add_option("--mode", f.mode, "storage exclusivity: binary or relaxed")
      ->check(CLI::IsMember({"binary", "relaxed"}));
  cmd->add_option("--extreme", f.extreme, "dispatch tables for the elec or heat extreme day only")
      ->check(CLI::IsMember({"elec", "heat"}));
  cmd->add_option("--time-limit", f.time_limit, "branch-and-bound time limit in seconds");
  cmd->add_option("--jobs", f.jobs, "parallel sweep levels");
  cmd->add_flag("--export-mps", f.export_mps, "also write model.mps next to the reports");
}

RunConfig build_config(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : hubplan::cli::read_config(f.config);
  if (!f.catalog.empty()) c.catalog = f.catalog;
  if (!f.tariffs.empty()) c.tariffs = f.tariffs;
  if (!f.history.empty()) {
    c.history = f.history;
    c.use_existing_scenarios = false;
  }
  if (!f.scenarios.empty()) {
    c.scenarios = f.scenarios;
    c.use_existing_scenarios = true;
  }
  if (!f.out.empty()) c.out = f.out;
  if (f.seed) c.scengen.seed = *f.seed;
  if (f.n_scenarios) c.scengen.n_scenarios = *f.n_scenarios;
  if (f.zeta) c.model.zeta = *f.zeta;
  if (f.time_limit) c.solver.time_limit_s = *f.time_limit;
  if (f.jobs) c.jobs = *f.jobs;
  if (!f.carbon_tax.empty()) c.carbon_tax = hubplan::cli::parse_tax_list(f.carbon_tax);
  if (!f.mode.empty()) c.model.mode = *hubplan::model::parse_exclusivity_mode(f.mode);
  if (f.extreme == "elec") c.extreme = hubplan::analysis::ExtremeKind::Elec;
  if (f.extreme == "heat") c.extreme = hubplan::analysis::ExtremeKind::Heat;
  if (f.export_mps) c.export_mps = true;
  c.model.validate();
  if (c.jobs < 1) throw hubplan::InvalidParameter("--jobs must be at least 1");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic capacity planning for building energy hubs"};
  app.require_subcommand(1);

  Flags flags;
  auto* scen = app.add_subcommand("scen", "scenario tools");
  scen->require_subcommand(1);
  auto* gen = scen->add_subcommand("gen", "generate scenarios from a history by moment matching");
  auto* plan = app.add_subcommand("plan", "solve one planning problem and write reports");
  auto* sweep = app.add_subcommand("sweep", "solve one plan per carbon tax level");
  auto* mps = app.add_subcommand("export-mps", "write the planning model in MPS format");
  auto* validate = app.add_subcommand("validate", "check catalog, tariffs and scenario files");
  for (auto* cmd : {gen, plan, sweep, mps, validate}) add_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hubplan::cli::kInputError;
  }

  try {
    const RunConfig config = build_config(flags);
    if (gen->parsed()) return hubplan::cli::cmd_scen_gen(config, std::cerr);
    if (plan->parsed()) return hubplan::cli::cmd_plan(config, std::cerr);
    if (sweep->parsed()) return hubplan::cli::cmd_sweep(config, std::cerr);
    if (mps->parsed()) return hubplan::cli::cmd_export_mps(config, std::cerr);
    if (validate->parsed()) return hubplan::cli::cmd_validate(config, std::cerr);
  } catch (const hubplan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hubplan::cli::kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hubplan::cli::kInputError;
  }
  return hubplan::cli::kInputError;
}
