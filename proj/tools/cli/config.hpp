#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hubplan/analysis/tables.hpp"
#include "hubplan/core/types.hpp"
#include "hubplan/milp/bnb.hpp"
#include "hubplan/model/config.hpp"
#include "hubplan/scengen/generate.hpp"

namespace hubplan::cli {

/// Everything one invocation needs. Built from an optional JSON config file
/// and then overridden by command line flags.
struct RunConfig {
  std::filesystem::path catalog;
  std::filesystem::path tariffs;    // empty: read tariffs from the catalog document
  std::filesystem::path history;    // directory with scenarios.csv and ev.csv
  std::filesystem::path scenarios;  // directory with a ready scenario set
  std::filesystem::path out = "out";
  bool use_existing_scenarios = false;

  scengen::GenerateOptions scengen;
  model::ModelConfig model;
  milp::BnbOptions solver;
  int jobs = 1;

  std::vector<double> carbon_tax;  // empty: the tariff file's value
  std::optional<analysis::ExtremeKind> extreme;  // empty: both
  bool export_mps = false;

  /// Scenario source after applying use_existing_scenarios.
  bool reads_scenarios() const { return use_existing_scenarios || (!scenarios.empty() && history.empty()); }
};

/// Reads a config document. Relative paths resolve against `base_dir`.
RunConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig read_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// Parses "40,100,400" (commas or spaces).
std::vector<double> parse_tax_list(const std::string& text);

/// Throws InvalidParameter naming the path when it does not exist.
void require_path(const std::filesystem::path& path, const char* what);

}  // namespace hubplan::cli
