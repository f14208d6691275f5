#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hubplan/core/types.hpp"

namespace hubplan {

// Catalog and tariffs share one JSON document layout:
//
//   { "planning":   { "planning_years": 10, "discount_rate": 0.06 },
//     "fuel_cells": [ { "id": "PEM_gas", "invest_cost": 30, ... } ],
//     "bess": {...}, "tess": {...}, "ev": {...},
//     "tariffs":    { "elec_price": [...], "grid_emission": [...], ... } }
//
// See docs/input_formats.md for every key and its unit.

EquipmentCatalog catalog_from_json(const nlohmann::json& doc, const std::string& source = "<json>");
TariffSet tariffs_from_json(const nlohmann::json& doc, const std::string& source = "<json>");

nlohmann::json to_json(const EquipmentCatalog& catalog);
nlohmann::json to_json(const TariffSet& tariffs);

/// Parses JSON text, mapping syntax errors to ParseError with line and column.
nlohmann::json parse_json_text(std::string_view text, const std::string& source);
nlohmann::json read_json_file(const std::filesystem::path& path);

EquipmentCatalog read_catalog(const std::filesystem::path& path);
TariffSet read_tariffs(const std::filesystem::path& path);

/// Hourly series CSV: scenario,hour,elec_load_kw,heat_load_kw,pv_avail_kw.
/// EV CSV: scenario,ev_id,arrive_hour,depart_hour,initial_soc.
/// `grid` supplies planning_years and discount_rate; hours and scenario count
/// are taken from the data.
ScenarioSet parse_scenario_csv(std::string_view series_csv, std::string_view ev_csv,
                               const TimeGrid& grid, const std::string& series_source = "<series>",
                               const std::string& ev_source = "<ev>");
ScenarioSet read_scenario_set(const std::filesystem::path& series_path,
                              const std::filesystem::path& ev_path, const TimeGrid& grid);

void write_series_csv(std::ostream& out, const ScenarioSet& set);
void write_ev_csv(std::ostream& out, const ScenarioSet& set);
void write_scenario_set(const ScenarioSet& set, const std::filesystem::path& series_path,
                        const std::filesystem::path& ev_path);

/// Conventional file names inside a scenario directory.
inline constexpr const char* kSeriesFileName = "scenarios.csv";
inline constexpr const char* kEvFileName = "ev.csv";

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace hubplan
