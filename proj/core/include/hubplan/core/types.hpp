#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hubplan {

/// Fuel-cell technologies that can be invested in.
enum class FcType { Sofc, PemGas, PemH2 };

std::string_view to_string(FcType type) noexcept;
std::optional<FcType> parse_fc_type(std::string_view text) noexcept;

/// Time discretisation and discounting horizon of a planning run.
struct TimeGrid {
  int hours_per_day = 24;
  int n_scenarios = 1;
  int planning_years = 10;
  double discount_rate = 0.06;

  /// Throws InvalidParameter when any invariant is violated.
  void validate() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct FcSpec {
  FcType id = FcType::PemGas;
  double invest_cost = 0.0;     // 10^4 CNY per set
  double gas_to_elec = 0.0;     // kWh_e per kWh_fuel
  double gas_to_heat = 0.0;     // kWh_h per kWh_fuel
  double max_elec = 0.0;        // kW per set
  double max_heat = 0.0;        // kW per set
  double fuel_price = 0.0;      // CNY per kWh_fuel
  double fuel_emission = 0.0;   // t CO2 per kWh_fuel
  int max_units = 0;
  /// Names of fields whose values are assumptions rather than published data.
  std::vector<std::string> assumed;

  /// Largest fuel draw (kWh/h) one installed set can convert within both output caps.
  double max_fuel_per_unit() const noexcept;

  friend bool operator==(const FcSpec&, const FcSpec&) = default;
};

struct BessSpec {
  double invest_cost = 0.15;    // 10^4 CNY per kWh
  double rate_fraction = 0.25;  // 1/h, charge and discharge cap relative to capacity
  double eta_ch = 0.95;
  double eta_dis = 0.95;
  double soc_min = 0.1;
  double soc_max = 1.0;
  double lifetime_cycles = 5000.0;
  double max_capacity = 0.0;    // kWh

  friend bool operator==(const BessSpec&, const BessSpec&) = default;
};

struct TessSpec {
  double capacity = 150.0;      // kWh, existing asset
  double rate_fraction = 0.5;
  double eta_ch = 0.9;
  double eta_dis = 0.9;

  double rate_cap() const noexcept { return rate_fraction * capacity; }

  friend bool operator==(const TessSpec&, const TessSpec&) = default;
};

struct EvFleetSpec {
  int n_ev = 0;
  double capacity = 60.0;                // kWh per vehicle
  double charger_power = 7.0;            // kW
  double discharge_rate_fraction = 0.25; // 1/h relative to capacity
  double eta_ch = 0.95;
  double eta_dis = 0.95;
  double soc_min = 0.1;
  double soc_max = 1.0;
  double target_departure_soc = 0.9;

  double discharge_cap() const noexcept { return discharge_rate_fraction * capacity; }

  friend bool operator==(const EvFleetSpec&, const EvFleetSpec&) = default;
};

/// Investable and existing equipment plus the discounting horizon.
struct EquipmentCatalog {
  int planning_years = 10;
  double discount_rate = 0.06;
  std::vector<FcSpec> fuel_cells;
  BessSpec bess;
  TessSpec tess;
  EvFleetSpec ev;

  friend bool operator==(const EquipmentCatalog&, const EquipmentCatalog&) = default;
};

/// Prices are kept in CNY as published; the model builder scales them to 10^4 CNY.
struct TariffSet {
  std::vector<double> elec_price;     // CNY per kWh, one entry per hour
  std::vector<double> grid_emission;  // t CO2 per kWh, one entry per hour
  double carbon_tax = 40.0;           // CNY per t
  double soc_penalty = 1.0;           // CNY per kWh of departure shortfall
  double grid_cap = 2000.0;           // kW
  double pv_cap = 1000.0;             // kW
  std::vector<std::string> assumed;

  friend bool operator==(const TariffSet&, const TariffSet&) = default;
};

struct EvRecord {
  int arrive_hour = 0;
  int depart_hour = 1;   // exclusive: the vehicle is parked during [arrive, depart)
  double initial_soc = 0.5;

  friend bool operator==(const EvRecord&, const EvRecord&) = default;
};

struct Scenario {
  std::vector<double> elec_load;   // kW per hour
  std::vector<double> heat_load;   // kW per hour
  std::vector<double> pv_avail;    // kW per hour
  std::vector<EvRecord> ev;        // indexed by vehicle id

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioSet {
  TimeGrid grid;
  std::vector<Scenario> scenarios;

  friend bool operator==(const ScenarioSet&, const ScenarioSet&) = default;
};

/// Catalog, tariffs and scenarios: everything a planning model is built from.
struct PlanningInputs {
  EquipmentCatalog catalog;
  TariffSet tariffs;
  ScenarioSet scenarios;
};

/// Conversion factor between CNY and the 10^4 CNY reporting unit.
inline constexpr double kCnyPerReportingUnit = 1.0e4;

}  // namespace hubplan
