#pragma once

#include <string>
#include <vector>

#include "hubplan/core/types.hpp"

namespace hubplan {

/// One broken invariant. Index fields are -1 when not applicable.
struct Violation {
  int scenario = -1;
  int hour = -1;
  int ev = -1;
  std::string field;
  std::string message;
};

std::string describe(const Violation& v);

std::vector<Violation> validate_catalog(const EquipmentCatalog& catalog);
std::vector<Violation> validate_tariffs(const TariffSet& tariffs, int hours_per_day);

/// Reports every invariant violation of the scenario set against the fleet
/// and PV capacity. An empty result means the set is valid.
std::vector<Violation> validate_scenario_set(const ScenarioSet& set,
                                             const EquipmentCatalog& catalog,
                                             const TariffSet& tariffs);

/// Catalog, tariffs and scenarios together.
std::vector<Violation> validate_inputs(const PlanningInputs& inputs);

}  // namespace hubplan
