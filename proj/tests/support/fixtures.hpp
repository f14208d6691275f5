#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hubplan/core/types.hpp"
#include "hubplan/milp/model.hpp"

namespace hubplan::test {

std::filesystem::path data_dir();

/// Catalog and tariffs from `dir/catalog.json`, scenarios from the CSV pair in `dir`.
PlanningInputs load_inputs(const std::filesystem::path& dir);

/// A shipped fixture under data/fixtures.
PlanningInputs load_fixture(const std::string& name);

/// Fixtures that are feasible at zeta 0.5.
std::vector<std::string> solvable_fixture_names();

/// Bundled example catalog with the committed 10-scenario desk set.
PlanningInputs desk_inputs(double carbon_tax);

/// Example catalog as shipped.
EquipmentCatalog example_catalog();

/// Small deterministic random instance. Every vehicle can reach the target
/// state of charge, so the model is feasible for any zeta; a low departure
/// penalty makes substandard scenarios attractive.
PlanningInputs random_fixture(std::uint64_t seed, int n_scenarios, int hours, int n_ev);

struct RandomMilpShape {
  int cols = 6;
  int rows = 4;
  bool integers = true;      // mix integer, binary and continuous columns
  bool finite_bounds = true; // every column bounded on both sides
  int max_upper = 3;
  bool fractional = false;   // full-precision coefficients instead of small integers
};

/// Random MILP with small integer coefficients. Always feasible at the origin
/// when `finite_bounds` holds, since every row is `<=` with nonnegative rhs
/// or `>=` with nonpositive rhs.
milp::MilpModel random_milp(std::uint64_t seed, const RandomMilpShape& shape);

/// Portable uniform draws for fixtures and fuzzers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform(double lo = 0.0, double hi = 1.0);
  int integer(int lo, int hi);  // inclusive
  bool coin(double p = 0.5) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace hubplan::test
