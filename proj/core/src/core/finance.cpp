#include "hubplan/core/finance.hpp"

#include <cmath>

#include "hubplan/core/error.hpp"

namespace hubplan {

double annualization_factor(const TimeGrid& grid) noexcept {
  const double per_scenario_day = 365.0 / static_cast<double>(grid.n_scenarios);
  double m = 0.0;
  for (int y = 1; y <= grid.planning_years; ++y) {
    m += per_scenario_day / std::pow(1.0 + grid.discount_rate, y - 1);
  }
  return m;
}

double fuel_price_per_kwh(double price_per_m3, double lhv_kwh_per_m3) {
  if (!(lhv_kwh_per_m3 > 0.0)) {
    throw InvalidParameter("lower heating value must be positive");
  }
  return price_per_m3 / lhv_kwh_per_m3;
}

}  // namespace hubplan
