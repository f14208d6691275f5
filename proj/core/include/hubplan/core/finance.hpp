#pragma once

#include "hubplan/core/types.hpp"

namespace hubplan {

/// Present-value weight applied to one scenario-day of operating cost.
///
/// m = sum_{y=1..PP} 365 / (N * (1 + gamma)^(y-1)). The 1/N scenario average is
/// folded in, so multiplying a per-scenario daily cost by m and summing over
/// scenarios yields the discounted expected cost over the planning horizon.
double annualization_factor(const TimeGrid& grid) noexcept;

/// CNY per m^3 of gas to CNY per kWh of fuel energy. Throws InvalidParameter
/// when the lower heating value is not positive.
double fuel_price_per_kwh(double price_per_m3, double lhv_kwh_per_m3);

inline constexpr double kDefaultGasLhv = 10.0;  // kWh per m^3

}  // namespace hubplan
