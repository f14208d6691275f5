#pragma once

#include <vector>

#include "hubplan/core/types.hpp"
#include "hubplan/milp/model.hpp"

// Reference computations written independently of the library code they check.
namespace hubplan::test {

/// Term-by-term sum of 365 / (N (1 + gamma)^(y - 1)) for y = 1..PP in long double.
double annualization_oracle(int planning_years, double gamma, int n_scenarios);

struct Moments4 {
  double mean = 0.0;
  double variance = 0.0;  // divisor N
  double skewness = 0.0;
  double kurtosis = 0.0;
};

/// Two-pass moments in long double.
Moments4 direct_moments(const std::vector<double>& x);
double direct_correlation(const std::vector<double>& a, const std::vector<double>& b);

struct LatticeResult {
  double best = 0.0;               // objective in 10^4 CNY
  int best_units = -1;             // fuel-cell sets of the best plan
  std::vector<double> per_units;   // best objective for each enumerated set count
};

/// Exhaustive search for instances with one fuel-cell type, at most one
/// vehicle and no storage. Every first stage (set count 0..max_units) is
/// enumerated. For each, fuel draw and EV charge and discharge run over a
/// `step` lattice (kW and kWh); grid and PV follow in closed form, and the EV
/// energy is tracked on the same lattice by dynamic programming. The chance
/// limit floor(N zeta) is applied by choosing the cheapest set of scenarios
/// to leave substandard.
LatticeResult lattice_optimum(const PlanningInputs& inputs, double zeta, double step = 0.01);

/// Enumerates every integer point of an all-integer model with finite bounds.
/// Returns +inf when no point is feasible.
double enumerate_integer_optimum(const milp::MilpModel& model, double tol = 1e-9);

}  // namespace hubplan::test
