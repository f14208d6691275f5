#pragma once

#include <vector>

#include "hubplan/core/types.hpp"
#include "hubplan/model/assemble.hpp"

namespace hubplan::model {

/// One scenario's second-stage decisions. EV series hold NaN outside the
/// parking window.
struct ScenarioDispatch {
  std::vector<double> grid;
  std::vector<double> pv;
  std::vector<std::vector<double>> fuel;   // [hour][fuel cell]
  std::vector<double> bess_ch;
  std::vector<double> bess_dis;
  std::vector<double> bess_energy;
  std::vector<double> tess_ch;
  std::vector<double> tess_dis;
  std::vector<double> tess_energy;
  std::vector<std::vector<double>> ev_ch;      // [vehicle][hour]
  std::vector<std::vector<double>> ev_dis;
  std::vector<std::vector<double>> ev_energy;  // end of hour
  std::vector<double> departure_energy;        // [vehicle]
  std::vector<double> shortfall;               // [vehicle]
  double z = 0.0;
};

struct PlanSolution {
  double bess_capacity = 0.0;
  std::vector<double> fc_units;
  std::vector<ScenarioDispatch> scenarios;
  double objective = 0.0;   // solver objective, 10^4 CNY
};

/// Maps a column vector of the assembled model back to named quantities.
PlanSolution extract_solution(const AssembledModel& model, const std::vector<double>& x);

}  // namespace hubplan::model
