#pragma once

#include <string>
#include <vector>

#include "hubplan/analysis/audit.hpp"
#include "hubplan/analysis/costs.hpp"
#include "hubplan/analysis/tables.hpp"
#include "hubplan/milp/bnb.hpp"
#include "hubplan/model/config.hpp"

namespace hubplan::analysis {

struct SweepLevel {
  double carbon_tax = 0.0;
  bool ok = false;
  std::string error;
  milp::BnbStatus status = milp::BnbStatus::Infeasible;
  double objective = 0.0;
  double gap = 0.0;
  long nodes = 0;
  double wall_seconds = 0.0;  // whole level: assembly, search, reporting
  SummaryRow row;
};

struct SweepResult {
  std::vector<SweepLevel> levels;   // in the order the taxes were given

  std::vector<SummaryRow> rows() const;
  /// True when every solved level's total is at least the previous solved
  /// level's total minus `tol` relative, taking levels in ascending tax order.
  bool totals_non_decreasing(double tol = 1e-6) const;
};

struct SweepOptions {
  model::ModelConfig model;
  milp::BnbOptions solver;
  /// Worker threads; levels are independent. Results keep the input order.
  int jobs = 1;
};

/// Solves one model per tax level on the same scenarios. A failed level is
/// recorded with its error and the sweep carries on.
SweepResult sweep_carbon_tax(const PlanningInputs& base, const std::vector<double>& taxes,
                             const SweepOptions& options);

}  // namespace hubplan::analysis
