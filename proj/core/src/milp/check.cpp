#include "hubplan/milp/check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hubplan::milp {

FeasibilityReport check_solution(const MilpModel& model, std::span<const double> x, double feas_tol,
                                 double int_tol) {
  FeasibilityReport rep;
  if (x.size() != model.columns.size()) {
    rep.issues.push_back("solution has " + std::to_string(x.size()) + " values for " +
                         std::to_string(model.columns.size()) + " columns");
    return rep;
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& c = model.columns[j];
    const double v = x[j];
    if (!std::isfinite(v)) {
      rep.issues.push_back("column " + c.name + " is not finite");
      continue;
    }
    const double below = c.lower - v;
    const double above = v - c.upper;
    const double viol = std::max({0.0, below, above});
    rep.max_bound_violation = std::max(rep.max_bound_violation, viol);
    if (viol > feas_tol * (1.0 + std::abs(v))) {
      std::ostringstream msg;
      msg << "column " << c.name << " = " << v << " outside [" << c.lower << ", " << c.upper << "]";
      rep.issues.push_back(msg.str());
    }
    if (c.is_integer()) {
      const double frac = std::abs(v - std::round(v));
      rep.max_integrality_violation = std::max(rep.max_integrality_violation, frac);
      if (frac > int_tol) {
        std::ostringstream msg;
        msg << "column " << c.name << " = " << v << " is not integral";
        rep.issues.push_back(msg.str());
      }
    }
  }
  for (const auto& row : model.rows) {
    double lhs = 0.0;
    for (const auto& e : row.entries) lhs += e.value * x[e.col];
    double viol = 0.0;
    switch (row.sense) {
      case Sense::LessEqual:
        viol = lhs - row.rhs;
        break;
      case Sense::GreaterEqual:
        viol = row.rhs - lhs;
        break;
      case Sense::Equal:
        viol = std::abs(lhs - row.rhs);
        break;
    }
    viol = std::max(0.0, viol) / (1.0 + std::abs(row.rhs));
    rep.max_row_violation = std::max(rep.max_row_violation, viol);
    if (viol > feas_tol) {
      std::ostringstream msg;
      msg << "row " << row.name << ": lhs " << lhs << ' ' << to_string(row.sense) << ' ' << row.rhs;
      rep.issues.push_back(msg.str());
    }
  }
  return rep;
}

}  // namespace hubplan::milp
