#include "hubplan/milp/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "hubplan/core/error.hpp"

namespace hubplan::milp {

std::size_t MilpModel::num_nonzeros() const noexcept {
  std::size_t nnz = 0;
  for (const auto& r : rows) nnz += r.entries.size();
  return nnz;
}

int MilpModel::add_column(Column c) {
  columns.push_back(std::move(c));
  return num_cols() - 1;
}

int MilpModel::add_row(Row r) {
  std::stable_sort(r.entries.begin(), r.entries.end(),
                   [](const Entry& a, const Entry& b) { return a.col < b.col; });
  rows.push_back(std::move(r));
  return num_rows() - 1;
}

void MilpModel::validate() const {
  std::unordered_set<std::string> names;
  for (const auto& c : columns) {
    if (!names.insert(c.name).second) throw InvalidParameter("duplicate column name '" + c.name + "'");
    if (!(c.lower <= c.upper)) throw InvalidParameter("column '" + c.name + "' has lower > upper");
  }
  names.clear();
  std::vector<int> mark(columns.size(), -1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (!names.insert(row.name).second) throw InvalidParameter("duplicate row name '" + row.name + "'");
    for (const auto& e : row.entries) {
      if (e.col < 0 || e.col >= num_cols()) {
        throw InvalidParameter("row '" + row.name + "' references column " + std::to_string(e.col));
      }
      if (mark[e.col] == static_cast<int>(r)) {
        throw InvalidParameter("row '" + row.name + "' lists column '" + columns[e.col].name + "' twice");
      }
      mark[e.col] = static_cast<int>(r);
    }
  }
}

double MilpModel::objective_value(const std::vector<double>& x) const {
  double z = 0.0;
  for (std::size_t j = 0; j < columns.size() && j < x.size(); ++j) z += columns[j].cost * x[j];
  return z;
}

std::string_view to_string(Sense s) noexcept {
  switch (s) {
    case Sense::LessEqual:
      return "<=";
    case Sense::Equal:
      return "=";
    case Sense::GreaterEqual:
      return ">=";
  }
  return "?";
}

std::string_view to_string(ColumnKind k) noexcept {
  switch (k) {
    case ColumnKind::Continuous:
      return "continuous";
    case ColumnKind::Integer:
      return "integer";
    case ColumnKind::Binary:
      return "binary";
  }
  return "?";
}

}  // namespace hubplan::milp
