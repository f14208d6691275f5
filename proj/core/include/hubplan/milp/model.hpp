#pragma once

#include <limits>
#include <string>
#include <vector>

namespace hubplan::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class ColumnKind { Continuous, Integer, Binary };

struct Entry {
  int col = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

struct Column {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double cost = 0.0;
  ColumnKind kind = ColumnKind::Continuous;

  bool is_integer() const noexcept { return kind != ColumnKind::Continuous; }

  friend bool operator==(const Column&, const Column&) = default;
};

struct Row {
  std::string name;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  std::vector<Entry> entries;

  friend bool operator==(const Row&, const Row&) = default;
};

/// Sparse minimisation MILP: min c'x s.t. rows, column bounds, integrality.
struct MilpModel {
  std::string name = "HUBPLAN";
  std::vector<Column> columns;
  std::vector<Row> rows;

  int num_cols() const noexcept { return static_cast<int>(columns.size()); }
  int num_rows() const noexcept { return static_cast<int>(rows.size()); }
  std::size_t num_nonzeros() const noexcept;

  int add_column(Column c);
  /// Appends a row with its entries sorted by column id.
  int add_row(Row r);

  /// Throws InvalidParameter naming the first broken invariant: column ids in
  /// range, no duplicate (row, col) entries, unique row and column names,
  /// lower <= upper.
  void validate() const;

  /// c'x over the structural columns.
  double objective_value(const std::vector<double>& x) const;

  friend bool operator==(const MilpModel&, const MilpModel&) = default;
};

std::string_view to_string(Sense s) noexcept;
std::string_view to_string(ColumnKind k) noexcept;

}  // namespace hubplan::milp
