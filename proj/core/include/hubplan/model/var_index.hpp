#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hubplan/core/types.hpp"
#include "hubplan/milp/model.hpp"
#include "hubplan/model/config.hpp"

namespace hubplan::model {

enum class VarKind {
  XEss,       // BESS capacity, kWh
  XFc,        // fuel-cell sets of type i
  Grid,       // grid import (s, t)
  Fuel,       // fuel input of type i (s, t, i)
  Pv,         // PV output used (s, t)
  BessCh,
  BessDis,
  BessE,
  TessCh,
  TessDis,
  TessE,
  EvCh,       // (s, t, j), parked hours only
  EvDis,
  EvE,        // energy at the end of hour t
  Shortfall,  // departure shortfall below target, kWh (s, j)
  YBess,
  YTess,
  YEv,
  Z,          // scenario allowed to be substandard (s)
};

std::string_view to_string(VarKind k) noexcept;

/// Semantic column key. Unused indices stay -1.
struct VarKey {
  VarKind kind = VarKind::XEss;
  int s = -1;
  int t = -1;
  int i = -1;
  int j = -1;

  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

std::string column_name(const VarKey& key, const EquipmentCatalog& catalog);

/// Problem dimensions shared by builders and result extraction.
struct Dims {
  int scenarios = 0;
  int hours = 0;
  int fuel_cells = 0;
  int evs = 0;
};

/// Bijection between semantic keys and contiguous column ids, carrying each
/// column's bounds and integrality.
class VarIndex {
 public:
  int add(const VarKey& key, milp::Column column);

  std::optional<int> find(const VarKey& key) const;
  /// Throws LookupError for an unknown key.
  int at(const VarKey& key) const;
  const VarKey& key(int id) const { return keys_.at(static_cast<std::size_t>(id)); }

  int size() const noexcept { return static_cast<int>(keys_.size()); }
  const std::vector<milp::Column>& columns() const noexcept { return columns_; }
  int count(VarKind kind) const;

  Dims dims;

 private:
  std::map<VarKey, int> ids_;
  std::vector<VarKey> keys_;
  std::vector<milp::Column> columns_;
};

/// Allocates every column of the planning model. EV columns exist only for
/// hours the vehicle is parked; exclusivity indicators only in binary mode.
/// Throws ModelError for EV records outside the day.
VarIndex index_variables(const PlanningInputs& inputs, const ModelConfig& config);

}  // namespace hubplan::model
