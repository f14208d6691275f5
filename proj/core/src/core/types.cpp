#include "hubplan/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hubplan/core/error.hpp"

namespace hubplan {

namespace {

std::string format_location(const std::string& source, std::size_t line, std::size_t column,
                            const std::string& what) {
  std::ostringstream out;
  out << source;
  if (line > 0) {
    out << ':' << line;
    if (column > 0) out << ':' << column;
  }
  out << ": " << what;
  return out.str();
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t column,
                       const std::string& what)
    : Error(format_location(source, line, column, what)),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

std::string_view to_string(FcType type) noexcept {
  switch (type) {
    case FcType::Sofc:
      return "SOFC";
    case FcType::PemGas:
      return "PEM_gas";
    case FcType::PemH2:
      return "PEM_H2";
  }
  return "?";
}

std::optional<FcType> parse_fc_type(std::string_view text) noexcept {
  for (FcType t : {FcType::Sofc, FcType::PemGas, FcType::PemH2}) {
    if (text == to_string(t)) return t;
  }
  return std::nullopt;
}

void TimeGrid::validate() const {
  if (hours_per_day < 1) throw InvalidParameter("hours_per_day must be >= 1");
  if (n_scenarios < 1) throw InvalidParameter("n_scenarios must be >= 1");
  if (planning_years < 1) throw InvalidParameter("planning_years must be >= 1");
  if (!(discount_rate >= 0.0 && discount_rate < 1.0)) {
    throw InvalidParameter("discount_rate must lie in [0, 1)");
  }
}

double FcSpec::max_fuel_per_unit() const noexcept {
  double cap = std::numeric_limits<double>::infinity();
  if (gas_to_elec > 0.0) cap = std::min(cap, max_elec / gas_to_elec);
  if (gas_to_heat > 0.0) cap = std::min(cap, max_heat / gas_to_heat);
  return std::isfinite(cap) ? cap : 0.0;
}

}  // namespace hubplan
