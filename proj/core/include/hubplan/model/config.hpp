#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hubplan/core/error.hpp"

namespace hubplan::model {

/// How simultaneous charge and discharge is ruled out. Relaxed relies on the
/// round-trip loss making it unprofitable; Binary adds one indicator per slot.
enum class ExclusivityMode { Relaxed, Binary };

/// Unit the departure-shortfall penalty is priced in.
enum class PenaltyBasis { Kwh, Soc };

std::string_view to_string(ExclusivityMode m) noexcept;
std::optional<ExclusivityMode> parse_exclusivity_mode(std::string_view text) noexcept;

/// Investment decisions held fixed, for evaluating a given plan.
struct FirstStage {
  double bess_capacity = 0.0;       // kWh
  std::vector<double> fc_units;     // per catalog fuel cell, same order
};

struct ModelConfig {
  double zeta = 0.05;
  ExclusivityMode mode = ExclusivityMode::Relaxed;
  /// When set, every big-M row uses this constant instead of its own bound.
  std::optional<double> global_big_m;
  PenaltyBasis penalty_basis = PenaltyBasis::Kwh;
  std::optional<FirstStage> fixed_first_stage;

  /// Throws InvalidParameter unless 0 <= zeta < 1 and big-M is positive.
  void validate() const;
};

/// Inputs that cannot be turned into a model, such as an EV parked outside the day.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace hubplan::model
