#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hubplan/core/error.hpp"
#include "hubplan/milp/model.hpp"

namespace hubplan::milp {

class ExportError : public Error {
 public:
  using Error::Error;
};

/// Free-format MPS. Integer columns sit between INTORG/INTEND markers, binary
/// columns get BV bounds. Numbers are written with round-trip precision, so
/// parse_mps(write_mps(m)) == m.
std::string write_mps(const MilpModel& model);
void write_mps_file(const MilpModel& model, const std::filesystem::path& path);

MilpModel parse_mps(std::string_view text, const std::string& source = "<mps>");

/// True when `name` can be written to MPS unchanged.
bool is_mps_name(std::string_view name) noexcept;

}  // namespace hubplan::milp
