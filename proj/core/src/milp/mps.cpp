#include "hubplan/milp/mps.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "hubplan/core/io.hpp"

namespace hubplan::milp {

namespace {

char row_type(Sense s) {
  switch (s) {
    case Sense::LessEqual:
      return 'L';
    case Sense::GreaterEqual:
      return 'G';
    case Sense::Equal:
      return 'E';
  }
  return 'E';
}

std::string objective_name(const MilpModel& model) {
  std::string name = "OBJ";
  bool clash = true;
  while (clash) {
    clash = false;
    for (const auto& r : model.rows) {
      if (r.name == name) {
        name += '_';
        clash = true;
        break;
      }
    }
  }
  return name;
}

std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

bool is_mps_name(std::string_view name) noexcept {
  if (name.empty() || name.size() > 255) return false;
  for (char ch : name) {
    const auto u = static_cast<unsigned char>(ch);
    if (u <= 32 || u >= 127) return false;
  }
  return true;
}

std::string write_mps(const MilpModel& model) {
  for (const auto& c : model.columns) {
    if (!is_mps_name(c.name)) throw ExportError("column name '" + c.name + "' is not MPS-legal");
  }
  for (const auto& r : model.rows) {
    if (!is_mps_name(r.name)) throw ExportError("row name '" + r.name + "' is not MPS-legal");
  }
  if (!is_mps_name(model.name)) throw ExportError("model name '" + model.name + "' is not MPS-legal");

  const std::string obj = objective_name(model);
  std::vector<std::vector<std::pair<int, double>>> by_col(model.columns.size());
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    for (const auto& e : model.rows[r].entries) by_col[e.col].emplace_back(static_cast<int>(r), e.value);
  }

  std::ostringstream out;
  out << "NAME " << model.name << '\n';
  out << "ROWS\n";
  out << " N " << obj << '\n';
  for (const auto& r : model.rows) out << ' ' << row_type(r.sense) << ' ' << r.name << '\n';

  out << "COLUMNS\n";
  bool in_marker = false;
  int marker_id = 0;
  for (std::size_t j = 0; j < model.columns.size(); ++j) {
    const auto& c = model.columns[j];
    const bool integer = c.is_integer();
    if (integer != in_marker) {
      out << "    M" << marker_id++ << " 'MARKER' " << (integer ? "'INTORG'" : "'INTEND'") << '\n';
      in_marker = integer;
    }
    bool wrote = false;
    if (c.cost != 0.0 || by_col[j].empty()) {
      out << "    " << c.name << ' ' << obj << ' ' << format_double(c.cost) << '\n';
      wrote = true;
    }
    for (const auto& [r, v] : by_col[j]) {
      out << "    " << c.name << ' ' << model.rows[r].name << ' ' << format_double(v) << '\n';
      wrote = true;
    }
    (void)wrote;
  }
  if (in_marker) out << "    M" << marker_id++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  for (const auto& r : model.rows) {
    if (r.rhs != 0.0) out << "    RHS " << r.name << ' ' << format_double(r.rhs) << '\n';
  }
  out << "RANGES\n";
  out << "BOUNDS\n";
  for (const auto& c : model.columns) {
    const std::string& n = c.name;
    if (c.kind == ColumnKind::Binary) {
      out << " BV BND " << n << '\n';
      if (c.lower == 0.0 && c.upper == 1.0) continue;
    }
    if (c.lower == c.upper) {
      out << " FX BND " << n << ' ' << format_double(c.lower) << '\n';
      continue;
    }
    if (c.lower == -kInf) {
      out << " MI BND " << n << '\n';
    } else if (c.lower != 0.0 || c.kind == ColumnKind::Binary) {
      out << " LO BND " << n << ' ' << format_double(c.lower) << '\n';
    }
    if (c.upper == kInf) {
      if (c.is_integer()) out << " PL BND " << n << '\n';
    } else {
      out << " UP BND " << n << ' ' << format_double(c.upper) << '\n';
    }
  }
  out << "ENDATA\n";
  return out.str();
}

void write_mps_file(const MilpModel& model, const std::filesystem::path& path) {
  const std::string text = write_mps(model);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ExportError("cannot write '" + path.string() + "'");
  f << text;
}

MilpModel parse_mps(std::string_view text, const std::string& source) {
  enum class Section { None, Rows, Columns, Rhs, Ranges, Bounds, Done };
  Section section = Section::None;
  MilpModel model;
  std::string obj;
  std::unordered_map<std::string, int> row_of;
  std::unordered_map<std::string, int> col_of;
  std::vector<std::vector<Entry>> entries;
  bool integer_marker = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void { throw ParseError(source, line_no, 1, what); };
  auto number = [&](std::string_view tok) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("bad number '" + std::string(tok) + "'");
    return v;
  };
  auto column = [&](std::string_view name) -> int {
    auto it = col_of.find(std::string(name));
    if (it == col_of.end()) fail("unknown column '" + std::string(name) + "'");
    return it->second;
  };

  while (pos < text.size() && section != Section::Done) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '*') continue;
    auto tok = tokens_of(line);
    if (tok.empty()) continue;

    if (!std::isspace(static_cast<unsigned char>(line.front()))) {
      const std::string_view head = tok[0];
      if (head == "NAME") {
        model.name = tok.size() > 1 ? std::string(tok[1]) : std::string();
      } else if (head == "ROWS") {
        section = Section::Rows;
      } else if (head == "COLUMNS") {
        section = Section::Columns;
      } else if (head == "RHS") {
        section = Section::Rhs;
      } else if (head == "RANGES") {
        section = Section::Ranges;
      } else if (head == "BOUNDS") {
        section = Section::Bounds;
      } else if (head == "ENDATA") {
        section = Section::Done;
      } else if (head == "OBJSENSE") {
        if (tok.size() > 1 && tok[1] != "MIN" && tok[1] != "MINIMIZE") fail("only minimisation is supported");
      } else {
        fail("unknown section '" + std::string(head) + "'");
      }
      continue;
    }

    switch (section) {
      case Section::Rows: {
        if (tok.size() != 2) fail("ROWS entry needs a type and a name");
        const std::string name(tok[1]);
        if (tok[0] == "N") {
          if (obj.empty()) obj = name;
          continue;
        }
        Row r;
        r.name = name;
        if (tok[0] == "L") {
          r.sense = Sense::LessEqual;
        } else if (tok[0] == "G") {
          r.sense = Sense::GreaterEqual;
        } else if (tok[0] == "E") {
          r.sense = Sense::Equal;
        } else {
          fail("unknown row type '" + std::string(tok[0]) + "'");
        }
        if (!row_of.emplace(name, model.num_rows()).second) fail("duplicate row '" + name + "'");
        model.rows.push_back(std::move(r));
        entries.emplace_back();
        break;
      }
      case Section::Columns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") {
          if (tok[2] == "'INTORG'") {
            integer_marker = true;
          } else if (tok[2] == "'INTEND'") {
            integer_marker = false;
          } else {
            fail("unknown marker '" + std::string(tok[2]) + "'");
          }
          continue;
        }
        if (tok.size() != 3 && tok.size() != 5) fail("COLUMNS entry needs 1 or 2 (row, value) pairs");
        const std::string name(tok[0]);
        auto it = col_of.find(name);
        int j = 0;
        if (it == col_of.end()) {
          Column c;
          c.name = name;
          if (integer_marker) c.kind = ColumnKind::Integer;
          j = model.add_column(std::move(c));
          col_of.emplace(name, j);
        } else {
          j = it->second;
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = number(tok[k + 1]);
          if (tok[k] == obj) {
            model.columns[j].cost = v;
            continue;
          }
          auto r = row_of.find(std::string(tok[k]));
          if (r == row_of.end()) fail("unknown row '" + std::string(tok[k]) + "'");
          entries[r->second].push_back({j, v});
        }
        break;
      }
      case Section::Rhs: {
        if (tok.size() != 3 && tok.size() != 5) fail("RHS entry needs a set name and 1 or 2 pairs");
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          if (tok[k] == obj) continue;
          auto r = row_of.find(std::string(tok[k]));
          if (r == row_of.end()) fail("unknown row '" + std::string(tok[k]) + "'");
          model.rows[r->second].rhs = number(tok[k + 1]);
        }
        break;
      }
      case Section::Ranges:
        fail("RANGES entries are not supported");
        break;
      case Section::Bounds: {
        if (tok.size() < 3) fail("BOUNDS entry needs a type, set name and column");
        const std::string_view type = tok[0];
        auto& c = model.columns[column(tok[2])];
        const bool has_value = tok.size() >= 4;
        auto value = [&]() {
          if (!has_value) fail("bound '" + std::string(type) + "' needs a value");
          return number(tok[3]);
        };
        if (type == "UP") {
          c.upper = value();
        } else if (type == "LO") {
          c.lower = value();
        } else if (type == "FX") {
          c.lower = c.upper = value();
        } else if (type == "MI") {
          c.lower = -kInf;
        } else if (type == "PL") {
          c.upper = kInf;
        } else if (type == "FR") {
          c.lower = -kInf;
          c.upper = kInf;
        } else if (type == "BV") {
          c.kind = ColumnKind::Binary;
          c.lower = 0.0;
          c.upper = 1.0;
        } else if (type == "LI") {
          c.kind = ColumnKind::Integer;
          c.lower = value();
        } else if (type == "UI") {
          c.kind = ColumnKind::Integer;
          c.upper = value();
        } else {
          fail("unknown bound type '" + std::string(type) + "'");
        }
        break;
      }
      case Section::None:
      case Section::Done:
        fail("data outside of a section");
    }
  }
  if (section != Section::Done) throw ParseError(source, line_no, 0, "missing ENDATA");
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    std::stable_sort(entries[r].begin(), entries[r].end(),
                     [](const Entry& a, const Entry& b) { return a.col < b.col; });
    model.rows[r].entries = std::move(entries[r]);
  }
  return model;
}

}  // namespace hubplan::milp
