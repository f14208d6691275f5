#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "hubplan/core/error.hpp"
#include "hubplan/core/io.hpp"

namespace hubplan {

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based character column of the field start
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<Field> split_line(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    std::string_view raw = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    out.push_back({trim(raw), start + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Line-oriented CSV table with a mandatory header.
class CsvTable {
 public:
  CsvTable(std::string_view text, std::string source, std::vector<std::string> required)
      : source_(std::move(source)) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
      ++line_no;
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      if (trim(line).empty()) continue;
      auto fields = split_line(line);
      if (!have_header) {
        for (std::size_t k = 0; k < fields.size(); ++k) header_[std::string(fields[k].text)] = k;
        for (const auto& name : required) {
          if (!header_.count(name)) {
            throw ParseError(source_, line_no, 1, "header is missing column '" + name + "'");
          }
        }
        width_ = fields.size();
        have_header = true;
        continue;
      }
      if (fields.size() != width_) {
        throw ParseError(source_, line_no, 1,
                         "expected " + std::to_string(width_) + " fields, found " +
                             std::to_string(fields.size()));
      }
      rows_.push_back({line_no, std::move(fields)});
    }
    if (!have_header) throw ParseError(source_, 1, 1, "missing header row");
  }

  std::size_t size() const { return rows_.size(); }
  std::size_t line(std::size_t r) const { return rows_[r].line; }

  double number(std::size_t r, const std::string& name) const {
    const Field& f = field(r, name);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
    if (ec != std::errc() || ptr != f.text.data() + f.text.size() || !std::isfinite(v)) {
      throw ParseError(source_, rows_[r].line, f.column,
                       "column '" + name + "': '" + std::string(f.text) + "' is not a finite number");
    }
    return v;
  }

  int integer(std::size_t r, const std::string& name) const {
    const Field& f = field(r, name);
    int v = 0;
    auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
    if (ec != std::errc() || ptr != f.text.data() + f.text.size()) {
      throw ParseError(source_, rows_[r].line, f.column,
                       "column '" + name + "': '" + std::string(f.text) + "' is not an integer");
    }
    return v;
  }

  [[noreturn]] void fail(std::size_t r, const std::string& name, const std::string& what) const {
    throw ParseError(source_, rows_[r].line, field(r, name).column, what);
  }

 private:
  struct Row {
    std::size_t line;
    std::vector<Field> fields;
  };

  const Field& field(std::size_t r, const std::string& name) const {
    return rows_[r].fields[header_.at(name)];
  }

  std::string source_;
  std::map<std::string, std::size_t> header_;
  std::size_t width_ = 0;
  std::vector<Row> rows_;
};

void write_number(std::ostream& out, double v) { out << format_double(v); }

}  // namespace

ScenarioSet parse_scenario_csv(std::string_view series_csv, std::string_view ev_csv,
                               const TimeGrid& grid, const std::string& series_source,
                               const std::string& ev_source) {
  CsvTable series(series_csv, series_source,
                  {"scenario", "hour", "elec_load_kw", "heat_load_kw", "pv_avail_kw"});
  if (series.size() == 0) throw ParseError(series_source, 0, 0, "no data rows");

  int max_scenario = -1;
  int max_hour = -1;
  for (std::size_t r = 0; r < series.size(); ++r) {
    const int s = series.integer(r, "scenario");
    const int h = series.integer(r, "hour");
    if (s < 0) series.fail(r, "scenario", "scenario index must be >= 0");
    if (h < 0) series.fail(r, "hour", "hour index must be >= 0");
    max_scenario = std::max(max_scenario, s);
    max_hour = std::max(max_hour, h);
  }

  ScenarioSet set;
  set.grid = grid;
  set.grid.n_scenarios = max_scenario + 1;
  set.grid.hours_per_day = max_hour + 1;
  const auto n = static_cast<std::size_t>(set.grid.n_scenarios);
  const auto T = static_cast<std::size_t>(set.grid.hours_per_day);
  set.scenarios.resize(n);
  std::vector<std::vector<char>> seen(n, std::vector<char>(T, 0));
  for (auto& sc : set.scenarios) {
    sc.elec_load.assign(T, 0.0);
    sc.heat_load.assign(T, 0.0);
    sc.pv_avail.assign(T, 0.0);
  }
  for (std::size_t r = 0; r < series.size(); ++r) {
    const auto s = static_cast<std::size_t>(series.integer(r, "scenario"));
    const auto h = static_cast<std::size_t>(series.integer(r, "hour"));
    if (seen[s][h]) series.fail(r, "hour", "duplicate (scenario, hour) row");
    seen[s][h] = 1;
    set.scenarios[s].elec_load[h] = series.number(r, "elec_load_kw");
    set.scenarios[s].heat_load[h] = series.number(r, "heat_load_kw");
    set.scenarios[s].pv_avail[h] = series.number(r, "pv_avail_kw");
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t h = 0; h < T; ++h) {
      if (!seen[s][h]) {
        throw ParseError(series_source, 0, 0,
                         "missing row for scenario " + std::to_string(s) + ", hour " + std::to_string(h));
      }
    }
  }

  if (!ev_csv.empty()) {
    CsvTable ev(ev_csv, ev_source,
                {"scenario", "ev_id", "arrive_hour", "depart_hour", "initial_soc"});
    std::vector<std::map<int, EvRecord>> per_scenario(n);
    for (std::size_t r = 0; r < ev.size(); ++r) {
      const int s = ev.integer(r, "scenario");
      const int j = ev.integer(r, "ev_id");
      if (s < 0 || static_cast<std::size_t>(s) >= n) {
        ev.fail(r, "scenario", "scenario " + std::to_string(s) + " has no hourly series");
      }
      if (j < 0) ev.fail(r, "ev_id", "ev_id must be >= 0");
      EvRecord rec{ev.integer(r, "arrive_hour"), ev.integer(r, "depart_hour"),
                   ev.number(r, "initial_soc")};
      if (!per_scenario[s].emplace(j, rec).second) ev.fail(r, "ev_id", "duplicate (scenario, ev_id) row");
    }
    for (std::size_t s = 0; s < n; ++s) {
      int expect = 0;
      for (const auto& [j, rec] : per_scenario[s]) {
        if (j != expect) {
          throw ParseError(ev_source, 0, 0,
                           "scenario " + std::to_string(s) + ": ev ids must be 0..k-1 without gaps");
        }
        set.scenarios[s].ev.push_back(rec);
        ++expect;
      }
    }
  }
  return set;
}

ScenarioSet read_scenario_set(const std::filesystem::path& series_path,
                              const std::filesystem::path& ev_path, const TimeGrid& grid) {
  const std::string series = read_text_file(series_path);
  std::string ev;
  if (!ev_path.empty() && std::filesystem::exists(ev_path)) ev = read_text_file(ev_path);
  return parse_scenario_csv(series, ev, grid, series_path.string(), ev_path.string());
}

void write_series_csv(std::ostream& out, const ScenarioSet& set) {
  out << "scenario,hour,elec_load_kw,heat_load_kw,pv_avail_kw\n";
  for (std::size_t s = 0; s < set.scenarios.size(); ++s) {
    const auto& sc = set.scenarios[s];
    for (std::size_t h = 0; h < sc.elec_load.size(); ++h) {
      out << s << ',' << h << ',';
      write_number(out, sc.elec_load[h]);
      out << ',';
      write_number(out, sc.heat_load[h]);
      out << ',';
      write_number(out, sc.pv_avail[h]);
      out << '\n';
    }
  }
}

void write_ev_csv(std::ostream& out, const ScenarioSet& set) {
  out << "scenario,ev_id,arrive_hour,depart_hour,initial_soc\n";
  for (std::size_t s = 0; s < set.scenarios.size(); ++s) {
    const auto& ev = set.scenarios[s].ev;
    for (std::size_t j = 0; j < ev.size(); ++j) {
      out << s << ',' << j << ',' << ev[j].arrive_hour << ',' << ev[j].depart_hour << ',';
      write_number(out, ev[j].initial_soc);
      out << '\n';
    }
  }
}

void write_scenario_set(const ScenarioSet& set, const std::filesystem::path& series_path,
                        const std::filesystem::path& ev_path) {
  std::ofstream series(series_path, std::ios::binary);
  if (!series) throw InvalidParameter("cannot write '" + series_path.string() + "'");
  write_series_csv(series, set);
  std::ofstream ev(ev_path, std::ios::binary);
  if (!ev) throw InvalidParameter("cannot write '" + ev_path.string() + "'");
  write_ev_csv(ev, set);
}

}  // namespace hubplan
