#include <charconv>
#include <fstream>
#include <sstream>

#include "hubplan/core/error.hpp"
#include "hubplan/core/finance.hpp"
#include "hubplan/core/io.hpp"

namespace hubplan {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& node, std::string path, const std::string& source)
      : node_(node), path_(std::move(path)), source_(source) {
    if (!node_.is_object()) fail("expected an object");
  }

  bool has(const char* key) const { return node_.contains(key); }

  double number(const char* key) const {
    auto it = node_.find(key);
    if (it == node_.end()) fail(std::string("missing required key '") + key + "'");
    if (!it->is_number()) fail(std::string("key '") + key + "' must be a number");
    return it->get<double>();
  }

  double number_or(const char* key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const char* key) const {
    auto it = node_.find(key);
    if (it == node_.end()) fail(std::string("missing required key '") + key + "'");
    if (!it->is_number_integer()) fail(std::string("key '") + key + "' must be an integer");
    return it->get<int>();
  }

  std::string string(const char* key) const {
    auto it = node_.find(key);
    if (it == node_.end() || !it->is_string()) {
      fail(std::string("missing string key '") + key + "'");
    }
    return it->get<std::string>();
  }

  std::vector<double> numbers(const char* key) const {
    auto it = node_.find(key);
    if (it == node_.end()) fail(std::string("missing required key '") + key + "'");
    if (!it->is_array()) fail(std::string("key '") + key + "' must be an array");
    std::vector<double> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
      if (!v.is_number()) fail(std::string("key '") + key + "' must hold numbers only");
      out.push_back(v.get<double>());
    }
    return out;
  }

  std::vector<std::string> strings_or_empty(const char* key) const {
    std::vector<std::string> out;
    auto it = node_.find(key);
    if (it == node_.end()) return out;
    if (!it->is_array()) fail(std::string("key '") + key + "' must be an array");
    for (const auto& v : *it) {
      if (!v.is_string()) fail(std::string("key '") + key + "' must hold strings only");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  Reader child(const char* key) const {
    auto it = node_.find(key);
    if (it == node_.end()) fail(std::string("missing section '") + key + "'");
    return Reader(*it, path_ + "." + key, source_);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_, 0, 0, path_ + ": " + what);
  }

  const json& node() const { return node_; }
  const std::string& path() const { return path_; }

 private:
  const json& node_;
  std::string path_;
  const std::string& source_;
};

FcSpec read_fc(const Reader& r) {
  FcSpec fc;
  const std::string id = r.string("id");
  auto type = parse_fc_type(id);
  if (!type) r.fail("unknown fuel cell id '" + id + "' (expected SOFC, PEM_gas or PEM_H2)");
  fc.id = *type;
  fc.invest_cost = r.number("invest_cost");
  fc.gas_to_elec = r.number("gas_to_elec");
  fc.gas_to_heat = r.number("gas_to_heat");
  fc.max_elec = r.number("max_elec_kw");
  fc.max_heat = r.number("max_heat_kw");
  if (r.has("fuel_price_per_kwh")) {
    fc.fuel_price = r.number("fuel_price_per_kwh");
  } else if (r.has("fuel_price_per_m3")) {
    fc.fuel_price = fuel_price_per_kwh(r.number("fuel_price_per_m3"),
                                       r.number_or("lhv_kwh_per_m3", kDefaultGasLhv));
  } else {
    r.fail("needs fuel_price_per_kwh or fuel_price_per_m3");
  }
  fc.fuel_emission = r.number("fuel_emission_t_per_kwh");
  fc.max_units = r.integer("max_units");
  fc.assumed = r.strings_or_empty("assumed");
  return fc;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset, std::size_t* column) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  *column = col;
  return line;
}

}  // namespace

EquipmentCatalog catalog_from_json(const json& doc, const std::string& source) {
  Reader root(doc, "$", source);
  EquipmentCatalog c;

  Reader planning = root.child("planning");
  c.planning_years = planning.integer("planning_years");
  c.discount_rate = planning.number("discount_rate");

  auto fcs = doc.find("fuel_cells");
  if (fcs == doc.end() || !fcs->is_array()) root.fail("missing array 'fuel_cells'");
  for (std::size_t k = 0; k < fcs->size(); ++k) {
    c.fuel_cells.push_back(read_fc(Reader((*fcs)[k], "$.fuel_cells[" + std::to_string(k) + "]", source)));
  }

  Reader b = root.child("bess");
  c.bess.invest_cost = b.number("invest_cost");
  c.bess.rate_fraction = b.number("rate_fraction");
  c.bess.eta_ch = b.number_or("eta_ch", 0.95);
  c.bess.eta_dis = b.number_or("eta_dis", 0.95);
  c.bess.soc_min = b.number("soc_min");
  c.bess.soc_max = b.number("soc_max");
  c.bess.lifetime_cycles = b.number("lifetime_cycles");
  c.bess.max_capacity = b.number("max_capacity_kwh");

  Reader t = root.child("tess");
  c.tess.capacity = t.number("capacity_kwh");
  c.tess.rate_fraction = t.number("rate_fraction");
  c.tess.eta_ch = t.number_or("eta_ch", 0.9);
  c.tess.eta_dis = t.number_or("eta_dis", 0.9);

  Reader e = root.child("ev");
  c.ev.n_ev = e.integer("n_ev");
  c.ev.capacity = e.number("capacity_kwh");
  c.ev.charger_power = e.number("charger_kw");
  c.ev.discharge_rate_fraction = e.number("discharge_rate_fraction");
  c.ev.eta_ch = e.number_or("eta_ch", 0.95);
  c.ev.eta_dis = e.number_or("eta_dis", 0.95);
  c.ev.soc_min = e.number("soc_min");
  c.ev.soc_max = e.number("soc_max");
  c.ev.target_departure_soc = e.number_or("target_departure_soc", 0.9);
  return c;
}

TariffSet tariffs_from_json(const json& doc, const std::string& source) {
  Reader root(doc, "$", source);
  Reader r = root.child("tariffs");
  TariffSet t;
  t.elec_price = r.numbers("elec_price");
  t.grid_emission = r.numbers("grid_emission");
  t.carbon_tax = r.number("carbon_tax");
  t.soc_penalty = r.number("soc_penalty");
  t.grid_cap = r.number("grid_cap_kw");
  t.pv_cap = r.number("pv_cap_kw");
  t.assumed = r.strings_or_empty("assumed");
  return t;
}

json to_json(const EquipmentCatalog& c) {
  json doc;
  doc["planning"] = {{"planning_years", c.planning_years}, {"discount_rate", c.discount_rate}};
  json fcs = json::array();
  for (const auto& fc : c.fuel_cells) {
    json f = {{"id", std::string(to_string(fc.id))},
              {"invest_cost", fc.invest_cost},
              {"gas_to_elec", fc.gas_to_elec},
              {"gas_to_heat", fc.gas_to_heat},
              {"max_elec_kw", fc.max_elec},
              {"max_heat_kw", fc.max_heat},
              {"fuel_price_per_kwh", fc.fuel_price},
              {"fuel_emission_t_per_kwh", fc.fuel_emission},
              {"max_units", fc.max_units}};
    if (!fc.assumed.empty()) f["assumed"] = fc.assumed;
    fcs.push_back(std::move(f));
  }
  doc["fuel_cells"] = std::move(fcs);
  doc["bess"] = {{"invest_cost", c.bess.invest_cost},   {"rate_fraction", c.bess.rate_fraction},
                 {"eta_ch", c.bess.eta_ch},             {"eta_dis", c.bess.eta_dis},
                 {"soc_min", c.bess.soc_min},           {"soc_max", c.bess.soc_max},
                 {"lifetime_cycles", c.bess.lifetime_cycles},
                 {"max_capacity_kwh", c.bess.max_capacity}};
  doc["tess"] = {{"capacity_kwh", c.tess.capacity},
                 {"rate_fraction", c.tess.rate_fraction},
                 {"eta_ch", c.tess.eta_ch},
                 {"eta_dis", c.tess.eta_dis}};
  doc["ev"] = {{"n_ev", c.ev.n_ev},
               {"capacity_kwh", c.ev.capacity},
               {"charger_kw", c.ev.charger_power},
               {"discharge_rate_fraction", c.ev.discharge_rate_fraction},
               {"eta_ch", c.ev.eta_ch},
               {"eta_dis", c.ev.eta_dis},
               {"soc_min", c.ev.soc_min},
               {"soc_max", c.ev.soc_max},
               {"target_departure_soc", c.ev.target_departure_soc}};
  return doc;
}

json to_json(const TariffSet& t) {
  json r = {{"elec_price", t.elec_price}, {"grid_emission", t.grid_emission},
            {"carbon_tax", t.carbon_tax}, {"soc_penalty", t.soc_penalty},
            {"grid_cap_kw", t.grid_cap},  {"pv_cap_kw", t.pv_cap}};
  if (!t.assumed.empty()) r["assumed"] = t.assumed;
  json doc;
  doc["tariffs"] = std::move(r);
  return doc;
}

json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t column = 0;
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const std::size_t line = line_of_offset(text, offset, &column);
    throw ParseError(source, line, column, "invalid JSON");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot open file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const std::filesystem::path& path) {
  return parse_json_text(read_text_file(path), path.string());
}

EquipmentCatalog read_catalog(const std::filesystem::path& path) {
  return catalog_from_json(read_json_file(path), path.string());
}

TariffSet read_tariffs(const std::filesystem::path& path) {
  return tariffs_from_json(read_json_file(path), path.string());
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

}  // namespace hubplan
