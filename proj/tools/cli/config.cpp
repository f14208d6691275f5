#include "config.hpp"

#include <set>
#include <sstream>

#include "hubplan/core/error.hpp"
#include "hubplan/core/io.hpp"

namespace hubplan::cli {

namespace fs = std::filesystem;

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) throw InvalidParameter(where + ": unknown key \"" + key + "\"");
  }
}

const json& object_at(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_object()) throw InvalidParameter(std::string("config: \"") + key + "\" must be an object");
  return v;
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidParameter(where + ": \"" + key + "\" has the wrong type");
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  if (p.empty() || p.is_absolute()) return p;
  return base / p;
}

}  // namespace

RunConfig config_from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw InvalidParameter("config: top level must be an object");
  reject_unknown(doc,
                 {"catalog", "tariffs", "history", "scenarios", "out", "use_existing_scenarios", "scengen", "model",
                  "solver", "carbon_tax", "extreme", "export_mps"},
                 "config");
  RunConfig c;
  auto path = [&](const char* key, fs::path& dst) {
    if (doc.contains(key)) dst = resolve(get<std::string>(doc, key, "config"), base_dir);
  };
  path("catalog", c.catalog);
  path("tariffs", c.tariffs);
  path("history", c.history);
  path("scenarios", c.scenarios);
  path("out", c.out);
  if (doc.contains("use_existing_scenarios")) {
    c.use_existing_scenarios = get<bool>(doc, "use_existing_scenarios", "config");
  }

  if (doc.contains("scengen")) {
    const json& s = object_at(doc, "scengen");
    reject_unknown(s, {"n_scenarios", "seed", "tol", "max_iters", "correlation"}, "config.scengen");
    if (s.contains("n_scenarios")) c.scengen.n_scenarios = get<std::size_t>(s, "n_scenarios", "config.scengen");
    if (s.contains("seed")) c.scengen.seed = get<std::uint64_t>(s, "seed", "config.scengen");
    if (s.contains("tol")) c.scengen.hmm.tol = get<double>(s, "tol", "config.scengen");
    if (s.contains("max_iters")) c.scengen.hmm.max_iters = get<int>(s, "max_iters", "config.scengen");
    if (s.contains("correlation")) {
      const auto v = get<std::string>(s, "correlation", "config.scengen");
      if (v == "block") {
        c.scengen.structure = scengen::CorrelationStructure::Block;
      } else if (v == "full") {
        c.scengen.structure = scengen::CorrelationStructure::Full;
      } else {
        throw InvalidParameter("config.scengen: correlation must be \"block\" or \"full\"");
      }
    }
  }

  if (doc.contains("model")) {
    const json& m = object_at(doc, "model");
    reject_unknown(m, {"zeta", "mode", "big_m", "penalty_basis"}, "config.model");
    if (m.contains("zeta")) c.model.zeta = get<double>(m, "zeta", "config.model");
    if (m.contains("mode")) {
      const auto mode = model::parse_exclusivity_mode(get<std::string>(m, "mode", "config.model"));
      if (!mode) throw InvalidParameter("config.model: mode must be \"binary\" or \"relaxed\"");
      c.model.mode = *mode;
    }
    if (m.contains("big_m")) c.model.global_big_m = get<double>(m, "big_m", "config.model");
    if (m.contains("penalty_basis")) {
      const auto v = get<std::string>(m, "penalty_basis", "config.model");
      if (v == "kwh") {
        c.model.penalty_basis = model::PenaltyBasis::Kwh;
      } else if (v == "soc") {
        c.model.penalty_basis = model::PenaltyBasis::Soc;
      } else {
        throw InvalidParameter("config.model: penalty_basis must be \"kwh\" or \"soc\"");
      }
    }
  }

  if (doc.contains("solver")) {
    const json& s = object_at(doc, "solver");
    reject_unknown(s, {"rel_gap", "abs_gap", "max_nodes", "time_limit_s", "jobs"}, "config.solver");
    if (s.contains("rel_gap")) c.solver.rel_gap = get<double>(s, "rel_gap", "config.solver");
    if (s.contains("abs_gap")) c.solver.abs_gap = get<double>(s, "abs_gap", "config.solver");
    if (s.contains("max_nodes")) c.solver.max_nodes = get<long>(s, "max_nodes", "config.solver");
    if (s.contains("time_limit_s")) c.solver.time_limit_s = get<double>(s, "time_limit_s", "config.solver");
    if (s.contains("jobs")) c.jobs = get<int>(s, "jobs", "config.solver");
  }

  if (doc.contains("carbon_tax")) {
    const json& t = doc.at("carbon_tax");
    if (t.is_number()) {
      c.carbon_tax = {t.get<double>()};
    } else {
      c.carbon_tax = get<std::vector<double>>(doc, "carbon_tax", "config");
    }
  }
  if (doc.contains("extreme")) {
    const auto v = get<std::string>(doc, "extreme", "config");
    if (v == "elec") {
      c.extreme = analysis::ExtremeKind::Elec;
    } else if (v == "heat") {
      c.extreme = analysis::ExtremeKind::Heat;
    } else {
      throw InvalidParameter("config: extreme must be \"elec\" or \"heat\"");
    }
  }
  if (doc.contains("export_mps")) c.export_mps = get<bool>(doc, "export_mps", "config");
  return c;
}

RunConfig read_config(const fs::path& path) {
  require_path(path, "config file");
  return config_from_json(read_json_file(path), path.parent_path());
}

nlohmann::json to_json(const RunConfig& c) {
  json doc;
  doc["catalog"] = c.catalog.string();
  if (!c.tariffs.empty()) doc["tariffs"] = c.tariffs.string();
  if (!c.history.empty()) doc["history"] = c.history.string();
  if (!c.scenarios.empty()) doc["scenarios"] = c.scenarios.string();
  doc["out"] = c.out.string();
  doc["use_existing_scenarios"] = c.use_existing_scenarios;
  doc["scengen"] = {{"n_scenarios", c.scengen.n_scenarios},
                    {"seed", c.scengen.seed},
                    {"tol", c.scengen.hmm.tol},
                    {"max_iters", c.scengen.hmm.max_iters},
                    {"correlation", c.scengen.structure == scengen::CorrelationStructure::Block ? "block" : "full"}};
  doc["model"] = {{"zeta", c.model.zeta},
                  {"mode", std::string(model::to_string(c.model.mode))},
                  {"penalty_basis", c.model.penalty_basis == model::PenaltyBasis::Kwh ? "kwh" : "soc"}};
  if (c.model.global_big_m) doc["model"]["big_m"] = *c.model.global_big_m;
  doc["solver"] = {{"rel_gap", c.solver.rel_gap}, {"abs_gap", c.solver.abs_gap},
                   {"max_nodes", c.solver.max_nodes}, {"jobs", c.jobs}};
  if (c.solver.time_limit_s < milp::kInf) doc["solver"]["time_limit_s"] = c.solver.time_limit_s;
  if (!c.carbon_tax.empty()) doc["carbon_tax"] = c.carbon_tax;
  if (c.extreme) doc["extreme"] = *c.extreme == analysis::ExtremeKind::Elec ? "elec" : "heat";
  doc["export_mps"] = c.export_mps;
  return doc;
}

std::vector<double> parse_tax_list(const std::string& text) {
  std::string s = text;
  for (char& ch : s) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw InvalidParameter("carbon tax list: \"" + tok + "\" is not a number");
    if (!(v >= 0.0)) throw InvalidParameter("carbon tax list: values must be nonnegative");
    out.push_back(v);
  }
  return out;
}

void require_path(const fs::path& path, const char* what) {
  if (path.empty()) throw InvalidParameter(std::string("no ") + what + " given");
  if (!fs::exists(path)) throw InvalidParameter(std::string(what) + " not found: " + path.string());
}

}  // namespace hubplan::cli
