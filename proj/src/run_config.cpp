#include "hirefire/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hirefire/errors.hpp"
#include "hirefire/json_writer.hpp"

namespace hirefire {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& what) {
  throw ConfigViolation("config: " + what);
}

void reject_unknown_keys(const json& obj, const char* section,
                         std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) bad_config(std::string("unknown key \"") + it.key() + "\" in " + section);
  }
}

double read_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) bad_config(std::string(key) + " must be a number");
  return obj[key].get<double>();
}

}  // namespace

const char* extension_name(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::None: return "none";
    case ExtensionKind::FiringCost: return "firing_cost";
    case ExtensionKind::TypeUncertainty: return "type_uncertainty";
    case ExtensionKind::Interview: return "interview";
  }
  return "none";
}

const char* scheme_name(Scheme scheme) {
  return scheme == Scheme::EulerOnPi ? "euler_pi" : "exact_filter";
}

RunConfig parse_config_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad_config(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad_config("top level must be an object");
  reject_unknown_keys(doc, "config", {"game", "extension", "sim", "output"});

  RunConfig cfg;
  if (doc.contains("game")) {
    const json& g = doc["game"];
    reject_unknown_keys(g, "game", {"mu0", "mu1", "sigma", "p", "r", "c0", "c1"});
    cfg.mu0 = read_number(g, "mu0", cfg.mu0);
    cfg.mu1 = read_number(g, "mu1", cfg.mu1);
    cfg.sigma = read_number(g, "sigma", cfg.sigma);
    cfg.p = read_number(g, "p", cfg.p);
    cfg.r = read_number(g, "r", cfg.r);
    cfg.c0 = read_number(g, "c0", cfg.c0);
    cfg.c1 = read_number(g, "c1", cfg.c1);
  }
  if (doc.contains("extension")) {
    const json& e = doc["extension"];
    reject_unknown_keys(e, "extension", {"type", "epsilon", "p1", "q"});
    const std::string type = e.contains("type") ? e["type"].get<std::string>() : "none";
    if (type == "none") {
      cfg.extension = ExtensionKind::None;
    } else if (type == "firing_cost") {
      cfg.extension = ExtensionKind::FiringCost;
    } else if (type == "type_uncertainty") {
      cfg.extension = ExtensionKind::TypeUncertainty;
    } else if (type == "interview") {
      cfg.extension = ExtensionKind::Interview;
    } else {
      bad_config("extension.type must be none | firing_cost | type_uncertainty | interview");
    }
    cfg.epsilon = read_number(e, "epsilon", cfg.epsilon);
    cfg.p1 = read_number(e, "p1", cfg.p1);
    cfg.q = read_number(e, "q", cfg.q);
  }
  if (doc.contains("sim")) {
    const json& s = doc["sim"];
    reject_unknown_keys(s, "sim", {"dt", "horizon", "seed", "paths", "scheme"});
    cfg.dt = read_number(s, "dt", cfg.dt);
    cfg.horizon = read_number(s, "horizon", cfg.horizon);
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) bad_config("sim.seed must be a non-negative integer");
      cfg.seed = s["seed"].get<std::uint64_t>();
      cfg.seed_set = true;
    }
    if (s.contains("paths")) {
      if (!s["paths"].is_number_unsigned()) bad_config("sim.paths must be a non-negative integer");
      cfg.paths = s["paths"].get<std::size_t>();
    }
    if (s.contains("scheme")) {
      const std::string scheme = s["scheme"].get<std::string>();
      if (scheme == "euler_pi") {
        cfg.scheme = Scheme::EulerOnPi;
      } else if (scheme == "exact_filter") {
        cfg.scheme = Scheme::ExactFilterFromX;
      } else {
        bad_config("sim.scheme must be euler_pi | exact_filter");
      }
    }
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    reject_unknown_keys(o, "output", {"dir", "format"});
    if (o.contains("dir")) cfg.out_dir = o["dir"].get<std::string>();
    if (o.contains("format")) {
      cfg.format = o["format"].get<std::string>();
      if (cfg.format != "json" && cfg.format != "csv")
        bad_config("output.format must be json | csv");
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad_config("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

GameParams game_params(const RunConfig& cfg) {
  return validate_params(cfg.mu0, cfg.mu1, cfg.sigma, cfg.p, cfg.r, cfg.c0, cfg.c1);
}

SimConfig sim_config(const RunConfig& cfg) {
  SimConfig sim;
  sim.dt = cfg.dt;
  sim.horizon = cfg.horizon;
  sim.seed = cfg.seed;
  sim.scheme = cfg.scheme;
  validate(sim);
  return sim;
}

void write_config(JsonWriter& w, const RunConfig& cfg) {
  w.begin_object();
  w.key("game").begin_object();
  w.field("mu0", cfg.mu0)
      .field("mu1", cfg.mu1)
      .field("sigma", cfg.sigma)
      .field("p", cfg.p)
      .field("r", cfg.r)
      .field("c0", cfg.c0)
      .field("c1", cfg.c1);
  w.end_object();
  w.key("extension").begin_object();
  w.field("type", extension_name(cfg.extension));
  switch (cfg.extension) {
    case ExtensionKind::FiringCost: w.field("epsilon", cfg.epsilon); break;
    case ExtensionKind::TypeUncertainty:
      w.field("p1", cfg.p1).field("q", cfg.q);
      break;
    case ExtensionKind::Interview: w.field("q", cfg.q); break;
    case ExtensionKind::None: break;
  }
  w.end_object();
  w.key("sim").begin_object();
  w.field("dt", cfg.dt).field("horizon", cfg.horizon);
  if (cfg.seed_set) w.field("seed", static_cast<unsigned long long>(cfg.seed));
  w.field("paths", cfg.paths).field("scheme", scheme_name(cfg.scheme));
  w.end_object();
  w.key("output").begin_object();
  w.field("dir", cfg.out_dir).field("format", cfg.format);
  w.end_object();
  w.end_object();
}

std::string config_to_json(const RunConfig& cfg) {
  JsonWriter w;
  write_config(w, cfg);
  return w.str();
}

}  // namespace hirefire
