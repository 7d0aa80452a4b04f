#pragma once

#include <cstdint>
#include <string>

#include "hirefire/params.hpp"
#include "hirefire/sim.hpp"

namespace hirefire {

enum class ExtensionKind { None, FiringCost, TypeUncertainty, Interview };

/// Resolved run configuration for the CLI; precedence is
/// command line > config file > the defaults below (the Figure-style
/// benchmark parameter set).
struct RunConfig {
  // game
  double mu0 = 1.4, mu1 = 1.7, sigma = 1.0, p = 0.5, r = 0.05, c0 = 1.2, c1 = 1.5;
  // extension (exactly one variant; the scalars below are read per kind)
  ExtensionKind extension = ExtensionKind::None;
  double epsilon = 0.5;  ///< firing cost
  double p1 = 0.5;       ///< P(strong belief), type-uncertainty extension
  double q = 0.9;        ///< extension-specific conditional probability
  // sim
  double dt = 1e-3;
  double horizon = 200.0;
  std::uint64_t seed = 0;
  bool seed_set = false;  ///< simulate/verify require an explicit seed
  std::size_t paths = 100000;
  Scheme scheme = Scheme::EulerOnPi;
  // output
  std::string out_dir;             ///< empty: stdout only
  std::string format = "json";     ///< json | csv (summary format)
};

/// Parses a JSON config file over the defaults. Unknown keys are rejected
/// (ConfigViolation) so typos cannot silently fall back to defaults.
RunConfig load_config_file(const std::string& path);

/// Same, from an in-memory JSON document (used by tests and round-trips).
RunConfig parse_config_json(const std::string& text);

/// Validates and extracts the game parameters.
GameParams game_params(const RunConfig& cfg);

SimConfig sim_config(const RunConfig& cfg);

class JsonWriter;

/// Emits the resolved config as a JSON object value into w (a key must
/// already be pending). Reports embed this so any report re-runs from its
/// own "config" member.
void write_config(JsonWriter& w, const RunConfig& cfg);

/// Standalone serialization; parses back via parse_config_json to an
/// identical configuration.
std::string config_to_json(const RunConfig& cfg);

const char* extension_name(ExtensionKind kind);
const char* scheme_name(Scheme scheme);

}  // namespace hirefire
