#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fracgs/nonlinearity.hpp"
#include "fracgs/solver.hpp"

namespace fracgs {

// Flat "key = value" configuration with dotted keys and '#' comments.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::istream& in, const std::string& source = "<config>");

/// "key=value"; the key must be known.
void apply_override(ConfigMap& config, const std::string& assignment);

/// Every recognised key with its default value.
const ConfigMap& config_defaults();

struct RunSettings {
  SolveConfig solve;
  std::uint64_t seed = 12345;
  bool sensitivity = true;
  int candidates = 20;

  double fiber_sigma_min = 1e-3;
  double fiber_sigma_max = 1e3;
  int fiber_points = 121;

  int mp_nodes = 25;
  int mp_sweeps = 0;
  double mp_endpoint_scale = 2.0;

  SampleBox hypothesis_box;

  ConfigMap resolved;  // defaults merged with the given keys, as used
};

/// Merges `given` over the defaults and validates everything. Unknown keys
/// and bad values throw Config errors whose message starts with the key.
RunSettings resolve_settings(const ConfigMap& given);

}  // namespace fracgs
