#pragma once

#include <string>
#include <string_view>

#include "qumpi/circuit.hpp"

namespace qumpi {

// Circuit configuration files are JSON objects:
//
//   {
//     "jpa1": {"gain_db": 7.73, "gamma": 0.0, "n_added": 0.238, "eta_in": 1.0},
//     "jpa2": {"gain_db": 7.73, "gamma": 1.5708},
//     "path_phase": 0.0,
//     "eta_hr1": 1.0, "eta_hr2": 1.0, "env_n": 0.0,
//     "input1": {"kind": "coherent", "alpha": 0.83, "theta": 2.0106},
//     "input2": {"kind": "thermal", "n": 0.5}
//   }
//
// jpa1/jpa2 with gain_db and gamma are required; everything else defaults to
// the lossless, noiseless, vacuum-input value. Unknown keys are rejected.

CircuitConfig parseCircuitConfig(std::string_view text);
std::string serializeCircuitConfig(const CircuitConfig& config);
CircuitConfig loadCircuitConfig(const std::string& path);

/// Stable 64-bit FNV-1a hash of the serialized config.
std::string configHash(const CircuitConfig& config);

}  // namespace qumpi
