#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qumpi/gaussian_state.hpp"

namespace qumpi {

/// One phase-sensitive JPA together with the lossy segment in front of it.
struct JpaParams {
  double gain_db = 0.0;   ///< power gain G in dB, G = e^{2r}
  double gamma = 0.0;     ///< amplification angle, radians
  double n_added = 0.0;   ///< input-referred added noise photons
  double eta_in = 1.0;    ///< circulator/cable transmissivity before the JPA

  bool operator==(const JpaParams&) const = default;
};

struct InputSpec {
  enum class Kind { Vacuum, Thermal, Coherent };
  Kind kind = Kind::Vacuum;
  double n_mean = 0.0;     ///< thermal occupation
  double amplitude = 0.0;  ///< |alpha|
  double theta = 0.0;      ///< displacement angle

  static InputSpec vacuum() { return {}; }
  static InputSpec thermal(double n) { return {Kind::Thermal, n, 0.0, 0.0}; }
  static InputSpec coherent(double amplitude, double theta) { return {Kind::Coherent, 0.0, amplitude, theta}; }

  ModeSpec toModeSpec() const;
  bool operator==(const InputSpec&) const = default;
};

/// The interferometer: HR -> (path phase on arm 1) -> JPA per arm -> HR.
struct CircuitConfig {
  JpaParams jpa1;
  JpaParams jpa2;
  double path_phase = 0.0;
  double eta_hr1 = 1.0;
  double eta_hr2 = 1.0;
  InputSpec input1;
  InputSpec input2;
  double env_n = 0.0;

  bool operator==(const CircuitConfig&) const = default;
};

void validate(const JpaParams& params, const std::string& where);
void validate(const CircuitConfig& config);

// Elementary operations shared by the Gaussian simulator and the Fock oracle.
struct SqueezeOp {
  int mode;
  double r;
  double gamma;
};
struct RotateOp {
  int mode;
  double phi;
};
struct DisplaceOp {
  int mode;
  Complex alpha;
};
struct HybridOp {
  int mode_a;
  int mode_b;
};
struct LossOp {
  int mode;
  double eta;
  double n_env;
};
struct NoiseOp {
  int mode;
  double n_added;
};
using CircuitOp = std::variant<SqueezeOp, RotateOp, DisplaceOp, HybridOp, LossOp, NoiseOp>;

/// Input product state followed by a sequence of operations.
struct Netlist {
  std::vector<ModeSpec> inputs;
  std::vector<CircuitOp> ops;
};

GaussianState applyOp(const GaussianState& state, const CircuitOp& op);
GaussianState runGaussian(const Netlist& netlist);

/// Loss -> input-referred isotropic noise -> squeeze(r = ln G / 2, gamma).
GaussianState applyJpa(const GaussianState& state, int mode, const JpaParams& params, double env_n = 0.0);

/// The interferometer as a netlist (mode 0 = In1/arm 1/Out1, mode 1 = In2/arm 2/Out2).
Netlist qumpiNetlist(const CircuitConfig& config);

/// Two-mode output state (Out1, Out2).
GaussianState runQumpi(const CircuitConfig& config);

/// Vacuum-input output of the ideal two-mode mixer
/// b1 = sqrt(G) a1 + sqrt(G-1) a2^dag, b2 = sqrt(G) a2 + sqrt(G-1) a1^dag.
GaussianState mixerReference(double g_eff);

/// Effective mixer gain cosh^2 r of the equal-gain orthogonal-angle operating point.
double effectiveGain(double r);

}  // namespace qumpi
