#include "qumpi/circuit.hpp"

#include <cmath>

#include "qumpi/error.hpp"
#include "qumpi/symplectic.hpp"

namespace qumpi {

ModeSpec InputSpec::toModeSpec() const {
  switch (kind) {
    case Kind::Thermal: return ThermalMode{n_mean};
    case Kind::Coherent: return CoherentMode{std::polar(amplitude, theta)};
    case Kind::Vacuum: break;
  }
  return VacuumMode{};
}

namespace {

void checkTransmissivity(double eta, const std::string& field) {
  if (!(eta >= 0.0 && eta <= 1.0)) fail(ErrorCategory::InvalidArgument, field + ": transmissivity out of range");
}

void checkNonNegative(double value, const std::string& field) {
  if (!(value >= 0.0)) fail(ErrorCategory::InvalidArgument, field + ": must be non-negative");
}

void validateInput(const InputSpec& in, const std::string& where) {
  checkNonNegative(in.n_mean, where + ".n");
  checkNonNegative(in.amplitude, where + ".alpha");
}

}  // namespace

void validate(const JpaParams& params, const std::string& where) {
  checkNonNegative(params.gain_db, where + ".gain_db");
  checkNonNegative(params.n_added, where + ".n_added");
  checkTransmissivity(params.eta_in, where + ".eta_in");
}

void validate(const CircuitConfig& config) {
  validate(config.jpa1, "jpa1");
  validate(config.jpa2, "jpa2");
  checkTransmissivity(config.eta_hr1, "eta_hr1");
  checkTransmissivity(config.eta_hr2, "eta_hr2");
  checkNonNegative(config.env_n, "env_n");
  validateInput(config.input1, "input1");
  validateInput(config.input2, "input2");
}

namespace {

struct GaussianOp {
  const GaussianState& state;

  GaussianState operator()(const SqueezeOp& op) const {
    return applySymplectic(state, symplecticOf(Squeeze{op.r, op.gamma}), {op.mode});
  }
  GaussianState operator()(const RotateOp& op) const {
    return applySymplectic(state, symplecticOf(Rotation{op.phi}), {op.mode});
  }
  GaussianState operator()(const DisplaceOp& op) const { return displace(state, op.mode, op.alpha); }
  GaussianState operator()(const HybridOp& op) const {
    return applySymplectic(state, symplecticOf(HybridRing{}), {op.mode_a, op.mode_b});
  }
  GaussianState operator()(const LossOp& op) const { return applyLoss(state, op.mode, op.eta, op.n_env); }
  GaussianState operator()(const NoiseOp& op) const { return addNoise(state, op.mode, op.n_added); }
};

void appendJpa(std::vector<CircuitOp>& ops, int mode, const JpaParams& params, double env_n) {
  if (params.eta_in < 1.0) ops.emplace_back(LossOp{mode, params.eta_in, env_n});
  if (params.n_added > 0.0) ops.emplace_back(NoiseOp{mode, params.n_added});
  const double r = squeezeFromGainDb(params.gain_db);
  if (r > 0.0) ops.emplace_back(SqueezeOp{mode, r, params.gamma});
}

}  // namespace

GaussianState applyOp(const GaussianState& state, const CircuitOp& op) {
  return std::visit(GaussianOp{state}, op);
}

GaussianState runGaussian(const Netlist& netlist) {
  GaussianState state = makeState(netlist.inputs);
  for (const auto& op : netlist.ops) state = applyOp(state, op);
  return state;
}

GaussianState applyJpa(const GaussianState& state, int mode, const JpaParams& params, double env_n) {
  validate(params, "jpa");
  std::vector<CircuitOp> ops;
  appendJpa(ops, mode, params, env_n);
  GaussianState out = state;
  for (const auto& op : ops) out = applyOp(out, op);
  return out;
}

Netlist qumpiNetlist(const CircuitConfig& config) {
  validate(config);
  Netlist net;
  net.inputs = {config.input1.toModeSpec(), config.input2.toModeSpec()};
  auto& ops = net.ops;
  ops.emplace_back(HybridOp{0, 1});
  if (config.eta_hr1 < 1.0) {
    ops.emplace_back(LossOp{0, config.eta_hr1, config.env_n});
    ops.emplace_back(LossOp{1, config.eta_hr1, config.env_n});
  }
  if (config.path_phase != 0.0) ops.emplace_back(RotateOp{0, config.path_phase});
  appendJpa(ops, 0, config.jpa1, config.env_n);
  appendJpa(ops, 1, config.jpa2, config.env_n);
  ops.emplace_back(HybridOp{0, 1});
  if (config.eta_hr2 < 1.0) {
    ops.emplace_back(LossOp{0, config.eta_hr2, config.env_n});
    ops.emplace_back(LossOp{1, config.eta_hr2, config.env_n});
  }
  return net;
}

GaussianState runQumpi(const CircuitConfig& config) { return runGaussian(qumpiNetlist(config)); }

GaussianState mixerReference(double g_eff) {
  require(g_eff >= 1.0, "effective gain must be >= 1");
  const double c2 = g_eff;
  const double s2 = g_eff - 1.0;
  const double cs = std::sqrt(c2 * s2);
  // Quadratures: q_b1 = c q1 + s q2, p_b1 = c p1 - s p2 (and 1 <-> 2).
  Matrix cov = Matrix::Zero(4, 4);
  const double diag = 0.5 * (c2 + s2);
  cov.diagonal().setConstant(diag);
  cov(0, 2) = cov(2, 0) = cs;
  cov(1, 3) = cov(3, 1) = -cs;
  return GaussianState(Vector::Zero(4), cov);
}

double effectiveGain(double r) {
  const double c = std::cosh(r);
  return c * c;
}

}  // namespace qumpi
