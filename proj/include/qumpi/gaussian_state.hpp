#pragma once

#include <variant>
#include <vector>

#include "qumpi/linalg.hpp"

namespace qumpi {

// Conventions used throughout the library:
//   hbar = 1, quadratures q = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2),
//   ordering (q1,p1,...,qn,pn), vacuum covariance I/2.

/// Mean vector and symmetrized covariance matrix of an n-mode Gaussian state.
/// Construction validates symmetry and the uncertainty principle, so every
/// GaussianState value is physical.
class GaussianState {
 public:
  GaussianState(Vector mean, Matrix cov);

  static GaussianState vacuum(int modes);

  int modes() const { return static_cast<int>(mean_.size()) / 2; }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

  /// 2x2 covariance block of one mode.
  Matrix2 localCov(int mode) const { return cov_.block<2, 2>(2 * mode, 2 * mode); }

  /// Purity 2^{-n} / sqrt(det cov).
  double purity() const;

 private:
  Vector mean_;
  Matrix cov_;
};

struct VacuumMode {};
struct ThermalMode {
  double n_mean = 0.0;
};
struct CoherentMode {
  Complex alpha;
};
using ModeSpec = std::variant<VacuumMode, ThermalMode, CoherentMode>;

/// Product state with one factor per entry of `spec`.
GaussianState makeState(const std::vector<ModeSpec>& spec);

/// S_embed d, S_embed cov S_embed^T with `s` acting on `modes`.
GaussianState applySymplectic(const GaussianState& state, const Matrix& s, const std::vector<int>& modes);

/// Thermal attenuator on one mode: transmissivity `eta`, environment occupation `n_env`.
GaussianState applyLoss(const GaussianState& state, int mode, double eta, double n_env);

/// Classical additive Gaussian noise: cov block += n_added * I.
GaussianState addNoise(const GaussianState& state, int mode, double n_added);

GaussianState displace(const GaussianState& state, int mode, Complex alpha);

/// <a^dag a> of one mode.
double photonNumber(const GaussianState& state, int mode);

/// Reduced state on `modes` (in the given order).
GaussianState marginalOf(const GaussianState& state, const std::vector<int>& modes);

/// Same covariance, zero mean.
GaussianState withoutDisplacement(const GaussianState& state);

}  // namespace qumpi
