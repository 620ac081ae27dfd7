#pragma once

#include <utility>
#include <vector>

#include "qumpi/gaussian_state.hpp"

namespace qumpi {

/// Mean photon number below which g2 ratios are reported as undefined.
inline constexpr double kMinPhotonNumber = 1e-9;

/// Ladder-operator moments of one mode, split into mean and fluctuation parts.
struct ModeMoments {
  Complex alpha;    ///< <a>
  double n_fluct;   ///< <da^dag da>
  Complex m_fluct;  ///< <da da>
};

struct PairMoments {
  ModeMoments first;
  ModeMoments second;
  Complex c_nd;  ///< <da_1^dag da_2>
  Complex c_dd;  ///< <da_1 da_2>
};

ModeMoments modeMoments(const GaussianState& state, int mode);
PairMoments modeMoments(const GaussianState& state, int mode_a, int mode_b);

/// <a^dag a^dag a a> of a Gaussian mode.
double factorialMoment2(const ModeMoments& m);

/// <a_1^dag a_1 a_2^dag a_2> of a Gaussian pair (Isserlis expansion).
double numberCorrelation(const PairMoments& m);

double g2Auto(const GaussianState& state, int mode);

/// Intensity cross-correlation of the two output modes (0, 1 by default).
double g2Cross(const GaussianState& state, int mode_a = 0, int mode_b = 1);

/// Product over both modes of (squashed variance / amplified variance).
double balancing(const GaussianState& state);

/// Quadratic generator H = xi_A^T G xi_A / 2 acting on one mode, det G = 1.
struct PhaseGenerator {
  int mode = 0;
  Matrix2 g = Matrix2::Identity();

  /// R(psi) diag(w, 1/w) R(psi)^T.
  static PhaseGenerator harmonic(int mode, double w, double psi);
};

/// Symplectic eigenvalue shift applied before inverting near-pure states.
inline constexpr double kPurityRegularization = 1e-9;

/// Quantum Fisher information of the family exp(theta Omega_A G_A) acting on the state.
double gaussianQFI(const GaussianState& state, const PhaseGenerator& generator);

/// The covariance part of the QFI is a quadratic form in (G11, G12, G22); it is
/// assembled once per state so generator scans cost O(1) per point.
class QfiForm {
 public:
  QfiForm(const GaussianState& state, int mode);

  double covariancePart(const Matrix2& g) const;
  double displacementPart(const Matrix2& g) const;

 private:
  Eigen::Matrix3d quad_;
  Eigen::Vector2d mean_;
  Matrix2 disp_metric_;  // (Omega^T V^{-1} Omega) restricted to the probe mode, times 2
};

enum class Execution { Serial, Parallel };

struct IpOptions {
  double w_max = 20.0;
  int grid_w = 64;
  int grid_psi = 64;
  double rel_tol = 1e-4;
  bool phase_only = false;  ///< restrict to w = 1 (pure phase rotations)
  Execution execution = Execution::Parallel;
};

struct IpResult {
  double value = 0.0;  ///< interferometric power
  double w = 1.0;      ///< minimizing generator spectrum ratio
  double psi = 0.0;    ///< minimizing generator orientation
};

/// Covariance-part QFI on the (w, psi) search grid, row-major in w. The serial
/// and OpenMP paths produce identical vectors.
std::vector<double> ipGridValues(const QfiForm& form, const IpOptions& options, Execution execution);

/// Worst-case QFI / 4 over local harmonic-spectrum Gaussian generators on
/// `probe_mode`. Linear generator terms are minimized analytically, so the
/// result depends on the covariance matrix only.
IpResult interferometricPower(const GaussianState& state, int probe_mode = 0, const IpOptions& options = {});

struct QuantumLimits {
  double sql;
  double hl;
};

/// Standard quantum limit N and Heisenberg limit N(N+1).
QuantumLimits sqlHlBounds(double n_probe);

}  // namespace qumpi
