#include "qumpi/gaussian_state.hpp"

#include <cmath>
#include <set>
#include <string>

#include "qumpi/error.hpp"

namespace qumpi {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kHeisenbergTol = 1e-10;

void checkMode(const GaussianState& state, int mode) {
  require(mode >= 0 && mode < state.modes(),
          "mode index " + std::to_string(mode) + " out of range for " + std::to_string(state.modes()) +
              "-mode state");
}

}  // namespace

GaussianState::GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  require(mean_.size() > 0 && mean_.size() % 2 == 0, "mean vector must have even, nonzero length");
  require(cov_.rows() == mean_.size() && cov_.cols() == mean_.size(), "covariance shape does not match mean");
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    fail(ErrorCategory::Unphysical, "covariance matrix is not symmetric");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose());
  if (heisenbergMinEigenvalue(cov_) < -kHeisenbergTol * scale) {
    fail(ErrorCategory::Unphysical, "covariance matrix violates the uncertainty principle");
  }
}

GaussianState GaussianState::vacuum(int modes) {
  require(modes >= 1, "state needs at least one mode");
  return GaussianState(Vector::Zero(2 * modes), 0.5 * Matrix::Identity(2 * modes, 2 * modes));
}

double GaussianState::purity() const {
  return std::pow(2.0, -modes()) / std::sqrt(cov_.determinant());
}

GaussianState makeState(const std::vector<ModeSpec>& spec) {
  require(!spec.empty(), "state needs at least one mode");
  const int n = static_cast<int>(spec.size());
  Vector d = Vector::Zero(2 * n);
  Matrix cov = 0.5 * Matrix::Identity(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    if (const auto* th = std::get_if<ThermalMode>(&spec[k])) {
      require(th->n_mean >= 0.0, "thermal occupation must be non-negative");
      cov.block<2, 2>(2 * k, 2 * k) = (th->n_mean + 0.5) * Matrix2::Identity();
    } else if (const auto* coh = std::get_if<CoherentMode>(&spec[k])) {
      d(2 * k) = std::sqrt(2.0) * coh->alpha.real();
      d(2 * k + 1) = std::sqrt(2.0) * coh->alpha.imag();
    }
  }
  return GaussianState(d, cov);
}

GaussianState applySymplectic(const GaussianState& state, const Matrix& s, const std::vector<int>& modes) {
  require(!modes.empty(), "symplectic map needs at least one target mode");
  std::set<int> seen;
  for (int m : modes) {
    checkMode(state, m);
    require(seen.insert(m).second, "target modes must be distinct");
  }
  if (symplecticDefect(s) > 1e-10) fail(ErrorCategory::InvalidArgument, "matrix is not symplectic");
  Matrix full = embed(s, modes, state.modes());
  return GaussianState(full * state.mean(), full * state.cov() * full.transpose());
}

GaussianState applyLoss(const GaussianState& state, int mode, double eta, double n_env) {
  checkMode(state, mode);
  require(eta >= 0.0 && eta <= 1.0, "transmissivity out of range");
  require(n_env >= 0.0, "environment occupation must be non-negative");
  const double t = std::sqrt(eta);
  Vector x = Vector::Ones(2 * state.modes());
  x(2 * mode) = x(2 * mode + 1) = t;
  Vector d = x.cwiseProduct(state.mean());
  Matrix cov = x.asDiagonal() * state.cov() * x.asDiagonal();
  cov.block<2, 2>(2 * mode, 2 * mode) += (1.0 - eta) * (n_env + 0.5) * Matrix2::Identity();
  return GaussianState(d, cov);
}

GaussianState addNoise(const GaussianState& state, int mode, double n_added) {
  checkMode(state, mode);
  require(n_added >= 0.0, "added noise must be non-negative");
  Matrix cov = state.cov();
  cov.block<2, 2>(2 * mode, 2 * mode) += n_added * Matrix2::Identity();
  return GaussianState(state.mean(), cov);
}

GaussianState displace(const GaussianState& state, int mode, Complex alpha) {
  checkMode(state, mode);
  Vector d = state.mean();
  d(2 * mode) += std::sqrt(2.0) * alpha.real();
  d(2 * mode + 1) += std::sqrt(2.0) * alpha.imag();
  return GaussianState(d, state.cov());
}

double photonNumber(const GaussianState& state, int mode) {
  checkMode(state, mode);
  const int q = 2 * mode;
  const int p = q + 1;
  const Vector& d = state.mean();
  const Matrix& s = state.cov();
  return 0.5 * (s(q, q) + s(p, p) - 1.0) + 0.5 * (d(q) * d(q) + d(p) * d(p));
}

GaussianState marginalOf(const GaussianState& state, const std::vector<int>& modes) {
  require(!modes.empty(), "marginal needs a non-empty mode subset");
  const int k = static_cast<int>(modes.size());
  Vector d(2 * k);
  Matrix cov(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    checkMode(state, modes[a]);
    d.segment<2>(2 * a) = state.mean().segment<2>(2 * modes[a]);
    for (int b = 0; b < k; ++b) {
      cov.block<2, 2>(2 * a, 2 * b) = state.cov().block<2, 2>(2 * modes[a], 2 * modes[b]);
    }
  }
  return GaussianState(d, cov);
}

GaussianState withoutDisplacement(const GaussianState& state) {
  return GaussianState(Vector::Zero(state.mean().size()), state.cov());
}

}  // namespace qumpi
