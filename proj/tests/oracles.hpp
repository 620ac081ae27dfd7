#pragma once
// Test-side reference implementations. Nothing here calls into the library's
// formulas; states are assembled by hand so the library is checked against
// independent arithmetic.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qumpi/fock.hpp"
#include "qumpi/gaussian_state.hpp"

namespace oracle {

using qumpi::CMatrix;
using qumpi::Complex;
using qumpi::Matrix;
using qumpi::Vector;

inline Matrix omega(int modes) {
  Matrix w = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

inline Eigen::Matrix2d rot(double a) {
  Eigen::Matrix2d r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

// --- closed-form Gaussian states -------------------------------------------

inline qumpi::GaussianState thermal(double n) {
  return {Vector::Zero(2), (n + 0.5) * Matrix::Identity(2, 2)};
}

inline qumpi::GaussianState coherent(Complex alpha) {
  Vector d(2);
  d << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
  return {d, 0.5 * Matrix::Identity(2, 2)};
}

/// Vacuum squeezed along q (variance e^{-2r}/2) then rotated by phi.
inline qumpi::GaussianState squeezedVacuum(double r, double phi = 0.0) {
  Eigen::Matrix2d s = Eigen::Vector2d(std::exp(-2 * r), std::exp(2 * r)).asDiagonal();
  Matrix cov = 0.5 * rot(phi) * s * rot(phi).transpose();
  return {Vector::Zero(2), cov};
}

/// Two-mode squeezed vacuum with <a1 a2> = sinh r cosh r.
inline qumpi::GaussianState tmsv(double r) {
  const double c = std::cosh(2 * r) / 2, s = std::sinh(2 * r) / 2;
  Matrix cov(4, 4);
  cov << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
  return {Vector::Zero(4), cov};
}

inline qumpi::GaussianState product(const qumpi::GaussianState& a, const qumpi::GaussianState& b) {
  const int na = 2 * a.modes(), nb = 2 * b.modes();
  Vector d(na + nb);
  d << a.mean(), b.mean();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return {d, cov};
}

// --- QFI ---------------------------------------------------------------------

/// 4 Var(H) for H = xi^T G_A xi / 2 on a pure Gaussian state (Isserlis).
inline double pureStateQfi(const qumpi::GaussianState& s, int mode, const Eigen::Matrix2d& g) {
  const int n = 2 * s.modes();
  Matrix big = Matrix::Zero(n, n);
  big.block<2, 2>(2 * mode, 2 * mode) = g;
  const Matrix& sig = s.cov();
  const Matrix w = omega(s.modes());
  const double var = 0.5 * (big * sig * big * sig).trace() + 0.125 * (big * w * big * w).trace() +
                     s.mean().dot(big * sig * big * s.mean());
  return 4.0 * var;
}

// --- random generators ------------------------------------------------------

inline Matrix randomSymplectic(std::mt19937_64& rng, int modes, double max_r = 0.6, int layers = 3) {
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI), rr(0.0, max_r);
  Matrix s = Matrix::Identity(2 * modes, 2 * modes);
  for (int layer = 0; layer < layers; ++layer) {
    Matrix l = Matrix::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
      const double r = rr(rng);
      Eigen::Matrix2d sq = Eigen::Vector2d(std::exp(r), std::exp(-r)).asDiagonal();
      l.block<2, 2>(2 * k, 2 * k) = rot(ang(rng)) * sq * rot(ang(rng));
    }
    s = l * s;
    if (modes == 2) {  // beamsplitter of random angle mixes q1,q2 and p1,p2
      const double t = ang(rng);
      Matrix bs = Matrix::Identity(4, 4);
      bs(0, 0) = bs(1, 1) = bs(2, 2) = bs(3, 3) = std::cos(t);
      bs(0, 2) = bs(1, 3) = std::sin(t);
      bs(2, 0) = bs(3, 1) = -std::sin(t);
      s = bs * s;
    }
  }
  return s;
}

/// S diag(nu) S^T + random mean; nu drawn in [1/2, 1/2 + max_thermal].
inline qumpi::GaussianState randomState(std::mt19937_64& rng, int modes, double max_thermal = 0.5,
                                        double max_r = 0.6, double max_disp = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector nu(2 * modes);
  for (int k = 0; k < modes; ++k) nu(2 * k) = nu(2 * k + 1) = 0.5 + max_thermal * u(rng);
  const Matrix s = randomSymplectic(rng, modes, max_r);
  Vector d(2 * modes);
  for (int i = 0; i < 2 * modes; ++i) d(i) = max_disp * (2 * u(rng) - 1);
  return {d, s * nu.asDiagonal() * s.transpose()};
}

inline qumpi::GaussianState randomPureState(std::mt19937_64& rng, int modes, double max_r = 0.6,
                                            double max_disp = 1.0) {
  return randomState(rng, modes, 0.0, max_r, max_disp);
}

// --- dense Fock references ----------------------------------------------------

inline CMatrix annihilation(int cutoff) {
  CMatrix a = CMatrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Coherent ket from Poisson amplitudes (truncated, not renormalized).
inline Eigen::VectorXcd coherentKet(int cutoff, Complex alpha) {
  Eigen::VectorXcd v(cutoff);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < cutoff; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

inline CMatrix thermalRho(int cutoff, double nbar) {
  CMatrix rho = CMatrix::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) rho(n, n) = std::pow(nbar, n) / std::pow(1 + nbar, n + 1);
  return rho;
}

/// Dense matrix of one ShiftKraus operator.
inline CMatrix denseKraus(const qumpi::ShiftKraus& k, int cutoff) {
  CMatrix m = CMatrix::Zero(cutoff, cutoff);
  for (int n = 0; n < static_cast<int>(k.values.size()); ++n) {
    const int out = n + k.shift;
    if (out >= 0 && out < cutoff) m(out, n) = k.values[n];
  }
  return m;
}

/// sum_k (K_k (x) I) rho (K_k (x) I)^dag acting on `mode` of a 1- or 2-mode state.
inline CMatrix denseChannel(const CMatrix& rho, int modes, int cutoff, int mode,
                            const std::vector<qumpi::ShiftKraus>& kraus) {
  const CMatrix id = CMatrix::Identity(cutoff, cutoff);
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) {
    CMatrix kk = denseKraus(k, cutoff);
    // basis index n0 + cutoff * n1: mode 0 is the fast (right) factor
    if (modes == 2) kk = mode == 0 ? kron(id, kk) : kron(kk, id);
    out += kk * rho * kk.adjoint();
  }
  return out;
}

}  // namespace oracle
