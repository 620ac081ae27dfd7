#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qumpi {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2d;

inline constexpr double kPi = 3.14159265358979323846;

/// Standard symplectic form for n modes in (q1,p1,...,qn,pn) ordering:
/// block diagonal with [[0,1],[-1,0]] per mode.
Matrix symplecticForm(int modes);

/// 2x2 quadrature rotation by `angle`; rotates (q + i p) by +angle.
Matrix2 rotation2(double angle);

/// Symplectic eigenvalues of a 2n x 2n covariance matrix, ascending.
Vector symplecticEigenvalues(const Matrix& cov);

struct Williamson {
  Matrix symplectic;  ///< S with cov = S * diag(nu_1,nu_1,...,nu_n,nu_n) * S^T
  Vector nu;          ///< symplectic eigenvalues, one per mode
};

/// Williamson normal form of a positive definite covariance matrix.
Williamson williamson(const Matrix& cov);

/// Smallest eigenvalue of the Hermitian matrix cov + (i/2) Omega.
double heisenbergMinEigenvalue(const Matrix& cov);

/// Principal square root of a symmetric positive semidefinite matrix.
Matrix sqrtSymmetric(const Matrix& m);

/// Largest entry of |S Omega S^T - Omega|.
double symplecticDefect(const Matrix& s);

/// Embed a k-mode quadrature map into an n-mode identity on `modes`.
Matrix embed(const Matrix& local, const std::vector<int>& modes, int total_modes);

/// `count` points from `start` to `stop` inclusive.
std::vector<double> linspace(double start, double stop, int count);

}  // namespace qumpi
