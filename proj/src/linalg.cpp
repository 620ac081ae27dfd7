#include "qumpi/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qumpi/error.hpp"

namespace qumpi {

std::string_view categoryName(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::InvalidArgument: return "invalid_argument";
    case ErrorCategory::Unphysical: return "unphysical";
    case ErrorCategory::UndefinedRatio: return "undefined_ratio";
    case ErrorCategory::Truncation: return "truncation";
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::NoCrossing: return "no_crossing";
  }
  return "unknown";
}

Matrix symplecticForm(int modes) {
  Matrix omega = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Matrix2 rotation2(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix2 r;
  r << c, -s, s, c;
  return r;
}

Matrix sqrtSymmetric(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  Vector roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

namespace {

// Hermitian eigenproblem of i * cov^{-1/2} Omega cov^{-1/2}; its positive
// eigenvalues are 1/nu_k.
struct NormalForm {
  Matrix inv_sqrt;
  Matrix sqrt;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig;
};

NormalForm normalForm(const Matrix& cov) {
  Eigen::SelfAdjointEigenSolver<Matrix> se(cov);
  if (se.eigenvalues().minCoeff() <= 0.0) {
    fail(ErrorCategory::Unphysical, "covariance matrix is not positive definite");
  }
  const Matrix& v = se.eigenvectors();
  Matrix sq = v * se.eigenvalues().cwiseSqrt().asDiagonal() * v.transpose();
  Matrix isq = v * se.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  const int n = static_cast<int>(cov.rows()) / 2;
  Matrix a = isq * symplecticForm(n) * isq;
  CMatrix ia = Complex(0.0, 1.0) * a.cast<Complex>();
  return NormalForm{isq, sq, Eigen::SelfAdjointEigenSolver<CMatrix>(ia)};
}

}  // namespace

Vector symplecticEigenvalues(const Matrix& cov) {
  const int n = static_cast<int>(cov.rows()) / 2;
  NormalForm nf = normalForm(cov);
  // Eigenvalues ascending: the upper n are the positive 1/nu_k.
  Vector nu(n);
  for (int k = 0; k < n; ++k) nu(k) = 1.0 / nf.eig.eigenvalues()(2 * n - 1 - k);
  std::sort(nu.data(), nu.data() + n);
  return nu;
}

Williamson williamson(const Matrix& cov) {
  const int n = static_cast<int>(cov.rows()) / 2;
  NormalForm nf = normalForm(cov);
  Matrix o(2 * n, 2 * n);
  Vector nu(n);
  for (int k = 0; k < n; ++k) {
    const int col = n + k;  // positive half of the spectrum
    const double b = nf.eig.eigenvalues()(col);
    Eigen::VectorXcd v = nf.eig.eigenvectors().col(col);
    Vector x = std::sqrt(2.0) * v.real();
    Vector y = std::sqrt(2.0) * v.imag();
    o.col(2 * k) = y;
    o.col(2 * k + 1) = x;
    nu(k) = 1.0 / b;
  }
  Vector d_inv_sqrt(2 * n);
  for (int k = 0; k < n; ++k) {
    d_inv_sqrt(2 * k) = d_inv_sqrt(2 * k + 1) = 1.0 / std::sqrt(nu(k));
  }
  Matrix s = nf.sqrt * o * d_inv_sqrt.asDiagonal();
  return Williamson{s, nu};
}

double heisenbergMinEigenvalue(const Matrix& cov) {
  const int n = static_cast<int>(cov.rows()) / 2;
  CMatrix h = cov.cast<Complex>() + Complex(0.0, 0.5) * symplecticForm(n).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double symplecticDefect(const Matrix& s) {
  const int n = static_cast<int>(s.rows()) / 2;
  Matrix omega = symplecticForm(n);
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

Matrix embed(const Matrix& local, const std::vector<int>& modes, int total_modes) {
  const int k = static_cast<int>(modes.size());
  require(local.rows() == 2 * k && local.cols() == 2 * k, "local map size does not match mode count");
  Matrix full = Matrix::Identity(2 * total_modes, 2 * total_modes);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      full.block<2, 2>(2 * modes[a], 2 * modes[b]) = local.block<2, 2>(2 * a, 2 * b);
    }
  }
  return full;
}

std::vector<double> linspace(double start, double stop, int count) {
  require(count >= 1, "linspace needs at least one point");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = start + step * i;
  out.back() = stop;
  return out;
}

}  // namespace qumpi
