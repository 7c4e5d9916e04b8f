#pragma once

// Reference computations that deliberately avoid the library's own code
// paths: plain Taylor exponentials, the Van Loan block form for the
// noise integral, a real embedding for Hermitian eigenvalues and direct
// matrix formulas for the generator partition.

#include "gaussdyn/phase_space.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace oracle {

using gaussdyn::Matrix;
using gaussdyn::Vector;

inline Matrix omega_interleaved(int n_modes) {
  Matrix w = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

/// Taylor series with scaling and squaring.
inline Matrix expm_taylor(const Matrix& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Matrix scaled = m / std::ldexp(1.0, squarings);
  Matrix term = Matrix::Identity(m.rows(), m.cols());
  Matrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / k;
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// phi1 by direct summation of t^{k+1} M^k / (k+1)!.
inline Matrix phi1_sum(const Matrix& m, double t, int terms = 200) {
  Matrix term = Matrix::Identity(m.rows(), m.cols()) * t;
  Matrix sum = term;
  for (int k = 1; k < terms; ++k) {
    term = (term * m) * (t / (k + 1));
    sum += term;
  }
  return sum;
}

/// R(t) = int_0^t exp(M s) C exp(M^T s) ds via exp([[M, C], [0, -M^T]] t).
inline Matrix van_loan_noise(const Matrix& m, const Matrix& c, double t) {
  const auto n = m.rows();
  Matrix h = Matrix::Zero(2 * n, 2 * n);
  h.topLeftCorner(n, n) = m;
  h.topRightCorner(n, n) = c;
  h.bottomRightCorner(n, n) = -m.transpose();
  const Matrix e = expm_taylor(h * t);
  return e.topRightCorner(n, n) * expm_taylor(m.transpose() * t);
}

/// Smallest eigenvalue of X + iY (Hermitian) from the real symmetric
/// embedding [[X, -Y], [Y, X]], whose spectrum is that of X + iY doubled.
inline double min_eig_hermitian(const Matrix& re, const Matrix& im) {
  const auto n = re.rows();
  Matrix big(2 * n, 2 * n);
  big << re, -im, im, re;
  Eigen::SelfAdjointEigenSolver<Matrix> es(big, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// min eig of cov - i Omega.
inline double min_eig_uncertainty(const Matrix& cov, const Matrix& omega) {
  return min_eig_hermitian(cov, -omega);
}

// --- partition by matrix formulas (interleaved ordering) -------------------

/// Part commuting with Omega: (M + Omega^T M Omega) / 2.
inline Matrix passive_part(const Matrix& m, const Matrix& omega) {
  return 0.5 * (m + omega.transpose() * m * omega);
}

inline Matrix single_mode_mask(const Matrix& m) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < m.rows(); k += 2) out.block(k, k, 2, 2) = m.block(k, k, 2, 2);
  return out;
}

struct Parts {
  Matrix a_sp, a_sa, a_ua, a_up, c_ua, c_up;
};

inline Parts partition(const Matrix& a, const Matrix& c) {
  const auto n = a.rows();
  const Matrix omega = omega_interleaved(static_cast<int>(n / 2));
  const Matrix s = 0.5 * (a + a.transpose());
  const Matrix k = 0.5 * (a - a.transpose());
  Parts p;
  p.a_sp = passive_part(s, omega);
  p.a_sa = s - p.a_sp;
  p.a_ua = passive_part(k, omega);
  p.a_up = k - p.a_ua;
  p.c_ua = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; j += 2) {
    const double mean = 0.5 * (c(j, j) + c(j + 1, j + 1));
    p.c_ua(j, j) = mean;
    p.c_ua(j + 1, j + 1) = mean;
  }
  p.c_up = c - p.c_ua;
  return p;
}

// --- random instances ------------------------------------------------------

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  Matrix matrix(Eigen::Index r, Eigen::Index c, double scale = 1.0) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = scale * uniform();
    }
    return m;
  }

  Vector vector(Eigen::Index n, double scale = 1.0) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * uniform();
    return v;
  }

  Matrix symmetric(Eigen::Index n, double scale = 1.0) {
    const Matrix m = matrix(n, n, scale);
    return 0.5 * (m + m.transpose());
  }

  Matrix psd(Eigen::Index n, double scale = 1.0) {
    const Matrix m = matrix(n, n, scale);
    return m * m.transpose() / static_cast<double>(n);
  }

  /// exp(Omega H) for random symmetric H; symplectic by construction.
  Matrix symplectic(int n_modes, double scale = 0.5) {
    const Matrix omega = omega_interleaved(n_modes);
    return expm_taylor(omega * symmetric(2 * n_modes, scale));
  }

  /// Random valid state: symplectic conjugation of a thermal diagonal.
  std::pair<Vector, Matrix> valid_state(int n_modes, double max_nu = 3.0) {
    Matrix d = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
      const double nu = uniform(1.0, max_nu);
      d(2 * k, 2 * k) = nu;
      d(2 * k + 1, 2 * k + 1) = nu;
    }
    const Matrix s = symplectic(n_modes);
    const Matrix cov = s * d * s.transpose();
    return {vector(2 * n_modes), 0.5 * (cov + cov.transpose())};
  }

  /// (A, C) with C - i Omega (A - A^T) Omega >= margin: the Hermitian term has
  /// spectral norm ||A - A^T||_2 because Omega is orthogonal.
  std::pair<Matrix, Matrix> cp_pair(int n_modes, double scale = 1.0, double margin = 1e-3) {
    const auto dim = 2 * n_modes;
    const Matrix a = matrix(dim, dim, scale);
    const Matrix k = a - a.transpose();
    const double spec = Eigen::JacobiSVD<Matrix>(k).singularValues()(0);
    const Matrix c = psd(dim, scale) + (spec + margin) * Matrix::Identity(dim, dim);
    return {a, c};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
