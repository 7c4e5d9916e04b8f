#pragma once

// Finite-time Gaussian channels (T, d, R):
//
//   mean -> T mean + d,     cov -> T cov T^T + R
//
// the exact solution of a time-independent master equation in that form,
// and a fixed-step Runge-Kutta integrator used as an independent check.

#include "gaussdyn/generator.hpp"

namespace gaussdyn {

class GaussianChannel {
 public:
  /// Throws std::invalid_argument on dimension mismatch or asymmetric R.
  GaussianChannel(SymplecticSpace space, Matrix t, Vector d, Matrix r);

  static GaussianChannel identity(const SymplecticSpace& space);

  const SymplecticSpace& space() const { return space_; }
  const Matrix& t() const { return t_; }
  const Vector& d() const { return d_; }
  const Matrix& r() const { return r_; }

 private:
  SymplecticSpace space_;
  Matrix t_;
  Vector d_;
  Matrix r_;
};

/// Matrix exponential (Pade scaling and squaring).
Matrix expm(const Matrix& m);

/// phi1(M, t) = sum_{k>=0} t^{k+1} M^k / (k+1)!  = M^{-1}(exp(Mt) - 1) when M is invertible.
/// Evaluated as the off-diagonal block of exp([[M, 1], [0, 0]] t).
Matrix phi1(const Matrix& m, double t);

/// phi1(M, t) * v without forming phi1(M, t).
Vector phi1_apply(const Matrix& m, double t, const Vector& v);

/// Truncated power series for phi1; reference implementation for tests.
Matrix phi1_series(const Matrix& m, double t, int terms);

/// Row-major stacking: vec([[a, b], [c, d]]) = (a, b, c, d), so that
/// vec(X Y Z^T) = (X (x) Z) vec(Y).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

/// Exact channel for evolving time t under g:
///   T = exp(Omega A t)
///   d = phi1(Omega A, t) Omega b
///   R = unvec(phi1(Omega A (x) 1 + 1 (x) Omega A, t) vec(C))
/// Negative t gives the formal inverse map, which is generally not CP.
/// Throws std::overflow_error when the result is not finite.
GaussianChannel solve_channel(const Generator& g, double t);

/// Throws std::invalid_argument on a space mismatch.
GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& s);

/// Channel equivalent to applying `first` and then `second`.
GaussianChannel compose_channels(const GaussianChannel& second, const GaussianChannel& first);

/// Classical RK4 with `steps` equal steps on the coupled (mean, cov) system.
/// Throws std::invalid_argument for steps < 1 and std::overflow_error on
/// non-finite intermediate values.
GaussianState integrate_master_equation(const Generator& g, const GaussianState& s0, double t,
                                        int steps);

/// Symplectic-affine map on system (x) ancilla, with the ancilla prepared in
/// ancilla_state and uncorrelated with the system. Both are interleaved and
/// the system occupies the leading modes.
struct JointSymplectic {
  Matrix s_joint;
  Vector d_joint;
  GaussianState ancilla_state;
};

/// Reduces a joint symplectic evolution to the system channel
///   T = T_S,  d = M X_A + d_S,  R = M cov_A M^T
/// where S_joint = [[T_S, M], [L, T_A]]. Throws std::invalid_argument when
/// s_joint is not symplectic within tol (default 1e-9 (1 + max|S|^2)) or
/// dimensions are inconsistent.
GaussianChannel restrict_joint_symplectic(const JointSymplectic& j, int n_system,
                                          std::optional<double> tol = std::nullopt);

}  // namespace gaussdyn
