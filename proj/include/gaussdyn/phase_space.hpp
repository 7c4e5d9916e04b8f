#pragma once

// Phase-space primitives for bosonic Gaussian systems.
//
// Conventions used throughout the library:
//  * quadratures are dimensionless with hbar = 1, q = (a^dag + a)/sqrt(2);
//  * the covariance matrix is the symmetrized second moment
//        cov_jk = <X_j X_k + X_k X_j> - 2 <X_j><X_k>,
//    i.e. TWICE the textbook covariance. The vacuum has cov = identity and a
//    state is physical iff cov - i*Omega is positive semi-definite;
//  * the default ordering is interleaved (q1, p1, q2, p2, ...).

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>

namespace gaussdyn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;

enum class Ordering {
  interleaved,  // (q1, p1, ..., qN, pN); Omega = 1_N (x) omega
  grouped,      // (q1, ..., qN, p1, ..., pN); Omega = [[0, 1_N], [-1_N, 0]]
};

std::string to_string(Ordering ordering);
Ordering ordering_from_string(const std::string& name);

class SymplecticSpace {
 public:
  SymplecticSpace(int n_modes, Ordering ordering = Ordering::interleaved);

  int n_modes() const { return n_modes_; }
  int dim() const { return 2 * n_modes_; }
  Ordering ordering() const { return ordering_; }
  const Matrix& omega() const { return omega_; }

  bool operator==(const SymplecticSpace& other) const {
    return n_modes_ == other.n_modes_ && ordering_ == other.ordering_;
  }

 private:
  int n_modes_;
  Ordering ordering_;
  Matrix omega_;
};

SymplecticSpace make_symplectic_form(int n_modes, Ordering ordering = Ordering::interleaved);

/// Mean vector and covariance (conventions in the file header) of a Gaussian state.
class GaussianState {
 public:
  /// Throws std::invalid_argument on dimension mismatch or if cov is not
  /// symmetric within the default relative tolerance. Physical validity is
  /// not enforced here; see validate_state.
  GaussianState(SymplecticSpace space, Vector mean, Matrix cov);

  const SymplecticSpace& space() const { return space_; }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

 private:
  SymplecticSpace space_;
  Vector mean_;
  Matrix cov_;
};

// --- tolerances and small linear-algebra helpers -------------------------

/// Relative PSD tolerance 1e-9 * (1 + max|m_ij|).
double default_tolerance(const Matrix& m);
double default_tolerance(const CMatrix& m);

double max_abs(const Matrix& m);
Matrix symmetrize(const Matrix& m);
Matrix antisymmetrize(const Matrix& m);
bool is_symmetric(const Matrix& m, double tol);

/// Smallest eigenvalue of a Hermitian matrix.
double min_hermitian_eigenvalue(const CMatrix& h);

/// cov - i * omega, the matrix whose positivity defines a physical state.
CMatrix uncertainty_matrix(const Matrix& cov, const Matrix& omega);

// --- basis reordering ----------------------------------------------------

/// Permutation matrix P with x_to = P * x_from.
Matrix reorder_permutation(int n_modes, Ordering from, Ordering to);

Vector reorder_basis(const Vector& v, Ordering from, Ordering to);
Matrix reorder_basis(const Matrix& m, Ordering from, Ordering to);
GaussianState reorder_basis(const GaussianState& state, Ordering to);

// --- standard states -----------------------------------------------------

GaussianState vacuum_state(const SymplecticSpace& space);
GaussianState thermal_state(double nu, const SymplecticSpace& space);
GaussianState coherent_state(double q, double p, const SymplecticSpace& space);
GaussianState squeezed_state(double sigma_qq, double sigma_pp, const SymplecticSpace& space);

/// Direct sum of two states; cross-covariance is zero.
GaussianState compose_states(const GaussianState& a, const GaussianState& b);

// --- validity and observables --------------------------------------------

struct ValidityReport {
  bool valid;
  double min_eig;
  bool pure_boundary;
  double tol;
};

/// Throws std::invalid_argument if cov is asymmetric beyond tol.
ValidityReport validate_state(const GaussianState& state, std::optional<double> tol = std::nullopt);

struct StateObservables {
  double purity;
  double volume;
  double mean_energy;
};

/// Excitation-number energy is Tr(cov/2 + mean mean^T) (no N/2 offset, unit frequency).
double mean_energy(const Vector& mean, const Matrix& cov);

/// Throws std::domain_error for a singular (or negative-determinant) covariance.
StateObservables state_observables(const GaussianState& state);

}  // namespace gaussdyn
