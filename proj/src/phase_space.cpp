#include "gaussdyn/phase_space.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace gaussdyn {

namespace {

Matrix build_omega(int n, Ordering ordering) {
  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    if (ordering == Ordering::interleaved) {
      omega(2 * k, 2 * k + 1) = 1.0;
      omega(2 * k + 1, 2 * k) = -1.0;
    } else {
      omega(k, n + k) = 1.0;
      omega(n + k, k) = -1.0;
    }
  }
  return omega;
}

int modes_from_dim(Eigen::Index dim) {
  if (dim <= 0 || dim % 2 != 0) {
    throw std::invalid_argument("phase-space dimension must be positive and even, got " +
                                std::to_string(dim));
  }
  return static_cast<int>(dim / 2);
}

// index of coordinate (mode k, quadrature c in {0 = q, 1 = p}) in an ordering
Eigen::Index coord_index(int n, int k, int c, Ordering ordering) {
  return ordering == Ordering::interleaved ? 2 * k + c : c * n + k;
}

}  // namespace

std::string to_string(Ordering ordering) {
  return ordering == Ordering::interleaved ? "interleaved" : "grouped";
}

Ordering ordering_from_string(const std::string& name) {
  if (name == "interleaved") return Ordering::interleaved;
  if (name == "grouped") return Ordering::grouped;
  throw std::invalid_argument("unknown ordering '" + name + "'");
}

SymplecticSpace::SymplecticSpace(int n_modes, Ordering ordering)
    : n_modes_(n_modes), ordering_(ordering) {
  if (n_modes < 1) {
    throw std::invalid_argument("n_modes must be at least 1, got " + std::to_string(n_modes));
  }
  omega_ = build_omega(n_modes, ordering);
}

SymplecticSpace make_symplectic_form(int n_modes, Ordering ordering) {
  return SymplecticSpace(n_modes, ordering);
}

GaussianState::GaussianState(SymplecticSpace space, Vector mean, Matrix cov)
    : space_(std::move(space)), mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto dim = space_.dim();
  if (mean_.size() != dim || cov_.rows() != dim || cov_.cols() != dim) {
    throw std::invalid_argument("state dimensions do not match a " +
                                std::to_string(space_.n_modes()) + "-mode phase space");
  }
  if (!cov_.allFinite() || !mean_.allFinite()) {
    throw std::invalid_argument("state contains non-finite entries");
  }
  if (!is_symmetric(cov_, default_tolerance(cov_))) {
    throw std::invalid_argument("covariance matrix must be symmetric");
  }
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double default_tolerance(const Matrix& m) { return 1e-9 * (1.0 + max_abs(m)); }

double default_tolerance(const CMatrix& m) {
  return 1e-9 * (1.0 + (m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff()));
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix antisymmetrize(const Matrix& m) { return 0.5 * (m - m.transpose()); }

bool is_symmetric(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.transpose()) <= tol;
}

double min_hermitian_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver failed to converge");
  }
  return solver.eigenvalues().minCoeff();
}

CMatrix uncertainty_matrix(const Matrix& cov, const Matrix& omega) {
  const std::complex<double> i(0.0, 1.0);
  return cov.cast<std::complex<double>>() - i * omega.cast<std::complex<double>>();
}

Matrix reorder_permutation(int n_modes, Ordering from, Ordering to) {
  const int dim = 2 * n_modes;
  Matrix perm = Matrix::Zero(dim, dim);
  for (int k = 0; k < n_modes; ++k) {
    for (int c = 0; c < 2; ++c) {
      perm(coord_index(n_modes, k, c, to), coord_index(n_modes, k, c, from)) = 1.0;
    }
  }
  return perm;
}

Vector reorder_basis(const Vector& v, Ordering from, Ordering to) {
  const int n = modes_from_dim(v.size());
  return reorder_permutation(n, from, to) * v;
}

Matrix reorder_basis(const Matrix& m, Ordering from, Ordering to) {
  if (m.rows() != m.cols()) throw std::invalid_argument("reorder_basis needs a square matrix");
  const int n = modes_from_dim(m.rows());
  const Matrix perm = reorder_permutation(n, from, to);
  return perm * m * perm.transpose();
}

GaussianState reorder_basis(const GaussianState& state, Ordering to) {
  const Ordering from = state.space().ordering();
  return GaussianState(SymplecticSpace(state.space().n_modes(), to),
                       reorder_basis(state.mean(), from, to), reorder_basis(state.cov(), from, to));
}

namespace {

void require_single_mode(const SymplecticSpace& space, const char* what) {
  if (space.n_modes() != 1) {
    throw std::invalid_argument(std::string(what) + " is defined on a single-mode space");
  }
}

}  // namespace

GaussianState vacuum_state(const SymplecticSpace& space) {
  return GaussianState(space, Vector::Zero(space.dim()), Matrix::Identity(space.dim(), space.dim()));
}

GaussianState thermal_state(double nu, const SymplecticSpace& space) {
  if (!(nu >= 1.0)) {
    throw std::invalid_argument("uncertainty violation: thermal parameter nu must be >= 1, got " +
                                std::to_string(nu));
  }
  return GaussianState(space, Vector::Zero(space.dim()),
                       nu * Matrix::Identity(space.dim(), space.dim()));
}

GaussianState coherent_state(double q, double p, const SymplecticSpace& space) {
  require_single_mode(space, "coherent state");
  return GaussianState(space, Vector{{q, p}}, Matrix::Identity(2, 2));
}

GaussianState squeezed_state(double sigma_qq, double sigma_pp, const SymplecticSpace& space) {
  require_single_mode(space, "squeezed state");
  if (!(sigma_qq > 0.0 && sigma_pp > 0.0) || sigma_qq * sigma_pp < 1.0 - 1e-12) {
    throw std::invalid_argument("uncertainty violation: squeezed state needs sigma_qq*sigma_pp >= 1");
  }
  Matrix cov = Matrix::Zero(2, 2);
  cov(0, 0) = sigma_qq;
  cov(1, 1) = sigma_pp;
  return GaussianState(space, Vector::Zero(2), cov);
}

GaussianState compose_states(const GaussianState& a, const GaussianState& b) {
  const Ordering ordering = a.space().ordering();
  if (ordering != b.space().ordering()) {
    throw std::invalid_argument("compose_states: ordering mismatch");
  }
  // Work interleaved (plain block diagonal), then convert back.
  const GaussianState ai = reorder_basis(a, Ordering::interleaved);
  const GaussianState bi = reorder_basis(b, Ordering::interleaved);
  const auto da = ai.space().dim();
  const auto db = bi.space().dim();
  Vector mean(da + db);
  mean << ai.mean(), bi.mean();
  Matrix cov = Matrix::Zero(da + db, da + db);
  cov.topLeftCorner(da, da) = ai.cov();
  cov.bottomRightCorner(db, db) = bi.cov();
  GaussianState joint(SymplecticSpace(a.space().n_modes() + b.space().n_modes()), mean, cov);
  return reorder_basis(joint, ordering);
}

ValidityReport validate_state(const GaussianState& state, std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(state.cov()));
  if (!is_symmetric(state.cov(), t)) {
    throw std::invalid_argument("validate_state: covariance is not symmetric within tolerance");
  }
  const double min_eig = min_hermitian_eigenvalue(uncertainty_matrix(state.cov(), state.space().omega()));
  return ValidityReport{min_eig >= -t, min_eig, std::abs(min_eig) <= t, t};
}

double mean_energy(const Vector& mean, const Matrix& cov) {
  return 0.5 * cov.trace() + mean.squaredNorm();
}

StateObservables state_observables(const GaussianState& state) {
  const double det = state.cov().determinant();
  if (!(det > 0.0)) {
    throw std::domain_error("state_observables: covariance is singular (det = " +
                            std::to_string(det) + ")");
  }
  return StateObservables{1.0 / det, std::sqrt(det), mean_energy(state.mean(), state.cov())};
}

}  // namespace gaussdyn
