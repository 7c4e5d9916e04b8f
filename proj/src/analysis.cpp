#include "gaussdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gaussdyn {

namespace {

const std::complex<double> kI(0.0, 1.0);

CMatrix complexify(const Matrix& m) { return m.cast<std::complex<double>>(); }

CPReport run_cp_test(const CMatrix& h, std::optional<double> tol, CPTestKind kind) {
  const double t = tol.value_or(default_tolerance(h));
  const double min_eig = min_hermitian_eigenvalue(h);
  return CPReport{min_eig >= -t, min_eig, kind, t};
}

}  // namespace

CMatrix cp_test_matrix(const GaussianChannel& ch) {
  const Matrix& omega = ch.space().omega();
  return complexify(ch.r()) + kI * complexify(omega) -
         kI * complexify(ch.t() * omega * ch.t().transpose());
}

CPReport check_cp_channel(const GaussianChannel& ch, std::optional<double> tol) {
  return run_cp_test(cp_test_matrix(ch), tol, CPTestKind::finite);
}

CMatrix cp_test_matrix(const Generator& g) {
  const Matrix& omega = g.space().omega();
  return complexify(g.c()) - kI * complexify(omega * (g.a() - g.a().transpose()) * omega);
}

CPReport check_cp_generator(const Generator& g, std::optional<double> tol) {
  return run_cp_test(cp_test_matrix(g), tol, CPTestKind::differential);
}

SymplecticReport check_symplectic(const GaussianChannel& ch, double tol) {
  const Matrix& omega = ch.space().omega();
  const double defect =
      std::max(max_abs(ch.t() * omega * ch.t().transpose() - omega), max_abs(ch.r()));
  return SymplecticReport{defect <= tol, defect};
}

SymplecticReport check_symplectic(const Generator& g, double tol) {
  const double defect = std::max(max_abs(g.a() - g.a().transpose()), max_abs(g.c()));
  return SymplecticReport{defect <= tol, defect};
}

double minimal_thermal_noise(const Generator& g) {
  return std::max(0.0, -min_hermitian_eigenvalue(cp_test_matrix(g)));
}

double energy_flow_rate(const Generator& g, const GaussianState& s) {
  const Matrix& omega = g.space().omega();
  const Matrix drift = omega * g.a();
  const Matrix second_moment = 0.5 * s.cov() + s.mean() * s.mean().transpose();
  return ((drift + drift.transpose()) * second_moment).trace() +
         2.0 * (omega * g.b()).dot(s.mean()) + 0.5 * g.c().trace();
}

double volume_rate(const Generator& g, const GaussianState& s) {
  const Eigen::FullPivLU<Matrix> lu(s.cov());
  const double det = lu.determinant();
  if (!lu.isInvertible() || !(det > 0.0)) {
    throw std::domain_error("volume_rate: covariance must be invertible with positive determinant");
  }
  const Matrix drift = g.space().omega() * g.a();
  return 0.5 * std::sqrt(det) * (2.0 * drift.trace() + lu.solve(g.c()).trace());
}

PurificationReport purification_report(const Generator& g, double tol) {
  PurificationReport rep{};
  rep.trace_omega_a = (g.space().omega() * g.a()).trace();
  rep.can_purify = rep.trace_omega_a < -tol;
  if (rep.can_purify) {
    rep.nu_bound = g.c().trace() / (-2.0 * rep.trace_omega_a);
    rep.nu_thermal = std::max(*rep.nu_bound, 1.0);
  }
  return rep;
}

}  // namespace gaussdyn
