#include "gaussdyn/propagation.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace gaussdyn {

GaussianChannel::GaussianChannel(SymplecticSpace space, Matrix t, Vector d, Matrix r)
    : space_(std::move(space)), t_(std::move(t)), d_(std::move(d)), r_(std::move(r)) {
  const auto dim = space_.dim();
  if (t_.rows() != dim || t_.cols() != dim || d_.size() != dim || r_.rows() != dim ||
      r_.cols() != dim) {
    throw std::invalid_argument("channel dimensions do not match a " +
                                std::to_string(space_.n_modes()) + "-mode phase space");
  }
  if (!is_symmetric(r_, default_tolerance(r_))) {
    throw std::invalid_argument("R must be symmetric");
  }
}

GaussianChannel GaussianChannel::identity(const SymplecticSpace& space) {
  const auto dim = space.dim();
  return GaussianChannel(space, Matrix::Identity(dim, dim), Vector::Zero(dim),
                         Matrix::Zero(dim, dim));
}

Matrix expm(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm needs a square matrix");
  return m.exp();
}

Matrix phi1(const Matrix& m, double t) {
  if (m.rows() != m.cols()) throw std::invalid_argument("phi1 needs a square matrix");
  const auto n = m.rows();
  Matrix aug = Matrix::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = m * t;
  aug.topRightCorner(n, n) = Matrix::Identity(n, n) * t;
  return expm(aug).topRightCorner(n, n);
}

Vector phi1_apply(const Matrix& m, double t, const Vector& v) {
  if (m.rows() != m.cols() || v.size() != m.rows()) {
    throw std::invalid_argument("phi1_apply: dimension mismatch");
  }
  const auto n = m.rows();
  Matrix aug = Matrix::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = m * t;
  aug.topRightCorner(n, 1) = v * t;
  return expm(aug).topRightCorner(n, 1);
}

Matrix phi1_series(const Matrix& m, double t, int terms) {
  if (m.rows() != m.cols()) throw std::invalid_argument("phi1_series needs a square matrix");
  const auto n = m.rows();
  Matrix term = Matrix::Identity(n, n) * t;  // t^{k+1} M^k / (k+1)!
  Matrix sum = term;
  for (int k = 1; k < terms; ++k) {
    term = term * m * (t / (k + 1));
    sum += term;
  }
  return sum;
}

Vector vec(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  if (rows < 0 || cols < 0 || v.size() != rows * cols) {
    throw std::invalid_argument("unvec: vector length " + std::to_string(v.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  }
  return m;
}

GaussianChannel solve_channel(const Generator& g, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("solve_channel: time must be finite");
  const auto dim = g.space().dim();
  const Matrix& omega = g.space().omega();
  const Matrix drift = omega * g.a();

  const Matrix t_mat = expm(drift * t);
  const Vector d = phi1_apply(drift, t, omega * g.b());

  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix lifted = kron(drift, id) + kron(id, drift);
  const Matrix r = symmetrize(unvec(phi1_apply(lifted, t, vec(g.c())), dim, dim));

  if (!t_mat.allFinite() || !d.allFinite() || !r.allFinite()) {
    throw std::overflow_error("solve_channel: solution overflowed at t = " + std::to_string(t));
  }
  return GaussianChannel(g.space(), t_mat, d, r);
}

GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& s) {
  if (!(ch.space() == s.space())) {
    throw std::invalid_argument("apply_channel: channel and state live on different spaces");
  }
  return GaussianState(s.space(), ch.t() * s.mean() + ch.d(),
                       symmetrize(ch.t() * s.cov() * ch.t().transpose() + ch.r()));
}

GaussianChannel compose_channels(const GaussianChannel& second, const GaussianChannel& first) {
  if (!(second.space() == first.space())) {
    throw std::invalid_argument("compose_channels: channels live on different spaces");
  }
  const Matrix& t2 = second.t();
  return GaussianChannel(first.space(), t2 * first.t(), t2 * first.d() + second.d(),
                         symmetrize(t2 * first.r() * t2.transpose() + second.r()));
}

namespace {

struct Moments {
  Vector mean;
  Matrix cov;
};

Moments rhs(const Matrix& drift, const Vector& drive, const Matrix& c, const Moments& s) {
  return Moments{drift * s.mean + drive, drift * s.cov + s.cov * drift.transpose() + c};
}

Moments axpy(double a, const Moments& x, const Moments& y) {
  return Moments{y.mean + a * x.mean, y.cov + a * x.cov};
}

}  // namespace

GaussianState integrate_master_equation(const Generator& g, const GaussianState& s0, double t,
                                        int steps) {
  if (steps < 1) throw std::invalid_argument("integrate_master_equation: steps must be >= 1");
  if (!(g.space() == s0.space())) {
    throw std::invalid_argument("integrate_master_equation: generator and state spaces differ");
  }
  const Matrix& omega = g.space().omega();
  const Matrix drift = omega * g.a();
  const Vector drive = omega * g.b();
  const double h = t / steps;

  Moments s{s0.mean(), s0.cov()};
  for (int k = 0; k < steps; ++k) {
    const Moments k1 = rhs(drift, drive, g.c(), s);
    const Moments k2 = rhs(drift, drive, g.c(), axpy(0.5 * h, k1, s));
    const Moments k3 = rhs(drift, drive, g.c(), axpy(0.5 * h, k2, s));
    const Moments k4 = rhs(drift, drive, g.c(), axpy(h, k3, s));
    s.mean += h / 6.0 * (k1.mean + 2.0 * k2.mean + 2.0 * k3.mean + k4.mean);
    s.cov += h / 6.0 * (k1.cov + 2.0 * k2.cov + 2.0 * k3.cov + k4.cov);
    s.cov = symmetrize(s.cov);
    if (!s.mean.allFinite() || !s.cov.allFinite()) {
      throw std::overflow_error("integrate_master_equation: non-finite state after step " +
                                std::to_string(k + 1));
    }
  }
  return GaussianState(s0.space(), s.mean, s.cov);
}

GaussianChannel restrict_joint_symplectic(const JointSymplectic& j, int n_system,
                                          std::optional<double> tol) {
  const auto& anc = j.ancilla_state;
  if (anc.space().ordering() != Ordering::interleaved) {
    throw std::invalid_argument("restrict_joint_symplectic: ancilla must use interleaved ordering");
  }
  const int n_total = n_system + anc.space().n_modes();
  const auto dim = 2 * n_total;
  if (n_system < 1 || j.s_joint.rows() != dim || j.s_joint.cols() != dim || j.d_joint.size() != dim) {
    throw std::invalid_argument("restrict_joint_symplectic: inconsistent joint dimensions");
  }
  const Matrix omega = SymplecticSpace(n_total).omega();
  const double defect = max_abs(j.s_joint * omega * j.s_joint.transpose() - omega);
  const double limit = tol.value_or(1e-9 * (1.0 + std::pow(max_abs(j.s_joint), 2)));
  if (defect > limit) {
    throw std::invalid_argument("restrict_joint_symplectic: joint map is not symplectic (defect " +
                                std::to_string(defect) + ")");
  }
  const auto ds = 2 * n_system;
  const auto da = dim - ds;
  const Matrix t_s = j.s_joint.topLeftCorner(ds, ds);
  const Matrix m = j.s_joint.topRightCorner(ds, da);
  const Vector d = m * anc.mean() + j.d_joint.head(ds);
  const Matrix r = symmetrize(m * anc.cov() * m.transpose());
  return GaussianChannel(SymplecticSpace(n_system), t_s, d, r);
}

}  // namespace gaussdyn
