#include "gaussdyn/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace gaussdyn {

Generator::Generator(SymplecticSpace space, Matrix a, Vector b, Matrix c)
    : space_(std::move(space)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  const auto dim = space_.dim();
  if (a_.rows() != dim || a_.cols() != dim || b_.size() != dim || c_.rows() != dim ||
      c_.cols() != dim) {
    throw std::invalid_argument("generator dimensions do not match a " +
                                std::to_string(space_.n_modes()) + "-mode phase space");
  }
  if (!a_.allFinite() || !b_.allFinite() || !c_.allFinite()) {
    throw std::invalid_argument("generator contains non-finite entries");
  }
  if (!is_symmetric(c_, default_tolerance(c_))) {
    throw std::invalid_argument("C must be symmetric");
  }
}

Generator Generator::zero(const SymplecticSpace& space) {
  const auto dim = space.dim();
  return Generator(space, Matrix::Zero(dim, dim), Vector::Zero(dim), Matrix::Zero(dim, dim));
}

Generator Generator::operator+(const Generator& other) const {
  if (!(space_ == other.space_)) throw std::invalid_argument("cannot add generators on different spaces");
  return Generator(space_, a_ + other.a_, b_ + other.b_, c_ + other.c_);
}

Generator Generator::with_extra_noise(const Matrix& extra_c) const {
  return Generator(space_, a_, b_, c_ + extra_c);
}

Generator reorder_basis(const Generator& g, Ordering to) {
  const Ordering from = g.space().ordering();
  return Generator(SymplecticSpace(g.space().n_modes(), to), reorder_basis(g.a(), from, to),
                   reorder_basis(g.b(), from, to), reorder_basis(g.c(), from, to));
}

namespace basis2 {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix omega() { return Matrix{{0.0, 1.0}, {-1.0, 0.0}}; }
Matrix x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace basis2

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix BlockBasisExpansion::reassemble() const {
  return kron(coeff_i, basis2::identity()) + kron(coeff_w, basis2::omega()) +
         kron(coeff_x, basis2::x()) + kron(coeff_z, basis2::z());
}

BlockBasisExpansion block_basis_expand(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw std::invalid_argument("block_basis_expand needs a square matrix of even dimension");
  }
  const auto n = m.rows() / 2;
  BlockBasisExpansion e{Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n)};
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = 0; s < n; ++s) {
      const double a = m(2 * r, 2 * s);
      const double b = m(2 * r, 2 * s + 1);
      const double c = m(2 * r + 1, 2 * s);
      const double d = m(2 * r + 1, 2 * s + 1);
      e.coeff_i(r, s) = 0.5 * (a + d);
      e.coeff_w(r, s) = 0.5 * (b - c);
      e.coeff_x(r, s) = 0.5 * (b + c);
      e.coeff_z(r, s) = 0.5 * (a - d);
    }
  }
  return e;
}

namespace {

ModeSplit split_modes(Matrix total) {
  const auto n = total.rows() / 2;
  Matrix single = Matrix::Zero(total.rows(), total.cols());
  for (Eigen::Index k = 0; k < n; ++k) {
    single.block(2 * k, 2 * k, 2, 2) = total.block(2 * k, 2 * k, 2, 2);
  }
  Matrix multi = total - single;
  return ModeSplit{std::move(total), std::move(single), std::move(multi)};
}

ModeSplit reorder_split(const ModeSplit& s, Ordering to) {
  return ModeSplit{reorder_basis(s.total, Ordering::interleaved, to),
                   reorder_basis(s.single_mode, Ordering::interleaved, to),
                   reorder_basis(s.multi_mode, Ordering::interleaved, to)};
}

GeneratorPartition partition_interleaved(const Generator& g) {
  using namespace basis2;
  const BlockBasisExpansion ea = block_basis_expand(g.a());
  const BlockBasisExpansion ec = block_basis_expand(g.c());

  GeneratorPartition p;
  p.a_sp = split_modes(kron(symmetrize(ea.coeff_i), identity()) +
                       kron(antisymmetrize(ea.coeff_w), omega()));
  p.a_sa = split_modes(kron(symmetrize(ea.coeff_x), x()) + kron(symmetrize(ea.coeff_z), z()));
  p.a_ua = split_modes(kron(antisymmetrize(ea.coeff_i), identity()) +
                       kron(symmetrize(ea.coeff_w), omega()));
  p.a_up = split_modes(kron(antisymmetrize(ea.coeff_x), x()) +
                       kron(antisymmetrize(ea.coeff_z), z()));

  const Matrix c_ua = kron(Matrix(ec.coeff_i.diagonal().asDiagonal()), identity());
  p.c_ua = split_modes(c_ua);
  p.c_up = split_modes(g.c() - c_ua);
  p.b = g.b();
  return p;
}

double rss(std::initializer_list<double> xs) {
  double s = 0.0;
  for (double x : xs) s += x * x;
  return std::sqrt(s);
}

}  // namespace

GeneratorPartition partition_generator(const Generator& g) {
  const Ordering ordering = g.space().ordering();
  if (ordering == Ordering::interleaved) return partition_interleaved(g);

  const GeneratorPartition pi = partition_interleaved(reorder_basis(g, Ordering::interleaved));
  return GeneratorPartition{reorder_split(pi.a_sp, ordering), reorder_split(pi.a_sa, ordering),
                            reorder_split(pi.a_ua, ordering), reorder_split(pi.a_up, ordering),
                            reorder_split(pi.c_ua, ordering), reorder_split(pi.c_up, ordering),
                            reorder_basis(pi.b, Ordering::interleaved, ordering)};
}

const DynamicsClass& ClassificationRecord::row(const std::string& name) const {
  for (const auto& r : rows) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("no dynamics class named '" + name + "'");
}

int ClassificationRecord::present_count() const {
  int n = 0;
  for (const auto& r : rows) n += r.present ? 1 : 0;
  return n;
}

ClassificationRecord classify(const Generator& g, double tol) {
  const GeneratorPartition p = partition_generator(g);
  const auto norm = [](const Matrix& m) { return m.norm(); };

  const double sp_s = norm(p.a_sp.single_mode), sp_m = norm(p.a_sp.multi_mode);
  const double sa_s = norm(p.a_sa.single_mode), sa_m = norm(p.a_sa.multi_mode);
  const double ua_s = norm(p.a_ua.single_mode), ua_m = norm(p.a_ua.multi_mode);
  const double up_s = norm(p.a_up.single_mode), up_m = norm(p.a_up.multi_mode);
  const double cua_s = norm(p.c_ua.single_mode), cua_m = norm(p.c_ua.multi_mode);
  const double cup_s = norm(p.c_up.single_mode), cup_m = norm(p.c_up.multi_mode);
  const double b = p.b.norm();

  // b is single-mode and active by construction; its multi-mode and passive
  // slots are identically empty.
  constexpr double kStructuralZero = 0.0;
  const std::string np = "Not Possible";

  ClassificationRecord rec;
  rec.tol = tol;
  // Order and flags follow the 16-way table: single, symplectic, passive, state-dependent.
  rec.rows = {{
      {"Single-mode Rotation", true, true, true, true, true, sp_s, false},
      {np, true, true, true, false, false, kStructuralZero, false},
      {"Single-mode Squeezing", true, true, false, true, true, sa_s, false},
      {"Displacement", true, true, false, false, true, b, false},
      {np, true, false, true, true, false, up_s, false},
      {"Single-mode Squeezed Noise", true, false, true, false, true, cup_s, false},
      {"Amplification/Relaxation", true, false, false, true, true, ua_s, false},
      {"Free Thermal Noise", true, false, false, false, true, cua_s, false},
      {"Multi-mode Rotation", false, true, true, true, true, sp_m, false},
      {np, false, true, true, false, false, kStructuralZero, false},
      {"Multi-mode Squeezing", false, true, false, true, true, sa_m, false},
      {np, false, true, false, false, false, kStructuralZero, false},
      {"Multi-mode Counter-Rotation", false, false, true, true, true, up_m, false},
      {"Multi-mode Squeezed Noise", false, false, true, false, true, cup_m, false},
      {"Multi-mode Counter-Squeezing", false, false, false, true, true, ua_m, false},
      {np, false, false, false, false, false, cua_m, false},
  }};
  for (auto& r : rec.rows) r.present = r.magnitude > tol;

  rec.symplectic_unsymplectic = {rss({sp_s, sp_m, sa_s, sa_m, b}),
                                 rss({ua_s, ua_m, up_s, up_m, cua_s, cua_m, cup_s, cup_m})};
  rec.passive_active = {rss({sp_s, sp_m, up_s, up_m, cup_s, cup_m}),
                        rss({sa_s, sa_m, ua_s, ua_m, b, cua_s, cua_m})};
  rec.single_multi = {rss({sp_s, sa_s, ua_s, up_s, cua_s, cup_s, b}),
                      rss({sp_m, sa_m, ua_m, up_m, cua_m, cup_m})};
  rec.dependent_independent = {rss({sp_s, sp_m, sa_s, sa_m, ua_s, ua_m, up_s, up_m}),
                               rss({b, cua_s, cua_m, cup_s, cup_m})};
  return rec;
}

StandardHamiltonian effective_hamiltonian(const Generator& g) {
  return StandardHamiltonian{symmetrize(g.a()), g.b(), 0.0};
}

StandardHamiltonian standardize_hamiltonian(const Matrix& f_raw, const Vector& alpha, double beta,
                                            const SymplecticSpace& space) {
  const auto dim = space.dim();
  if (f_raw.rows() != dim || f_raw.cols() != dim || alpha.size() != dim) {
    throw std::invalid_argument("standardize_hamiltonian: dimension mismatch with phase space");
  }
  const Matrix anti = antisymmetrize(f_raw);
  const double shift = 0.25 * anti.cwiseProduct(space.omega()).sum();
  return StandardHamiltonian{symmetrize(f_raw), alpha, beta + shift};
}

}  // namespace gaussdyn
