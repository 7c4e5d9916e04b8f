#pragma once

// Generators (A, b, C) of the Gaussian master equation
//
//   dX/dt     = Omega (A X + b)
//   dcov/dt   = (Omega A) cov + cov (Omega A)^T + C
//
// and their decomposition along the four dichotomies symplectic/unsymplectic,
// passive/active, single-/multi-mode and state-dependent/independent.

#include "gaussdyn/phase_space.hpp"

#include <array>
#include <string>

namespace gaussdyn {

class Generator {
 public:
  /// Throws std::invalid_argument on dimension mismatch or asymmetric C.
  Generator(SymplecticSpace space, Matrix a, Vector b, Matrix c);

  static Generator zero(const SymplecticSpace& space);

  const SymplecticSpace& space() const { return space_; }
  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  const Matrix& c() const { return c_; }

  /// Generators add linearly; both operands must live on the same space.
  Generator operator+(const Generator& other) const;
  Generator with_extra_noise(const Matrix& extra_c) const;

 private:
  SymplecticSpace space_;
  Matrix a_;
  Vector b_;
  Matrix c_;
};

/// Generator re-expressed in another ordering (A and C conjugated, b permuted).
Generator reorder_basis(const Generator& g, Ordering to);

/// The real 2x2 basis {1, omega, X, Z}.
namespace basis2 {
Matrix identity();
Matrix omega();
Matrix x();
Matrix z();
}  // namespace basis2

/// m = coeff_i (x) 1 + coeff_w (x) omega + coeff_x (x) X + coeff_z (x) Z (interleaved ordering).
struct BlockBasisExpansion {
  Matrix coeff_i;
  Matrix coeff_w;
  Matrix coeff_x;
  Matrix coeff_z;

  Matrix reassemble() const;
};

BlockBasisExpansion block_basis_expand(const Matrix& m);

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

struct ModeSplit {
  Matrix total;
  Matrix single_mode;  // block-diagonal part
  Matrix multi_mode;   // block-off-diagonal part
};

struct GeneratorPartition {
  ModeSplit a_sp;  // symplectic passive
  ModeSplit a_sa;  // symplectic active
  ModeSplit a_ua;  // unsymplectic active
  ModeSplit a_up;  // unsymplectic passive
  ModeSplit c_ua;  // thermal (active) noise, always single-mode
  ModeSplit c_up;  // passive noise
  Vector b;        // displacement drive, symplectic active single-mode
};

/// Grouped-ordering generators are converted to interleaved for the
/// decomposition and the components are returned in the input ordering.
GeneratorPartition partition_generator(const Generator& g);

/// One row of the 16-way table spanned by the four dichotomies.
struct DynamicsClass {
  std::string name;  // "Not Possible" for the five structurally empty rows
  bool single_mode;
  bool symplectic;
  bool passive;
  bool state_dependent;
  bool possible;
  double magnitude;  // Frobenius norm of the corresponding component
  bool present;      // magnitude > tol
};

struct DichotomySummary {
  double first;   // symplectic / passive / single-mode / state-dependent
  double second;  // unsymplectic / active / multi-mode / state-independent
};

struct ClassificationRecord {
  std::array<DynamicsClass, 16> rows;
  DichotomySummary symplectic_unsymplectic;
  DichotomySummary passive_active;
  DichotomySummary single_multi;
  DichotomySummary dependent_independent;
  double tol;

  const DynamicsClass& row(const std::string& name) const;
  int present_count() const;
};

inline constexpr double kClassificationTolerance = 1e-12;

ClassificationRecord classify(const Generator& g, double tol = kClassificationTolerance);

/// H = 1/2 X^T F X + alpha^T X + beta, with F symmetric.
struct StandardHamiltonian {
  Matrix f;
  Vector alpha;
  double beta;
};

/// F = sym(A), alpha = b, beta = 0.
StandardHamiltonian effective_hamiltonian(const Generator& g);

/// Moves the antisymmetric part of f_raw into the constant term. The
/// operator identity 1/2 X^T F_anti X = (i/4) sum_jk (F_anti)_jk Omega_jk is
/// imaginary for real F_anti; beta records the real coefficient
/// (1/4) sum_jk (F_anti)_jk Omega_jk of that identity term.
StandardHamiltonian standardize_hamiltonian(const Matrix& f_raw, const Vector& alpha, double beta,
                                            const SymplecticSpace& space);

}  // namespace gaussdyn
