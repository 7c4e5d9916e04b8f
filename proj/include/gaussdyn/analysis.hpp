#pragma once

// Complete-positivity and symplecticity certificates, energy and
// phase-space-volume rates, and the purification criterion.

#include "gaussdyn/propagation.hpp"

#include <optional>

namespace gaussdyn {

enum class CPTestKind { finite, differential };

struct CPReport {
  bool passes;
  double min_eig;  // smallest eigenvalue of the Hermitian test matrix
  CPTestKind test_kind;
  double tol;
};

/// R + i Omega - i T Omega T^T >= 0. Default tol: 1e-9 (1 + max|entry|).
CMatrix cp_test_matrix(const GaussianChannel& ch);
CPReport check_cp_channel(const GaussianChannel& ch, std::optional<double> tol = std::nullopt);

/// C - i Omega (A - A^T) Omega >= 0.
CMatrix cp_test_matrix(const Generator& g);
CPReport check_cp_generator(const Generator& g, std::optional<double> tol = std::nullopt);

struct SymplecticReport {
  bool is_symplectic;
  double defect;
};

inline constexpr double kSymplecticTolerance = 1e-10;

/// Channel: defect = max(max|T Omega T^T - Omega|, max|R|).
/// Generator: defect = max(max|A - A^T|, max|C|).
SymplecticReport check_symplectic(const GaussianChannel& ch, double tol = kSymplecticTolerance);
SymplecticReport check_symplectic(const Generator& g, double tol = kSymplecticTolerance);

/// Smallest c >= 0 such that C + c 1 passes the differential CP test exactly.
double minimal_thermal_noise(const Generator& g);

/// Instantaneous d/dt Tr(cov/2 + mean mean^T):
///   Tr((Omega A + (Omega A)^T)(cov/2 + X X^T)) + 2 (Omega b)^T X + Tr(C)/2.
double energy_flow_rate(const Generator& g, const GaussianState& s);

/// d/dt sqrt(det cov) = 1/2 sqrt(det cov) Tr(2 Omega A + cov^{-1} C).
/// Throws std::domain_error for a singular covariance.
double volume_rate(const Generator& g, const GaussianState& s);

struct PurificationReport {
  double trace_omega_a;
  bool can_purify;                  // trace_omega_a < -tol
  std::optional<double> nu_bound;   // Tr(C) / (-2 Tr(Omega A)), only when can_purify
  std::optional<double> nu_thermal; // max(nu_bound, 1)
};

inline constexpr double kPurificationTolerance = 1e-12;

PurificationReport purification_report(const Generator& g, double tol = kPurificationTolerance);

}  // namespace gaussdyn
