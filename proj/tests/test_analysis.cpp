#include "gaussdyn/analysis.hpp"
#include "gaussdyn/catalog.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gaussdyn;

namespace {

Generator make(const Matrix& a, const Matrix& c) {
  return Generator(SymplecticSpace(static_cast<int>(a.rows() / 2)), a, Vector::Zero(a.rows()), c);
}

Generator kind(const std::string& id, double rate) {
  const int one[] = {1};
  const int two[] = {1, 2};
  const auto sel = parse_kind(id);
  const int modes = catalog_entry(sel.kind).modes;
  return named_generator(sel.kind, sel.variant, rate, modes == 1 ? std::span<const int>(one)
                                                                  : std::span<const int>(two),
                         SymplecticSpace(modes));
}

const Matrix kI2 = Matrix::Identity(2, 2);
const Matrix kZ2 = Matrix::Zero(2, 2);

}  // namespace

TEST(CPChannel, IdentityPassesAtBoundary) {
  const auto rep = check_cp_channel(GaussianChannel::identity(SymplecticSpace(2)));
  EXPECT_TRUE(rep.passes);
  EXPECT_NEAR(rep.min_eig, 0.0, 1e-15);
  EXPECT_EQ(rep.test_kind, CPTestKind::finite);
}

TEST(CPChannel, RotationPasses) {
  const auto rep = check_cp_channel(solve_channel(kind("rotation", 1.0), 0.7));
  EXPECT_TRUE(rep.passes);
  EXPECT_NEAR(rep.min_eig, 0.0, 1e-14);
}

TEST(CPChannel, NoiselessAmplifierFails) {
  const double eps = 0.1;
  const GaussianChannel ch(SymplecticSpace(1), (1 + eps) * kI2, Vector::Zero(2), kZ2);
  const auto rep = check_cp_channel(ch);
  EXPECT_FALSE(rep.passes);
  EXPECT_NEAR(rep.min_eig, -(2 * eps + eps * eps), 1e-14);
}

TEST(CPGenerator, AmplificationWithoutNoiseFails) {
  for (double eta : {-0.5, 0.2, 3.0}) {
    EXPECT_FALSE(check_cp_generator(make(eta * basis2::omega(), kZ2)).passes) << eta;
  }
}

TEST(CPGenerator, AmplificationWithMinimalNoiseIsOnBoundary) {
  const double eta = 0.8;
  const auto rep = check_cp_generator(make(eta * basis2::omega(), 2 * eta * kI2));
  EXPECT_TRUE(rep.passes);
  EXPECT_NEAR(rep.min_eig, 0.0, 1e-14);
  EXPECT_EQ(rep.test_kind, CPTestKind::differential);
}

TEST(CPGenerator, SymmetricDriftPasses) {
  oracle::Random rng(41);
  EXPECT_TRUE(check_cp_generator(make(rng.symmetric(4), Matrix::Zero(4, 4))).passes);
}

TEST(CPGenerator, MinEigMatchesRealEmbedding) {
  oracle::Random rng(42);
  for (int n = 1; n <= 3; ++n) {
    const Matrix a = rng.matrix(2 * n, 2 * n);
    const Matrix c = rng.symmetric(2 * n);
    const Matrix w = SymplecticSpace(n).omega();
    const double expected = oracle::min_eig_hermitian(c, -(w * (a - a.transpose()) * w));
    EXPECT_NEAR(check_cp_generator(make(a, c)).min_eig, expected, 1e-12);
  }
}

TEST(Symplectic, RotationChannel) {
  EXPECT_TRUE(check_symplectic(solve_channel(kind("rotation", 2.0), 1.1)).is_symplectic);
}

TEST(Symplectic, ThermalNoiseGeneratorIsNot) {
  EXPECT_FALSE(check_symplectic(kind("thermal_noise", 1.0)).is_symplectic);
}

TEST(Symplectic, CounterSqueezingGeneratorIsNot) {
  const auto rep = check_symplectic(kind("counter_squeezing_qqpp", 1.0));
  EXPECT_FALSE(rep.is_symplectic);
  EXPECT_EQ(rep.defect, 2.0);
}

TEST(MinimalNoise, SymmetricDriftNeedsNone) {
  oracle::Random rng(43);
  EXPECT_EQ(minimal_thermal_noise(make(rng.symmetric(6), Matrix::Zero(6, 6))), 0.0);
}

TEST(MinimalNoise, Amplification) {
  for (double eta : {-1.5, 0.1, 1.0}) {
    EXPECT_NEAR(minimal_thermal_noise(make(eta * basis2::omega(), kZ2)), 2 * std::abs(eta), 1e-14);
  }
}

TEST(MinimalNoise, CounterRotation) {
  for (double nu : {0.5, -2.0}) {
    EXPECT_NEAR(minimal_thermal_noise(kind("counter_rotation", nu)), 2 * std::abs(nu), 1e-13);
  }
}

TEST(MinimalNoise, AddingItMakesGeneratorCP) {
  oracle::Random rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = make(rng.matrix(4, 4), rng.symmetric(4));
    const double c = minimal_thermal_noise(g);
    const auto rep = check_cp_generator(g.with_extra_noise(c * Matrix::Identity(4, 4)));
    EXPECT_TRUE(rep.passes);
    EXPECT_NEAR(rep.min_eig, 0.0, 1e-12);
  }
}

TEST(EnergyRate, RotationIsZero) {
  oracle::Random rng(45);
  auto [mean, cov] = rng.valid_state(1);
  EXPECT_NEAR(energy_flow_rate(kind("rotation", 1.7), GaussianState(SymplecticSpace(1), mean, cov)), 0.0,
              1e-14);
}

TEST(EnergyRate, ThermalNoiseIsHalfTraceC) {
  // d/dt Tr(cov/2) = Tr(C)/2 = c_t for C = c_t 1_2.
  const double ct = 0.75;
  oracle::Random rng(46);
  auto [mean, cov] = rng.valid_state(1);
  const GaussianState s(SymplecticSpace(1), mean, cov);
  const auto g = kind("thermal_noise", ct);
  EXPECT_DOUBLE_EQ(energy_flow_rate(g, s), ct);

  const double h = 1e-4;
  const double fd = (mean_energy(mean, cov + h * g.c()) - mean_energy(mean, cov - h * g.c())) / (2 * h);
  EXPECT_NEAR(energy_flow_rate(g, s), fd, 1e-10);
}

TEST(EnergyRate, DisplacementAtOriginIsZero) {
  EXPECT_EQ(energy_flow_rate(kind("displacement_q", 2.0), vacuum_state(SymplecticSpace(1))), 0.0);
}

TEST(EnergyRate, MatchesFiniteDifference) {
  oracle::Random rng(47);
  const SymplecticSpace space(2);
  const Generator g(space, rng.matrix(4, 4), rng.vector(4), rng.symmetric(4));
  auto [mean, cov] = rng.valid_state(2);
  const GaussianState s(space, mean, cov);
  const double h = 1e-4;
  const auto plus = apply_channel(solve_channel(g, h), s);
  const auto minus = apply_channel(solve_channel(g, -h), s);
  const double fd = (mean_energy(plus.mean(), plus.cov()) - mean_energy(minus.mean(), minus.cov())) / (2 * h);
  const double rate = energy_flow_rate(g, s);
  EXPECT_LT(std::abs(rate - fd), 1e-6 * std::max(1.0, std::abs(fd)));
}

TEST(VolumeRate, SymplecticIsZero) {
  oracle::Random rng(48);
  auto [mean, cov] = rng.valid_state(2);
  EXPECT_NEAR(volume_rate(make(rng.symmetric(4), Matrix::Zero(4, 4)), GaussianState(SymplecticSpace(2), mean, cov)),
              0.0, 1e-12);
}

TEST(VolumeRate, AmplificationOnVacuum) {
  const double eta = 0.4;
  EXPECT_NEAR(volume_rate(make(eta * basis2::omega(), kZ2), vacuum_state(SymplecticSpace(1))), -2 * eta, 1e-15);
}

TEST(VolumeRate, ThermalNoiseOnVacuum) {
  EXPECT_DOUBLE_EQ(volume_rate(kind("thermal_noise", 0.3), vacuum_state(SymplecticSpace(1))), 0.3);
}

TEST(VolumeRate, CounterRotationIsZero) {
  oracle::Random rng(49);
  auto [mean, cov] = rng.valid_state(2);
  EXPECT_NEAR(volume_rate(kind("counter_rotation", 1.0), GaussianState(SymplecticSpace(2), mean, cov)), 0.0,
              1e-12);
}

TEST(VolumeRate, SingularCovarianceIsRejected) {
  const GaussianState s(SymplecticSpace(1), Vector::Zero(2), Matrix{{1.0, 0.0}, {0.0, 0.0}});
  EXPECT_THROW(volume_rate(kind("rotation", 1.0), s), std::domain_error);
}

TEST(Purification, RelaxationCanPurify) {
  const double eta = 0.6;
  const auto rep = purification_report(make(eta * basis2::omega(), 2 * eta * kI2));
  EXPECT_DOUBLE_EQ(rep.trace_omega_a, -2 * eta);
  EXPECT_TRUE(rep.can_purify);
  ASSERT_TRUE(rep.nu_bound.has_value());
}

TEST(Purification, SymmetricDriftCannot) {
  oracle::Random rng(50);
  const auto rep = purification_report(make(rng.symmetric(4), rng.psd(4)));
  EXPECT_NEAR(rep.trace_omega_a, 0.0, 1e-15);
  EXPECT_FALSE(rep.can_purify);
  EXPECT_FALSE(rep.nu_bound.has_value());
}

TEST(Purification, BoundWithMinimalNoise) {
  const auto rep = purification_report(make(basis2::omega(), 2 * kI2));
  ASSERT_TRUE(rep.nu_bound.has_value());
  EXPECT_DOUBLE_EQ(*rep.nu_bound, 1.0);
  EXPECT_DOUBLE_EQ(*rep.nu_thermal, 1.0);
}
