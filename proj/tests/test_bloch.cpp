#include "netnl/bloch.hpp"

#include <random>

#include "gtest/gtest.h"
#include "netnl/random.hpp"

using namespace netnl;

namespace {

// Independent reconstruction of Pauli expectations: explicit 4x4 operators,
// no shared helpers with to_bloch beyond Eigen arithmetic.
double pauli_expectation(const Eigen::Matrix4cd& rho, int i, int j) {
  Eigen::Matrix4cd op;
  const Eigen::Matrix2cd si = pauli(i), sj = pauli(j);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) op.block<2, 2>(2 * r, 2 * c) = si(r, c) * sj;
  return (rho * op).trace().real();
}

Eigen::Matrix4cd phi_minus_matrix() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  m(3, 0) = -0.5;
  m(0, 3) = -0.5;
  return m;
}

Eigen::Matrix4cd phi_plus_matrix() {
  Eigen::Vector4cd ket = Eigen::Vector4cd::Zero();
  ket(0) = 1.0 / std::sqrt(2.0);
  ket(3) = 1.0 / std::sqrt(2.0);
  return ket * ket.adjoint();
}

}  // namespace

TEST(bloch, to_bloch_maximally_mixed) {
  DensityOperator rho;
  rho.m = Eigen::Matrix4cd::Identity() / 4.0;
  const BlochState s = to_bloch(rho);
  EXPECT_NEAR(s.a.norm(), 0.0, 1e-14);
  EXPECT_NEAR(s.b.norm(), 0.0, 1e-14);
  EXPECT_NEAR(s.W.cwiseAbs().maxCoeff(), 0.0, 1e-14);
}

TEST(bloch, to_bloch_phi_minus) {
  const DensityOperator rho{phi_minus_matrix()};
  const BlochState s = to_bloch(rho);
  // direct trace computation of the nine Pauli expectations
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      EXPECT_NEAR(s.W(i - 1, j - 1), pauli_expectation(rho.m, i, j), 1e-14);
  const Eigen::Matrix3d expected = Eigen::Vector3d(-1, 1, 1).asDiagonal();
  EXPECT_NEAR((s.W - expected).cwiseAbs().maxCoeff(), 0.0, 1e-14);
  EXPECT_NEAR(s.a.norm() + s.b.norm(), 0.0, 1e-14);
}

TEST(bloch, to_bloch_phi_plus) {
  const BlochState s = to_bloch(DensityOperator{phi_plus_matrix()});
  const Eigen::Matrix3d expected = Eigen::Vector3d(1, -1, 1).asDiagonal();
  EXPECT_NEAR((s.W - expected).cwiseAbs().maxCoeff(), 0.0, 1e-14);
}

TEST(bloch, to_bloch_rejects_invalid_input) {
  DensityOperator rho;
  rho.m = Eigen::Matrix4cd::Identity() / 4.0;
  rho.m(0, 1) = cplx(0.3, 0.1);  // not Hermitian
  EXPECT_THROW(to_bloch(rho), InvalidDensity);

  rho.m = Eigen::Matrix4cd::Identity() / 2.0;  // trace 2
  EXPECT_THROW(to_bloch(rho), InvalidDensity);

  rho.m = Eigen::Matrix4cd::Identity() / 4.0;
  rho.m(0, 0) = -0.25;
  rho.m(1, 1) = 0.75;  // negative eigenvalue, trace 1
  EXPECT_THROW(to_bloch(rho), InvalidDensity);
}

TEST(bloch, from_bloch_identity_case) {
  const Reconstruction r = from_bloch(BlochState{});
  EXPECT_TRUE(r.physical);
  EXPECT_NEAR((r.rho.m - Eigen::Matrix4cd::Identity() / 4.0).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(bloch, from_bloch_reconstructs_phi_plus) {
  const Reconstruction r = from_bloch(bell_phi_plus());
  EXPECT_TRUE(r.physical);
  EXPECT_NEAR((r.rho.m - phi_plus_matrix()).cwiseAbs().maxCoeff(), 0.0, 1e-14);
}

TEST(bloch, from_bloch_flags_nonphysical_tensor) {
  BlochState s;
  s.W = Eigen::Matrix3d::Identity();
  const Reconstruction r = from_bloch(s);
  EXPECT_FALSE(r.physical);
  EXPECT_NEAR(r.min_eigenvalue, -0.5, 1e-12);
}

TEST(bloch, ordered_singulars_examples) {
  OrderedSingulars e = ordered_singulars(Eigen::Matrix3d(Eigen::Vector3d(1, -1, 1).asDiagonal()));
  EXPECT_NEAR(e.e1, 1.0, 1e-14);
  EXPECT_NEAR(e.e2, 1.0, 1e-14);
  EXPECT_NEAR(e.e3, 1.0, 1e-14);

  e = ordered_singulars(Eigen::Matrix3d(Eigen::Vector3d(0.5, 0.0, 0.3).asDiagonal()));
  EXPECT_NEAR(e.e1, 0.5, 1e-14);
  EXPECT_NEAR(e.e2, 0.3, 1e-14);
  EXPECT_NEAR(e.e3, 0.0, 1e-14);

  Eigen::Matrix3d w = Eigen::Matrix3d::Zero();
  w(0, 0) = 0.2;
  w(2, 2) = 0.4;
  e = ordered_singulars(w);
  EXPECT_NEAR(e.e1, 0.4, 1e-14);
  EXPECT_NEAR(e.e2, 0.2, 1e-14);
  EXPECT_NEAR(e.e3, 0.0, 1e-14);
}

TEST(bloch, ordered_singulars_matches_general_svd) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Matrix3d w;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) w(i, j) = u(rng);
    const OrderedSingulars e = ordered_singulars(w);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(w);
    EXPECT_NEAR(e.e1, svd.singularValues()(0), 1e-10);
    EXPECT_NEAR(e.e2, svd.singularValues()(1), 1e-10);
    EXPECT_NEAR(e.e3, svd.singularValues()(2), 1e-10);
    EXPECT_GE(e.e1, e.e2);
    EXPECT_GE(e.e2, e.e3);
    EXPECT_GE(e.e3, 0.0);
  }
}

TEST(bloch, round_trip_preserves_singulars) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const BlochState s = (trial % 2 == 0) ? random_pure_state(rng) : random_mixed_state(rng);
    const BlochState back = to_bloch(from_bloch(s).rho);
    const OrderedSingulars before = ordered_singulars(s.W);
    const OrderedSingulars after = ordered_singulars(back.W);
    EXPECT_NEAR(before.e1, after.e1, 1e-12);
    EXPECT_NEAR(before.e2, after.e2, 1e-12);
    EXPECT_NEAR(before.e3, after.e3, 1e-12);
  }
}

TEST(bloch, local_unitary_invariance_of_singulars) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const BlochState s = random_mixed_state(rng);
    const Eigen::Matrix2cd u = haar_unitary2(rng);
    const Eigen::Matrix2cd v = haar_unitary2(rng);
    Eigen::Matrix4cd uv;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) uv.block<2, 2>(2 * r, 2 * c) = u(r, c) * v;
    DensityOperator rotated;
    rotated.m = uv * from_bloch(s).rho.m * uv.adjoint();
    const OrderedSingulars before = ordered_singulars(s.W);
    const OrderedSingulars after = ordered_singulars(to_bloch(rotated).W);
    EXPECT_NEAR(before.e1, after.e1, 1e-10);
    EXPECT_NEAR(before.e2, after.e2, 1e-10);
    EXPECT_NEAR(before.e3, after.e3, 1e-10);
  }
}

TEST(bloch, haar_random_pure_states_satisfy_invariants) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const BlochState s = random_pure_state(rng);
    EXPECT_LE(s.a.norm(), 1.0 + 1e-10);
    EXPECT_LE(s.b.norm(), 1.0 + 1e-10);
    EXPECT_LE(s.W.cwiseAbs().maxCoeff(), 1.0 + 1e-10);
    const OrderedSingulars e = ordered_singulars(s.W);
    EXPECT_LE(e.e1, 1.0 + 1e-10);
    EXPECT_GE(e.e3, 0.0);
    EXPECT_TRUE(from_bloch(s).physical);
  }
}

TEST(bloch, diagonalize_correlation_is_a_local_rotation) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const BlochState s = random_mixed_state(rng);
    const BlochState d = diagonalize_correlation(s);
    Eigen::Matrix3d off = d.W;
    off.diagonal().setZero();
    EXPECT_NEAR(off.cwiseAbs().maxCoeff(), 0.0, 1e-12);
    const OrderedSingulars before = ordered_singulars(s.W);
    const OrderedSingulars after = ordered_singulars(d.W);
    EXPECT_NEAR(before.e1, after.e1, 1e-12);
    EXPECT_NEAR(before.e2, after.e2, 1e-12);
    EXPECT_NEAR(before.e3, after.e3, 1e-12);
    EXPECT_TRUE(from_bloch(d).physical);
  }
}
