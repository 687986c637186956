#include "netnl/network.hpp"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "netnl/random.hpp"

using namespace netnl;

TEST(network, usage_pattern_counts) {
  UsagePattern u = UsagePattern::from_counts(4, 2, 1);
  EXPECT_EQ(u.m1(), 2);
  EXPECT_EQ(u.m2(), 1);
  EXPECT_EQ(u.k(), 4);
  EXPECT_EQ(u.placement[0], Placement::one_side_a);
  EXPECT_EQ(u.placement[2], Placement::both_sides);
  EXPECT_EQ(u.placement[3], Placement::none);

  EXPECT_THROW(UsagePattern::from_counts(2, 2, 1), PatternMismatch);
  EXPECT_THROW(UsagePattern::from_counts(0, 0, 0), PatternMismatch);
  EXPECT_THROW(UsagePattern::from_uses(2, 5), PatternMismatch);

  // k > n forces two-sided placements
  u = UsagePattern::from_uses(2, 3);
  EXPECT_EQ(u.m2(), 1);
  EXPECT_EQ(u.m1(), 1);
  EXPECT_EQ(u.k(), 3);
}

TEST(network, apply_usage_all_none_is_identity) {
  NetworkScenario sc = uniform_scenario(Topology::linear, 3, bell_phi_plus());
  const UsagePattern u = UsagePattern::from_counts(3, 0, 0);
  const NetworkScenario out = apply_usage(ru_to_affine(depolarizing(0.7)), sc, u);
  for (int j = 0; j < 3; ++j)
    EXPECT_NEAR((out.states[j].W - sc.states[j].W).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(network, apply_usage_scales_touched_source) {
  const double q = 0.35;
  NetworkScenario sc = uniform_scenario(Topology::linear, 2, bell_phi_plus());
  UsagePattern u;
  u.n = 2;
  u.placement = {Placement::one_side_a, Placement::none};
  const NetworkScenario out = apply_usage(ru_to_affine(depolarizing(q)), sc, u);
  EXPECT_NEAR((out.states[0].W - (1.0 - q) * sc.states[0].W).cwiseAbs().maxCoeff(), 0.0, 1e-13);
  EXPECT_NEAR((out.states[1].W - sc.states[1].W).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(network, apply_usage_rejects_mismatched_pattern) {
  NetworkScenario sc = uniform_scenario(Topology::linear, 2, bell_phi_plus());
  EXPECT_THROW(apply_usage(QubitChannelAffine::identity(), sc, UsagePattern::from_counts(3, 0, 0)),
               PatternMismatch);
}

TEST(network, fnn_scenario_needs_three_sources) {
  EXPECT_THROW(uniform_scenario(Topology::star_fnn3, 1, bell_phi_plus()), TopologyError);
  EXPECT_THROW(uniform_scenario(Topology::star_fnn3, 2, bell_phi_plus()), TopologyError);
}

TEST(network, bound_linear_examples) {
  BoundReport r = bound_linear(uniform_scenario(Topology::linear, 2, bell_phi_plus()));
  EXPECT_NEAR(r.bound, std::sqrt(2.0), 1e-14);
  EXPECT_TRUE(r.violated);
  EXPECT_EQ(r.per_source.size(), 2u);

  BlochState half;
  half.W = 0.5 * Eigen::Matrix3d::Identity();
  r = bound_linear(uniform_scenario(Topology::linear, 3, half));
  EXPECT_NEAR(r.bound, 0.5, 1e-14);
  EXPECT_FALSE(r.violated);

  // one qubit of each pair dephased with p = 0.5
  NetworkScenario sc = uniform_scenario(Topology::linear, 2, bell_phi_minus());
  sc = apply_usage(ru_to_affine(dephasing(0.5)), sc, UsagePattern::from_counts(2, 2, 0));
  r = bound_linear(sc);
  EXPECT_NEAR(r.bound, std::sqrt(1.25), 1e-13);
  EXPECT_TRUE(r.violated);
}

TEST(network, bound_star_examples) {
  BoundReport r = bound_star(uniform_scenario(Topology::star, 2, bell_phi_plus()));
  EXPECT_NEAR(r.bound, std::sqrt(2.0), 1e-14);
  EXPECT_TRUE(r.violated);

  BlochState one_axis;
  one_axis.W = Eigen::Vector3d(0.8, 0.0, 0.0).asDiagonal();
  r = bound_star(uniform_scenario(Topology::star, 4, one_axis));
  EXPECT_NEAR(r.bound, 0.8, 1e-13);
  EXPECT_FALSE(r.violated);

  PauliDampingChannel c;
  c.t = 0.05;
  c.lambda1 = 0.9;
  c.lambda3 = 0.05;
  NetworkScenario sc = uniform_scenario(Topology::star, 14, bell_phi_plus());
  sc = apply_usage(nu_to_affine(c), sc, UsagePattern::from_counts(14, 4, 0));
  r = bound_star(sc);
  EXPECT_NEAR(r.bound, 1.0592934348087060, 1e-12);
  EXPECT_TRUE(r.violated);
}

TEST(network, bound_fnn3_examples) {
  BoundReport r = bound_fnn3(uniform_scenario(Topology::star_fnn3, 3, bell_phi_plus()));
  EXPECT_NEAR(r.bound, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r.threshold, std::cbrt(2.0), 1e-14);
  EXPECT_TRUE(r.violated);

  BlochState damped;
  damped.W = 0.8 * Eigen::Matrix3d::Identity();
  r = bound_fnn3(uniform_scenario(Topology::star_fnn3, 3, damped));
  EXPECT_NEAR(r.bound, 1.1313708498984760, 1e-12);
  EXPECT_FALSE(r.violated);

  NetworkScenario wrong = uniform_scenario(Topology::star, 2, bell_phi_plus());
  wrong.topology = Topology::star_fnn3;
  EXPECT_THROW(bound_fnn3(wrong), TopologyError);
  EXPECT_THROW(bound_fnn3(uniform_scenario(Topology::linear, 3, bell_phi_plus())), TopologyError);
}

TEST(network, scaling_one_source_never_increases_bounds) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    NetworkScenario sc;
    sc.topology = Topology::linear;
    const int n = 2 + static_cast<int>(rng() % 3);
    for (int j = 0; j < n; ++j) sc.states.push_back(random_mixed_state(rng));
    const double before_lin = bound_linear(sc).bound;
    NetworkScenario star = sc;
    star.topology = Topology::star;
    const double before_star = bound_star(star).bound;

    const size_t which = rng() % static_cast<size_t>(n);
    const double c = u01(rng);
    sc.states[which].W *= c;
    star.states[which].W *= c;
    EXPECT_LE(bound_linear(sc).bound, before_lin + 1e-12);
    EXPECT_LE(bound_star(star).bound, before_star + 1e-12);
  }
}

TEST(network, bounds_are_permutation_invariant) {
  std::mt19937_64 rng(29);
  NetworkScenario sc;
  sc.topology = Topology::star;
  for (int j = 0; j < 4; ++j) sc.states.push_back(random_mixed_state(rng));
  const double before = bound_star(sc).bound;
  std::reverse(sc.states.begin(), sc.states.end());
  EXPECT_NEAR(bound_star(sc).bound, before, 1e-13);

  sc.topology = Topology::linear;
  const double lin_before = bound_linear(sc).bound;
  std::rotate(sc.states.begin(), sc.states.begin() + 1, sc.states.end());
  EXPECT_NEAR(bound_linear(sc).bound, lin_before, 1e-13);
}

TEST(network, violated_flag_matches_recomputation) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    NetworkScenario sc;
    sc.topology = trial % 2 == 0 ? Topology::linear : Topology::star;
    const int n = 2 + static_cast<int>(rng() % 2);
    for (int j = 0; j < n; ++j)
      sc.states.push_back(trial % 3 == 0 ? bell_phi_plus() : random_mixed_state(rng));
    const BoundReport r = network_bound(sc);
    EXPECT_EQ(r.violated, r.bound > r.threshold);
  }
}
