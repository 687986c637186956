#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "netnl/channels.hpp"
#include "netnl/errors.hpp"
#include "netnl/network.hpp"
#include "netnl/random.hpp"
#include "netnl/tolerances.hpp"

namespace netnl {

// The criteria are sufficient, never necessary: a channel that fails a
// breaking criterion is not thereby preserving, and vice versa, so
// "inconclusive" is a first-class outcome.
enum class VerdictStatus { breaking_certified, preserving_certified, inconclusive };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::breaking_certified:
      return "breaking_certified";
    case VerdictStatus::preserving_certified:
      return "preserving_certified";
    case VerdictStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

// Explicit input states demonstrating that a channel fails to destroy
// detectability: the transformed scenario's bound must exceed the threshold.
struct WitnessScenario {
  NetworkScenario scenario;  // input states, before the channel acts
  UsagePattern pattern;
  double closed_form_bound = 0.0;
  double threshold = 1.0;
};

struct Verdict {
  std::string theorem_id;
  VerdictStatus status = VerdictStatus::inconclusive;
  double criterion_lhs = 0.0;
  double criterion_rhs = 0.0;
  double margin = 0.0;  // rhs - lhs for breaking criteria, lhs - threshold for preserving
  std::optional<WitnessScenario> witness;
  std::string notes;
  std::map<std::string, double> details;
};

// A preserving certification must come with a working witness; require a
// strict margin so the certificate survives recomputation.
inline constexpr double kMinWitnessMargin = 1e-9;

namespace detail {

inline bool any_three_equal(std::array<double, 4> m, double tol) {
  std::sort(m.begin(), m.end());
  return (m[2] - m[0] <= tol) || (m[3] - m[1] <= tol);
}

// The two non-unit s-factors coincide in every improper case; the largest
// one equals 1 by normalization.
inline double witness_decay_factor(const SFactors& f) {
  std::array<double, 3> s{f.s1, f.s2, f.s3};
  std::sort(s.begin(), s.end());
  return s[1];
}

inline Verdict unital_breaking_verdict(const std::string& id, const RandomUnitaryChannel& c,
                                       double rhs_general_exponent, double rhs_symmetric_exponent,
                                       const Tolerances& tol) {
  validate_random_unitary(c);
  Verdict v;
  v.theorem_id = id;
  const SFactors f = s_factors(c);
  const bool symmetric = any_three_equal(f.m, tol.equality);
  v.criterion_lhs = f.m_max - f.m_min;
  v.criterion_rhs = std::pow(2.0, symmetric ? rhs_symmetric_exponent : rhs_general_exponent);
  v.margin = v.criterion_rhs - v.criterion_lhs;
  if (!is_proper(c.alpha, tol.properness) || !is_proper(c.beta, tol.properness)) {
    v.status = VerdictStatus::inconclusive;
    v.notes = "alpha and beta must both be proper for this criterion";
    return v;
  }
  if (symmetric) v.notes = "three of the four squared parts coincide; sharper bound applies";
  v.status = v.criterion_lhs <= v.criterion_rhs ? VerdictStatus::breaking_certified
                                                : VerdictStatus::inconclusive;
  if (v.status == VerdictStatus::inconclusive && v.notes.empty())
    v.notes = "criterion not met; sufficiency-only, no conclusion";
  return v;
}

inline Verdict unital_preserving_verdict(const std::string& id, const RandomUnitaryChannel& c,
                                         Topology topology, int n, int k,
                                         const Tolerances& tol) {
  validate_random_unitary(c);
  if (n < (topology == Topology::star ? 2 : 1)) throw DomainError("invalid source count");
  if (k < 1 || k > 2 * n) throw DomainError("k must lie in 1..2n");
  Verdict v;
  v.theorem_id = id;
  v.criterion_rhs = 1.0;
  const auto case_id = improper_case(c, tol.properness);
  if (!case_id) {
    v.status = VerdictStatus::inconclusive;
    v.notes = (is_proper(c.alpha, tol.properness) && is_proper(c.beta, tol.properness))
                  ? "both parameters proper; preserving criterion does not apply"
                  : "parameters match none of the improper zero-structure cases";
    return v;
  }
  const double s = witness_decay_factor(s_factors(c));
  const double bound = topology == Topology::star
                           ? std::sqrt(1.0 + std::pow(s, 2.0 * k / n))
                           : std::sqrt(1.0 + std::pow(s, k));
  v.criterion_lhs = bound;
  v.margin = bound - 1.0;
  v.details["case"] = static_cast<double>(*case_id);
  v.details["decay_factor"] = s;
  if (bound > 1.0 + kMinWitnessMargin) {
    v.status = VerdictStatus::preserving_certified;
    WitnessScenario w;
    w.scenario = uniform_scenario(topology, n, bell_phi_minus());
    w.pattern = UsagePattern::from_uses(n, k);
    w.closed_form_bound = bound;
    w.threshold = 1.0;
    v.witness = std::move(w);
  } else {
    v.status = VerdictStatus::inconclusive;
    v.notes =
        "degenerate improper channel: the witness bound does not strictly exceed "
        "the threshold, so no certificate is issued";
  }
  return v;
}

inline void require_damping_theorem_class(const PauliDampingChannel& c) {
  if (c.lambda2 != 0.0)
    throw InvalidChannel("theorem criteria are stated for the lambda2 = 0 class");
  if (!pauli_damping_valid(c))
    throw InvalidChannel("damping channel parameters violate the validity constraints");
}

}  // namespace detail

// The two channel-parameter terms every non-unital criterion is built from:
// quadratic = (|t|+|l3|)^2 + l1^2 bounds one-sided sources,
// quartic   = 2 t^2 l1^2 + l1^4 + (|t|+|l3|)^4 bounds two-sided sources.
struct NonUnitalTerms {
  double quadratic = 0.0;
  double quartic = 0.0;
};

inline NonUnitalTerms nonunital_criterion_terms(const PauliDampingChannel& c) {
  const double abs_sum = std::abs(c.t) + std::abs(c.lambda3);
  const double l1sq = c.lambda1 * c.lambda1;
  NonUnitalTerms out;
  out.quadratic = abs_sum * abs_sum + l1sq;
  out.quartic = 2.0 * c.t * c.t * l1sq + l1sq * l1sq + std::pow(abs_sum, 4);
  return out;
}

// Unital channel used k times in a linear chain. Breaking certified when
// M_max - M_min <= 2^-(1+1/k), sharpened to 2^-(1/k) when any three of the
// squared parts coincide.
inline Verdict thm1_unital_linear(const RandomUnitaryChannel& c, int k,
                                  const Tolerances& tol = {}) {
  if (k < 1) throw DomainError("k must be at least 1");
  return detail::unital_breaking_verdict("thm1", c, -(1.0 + 1.0 / k), -1.0 / k, tol);
}

// Unital channel with both parameters improper (or one of them null) never
// breaks detectability on the linear chain; certified via an explicit
// witness of n phi- sources.
inline Verdict thm2_unital_preserving(const RandomUnitaryChannel& c, int n = 2, int k = 1,
                                      const Tolerances& tol = {}) {
  return detail::unital_preserving_verdict("thm2", c, Topology::linear, n, k, tol);
}

inline double depol_threshold_linear(int k) {
  if (k < 1) throw DomainError("k must be at least 1");
  return 1.0 - std::pow(2.0, -1.0 / k);
}

// Non-unital damping channel on the linear chain; independent of k and n.
inline Verdict thm3_nonunital_linear(const PauliDampingChannel& c) {
  detail::require_damping_theorem_class(c);
  const NonUnitalTerms terms = nonunital_criterion_terms(c);
  Verdict v;
  v.theorem_id = "thm3";
  v.criterion_lhs = std::max(terms.quadratic, terms.quartic);
  v.criterion_rhs = 1.0;
  v.margin = v.criterion_rhs - v.criterion_lhs;
  v.details["one_side_term"] = terms.quadratic;
  v.details["both_sides_term"] = terms.quartic;
  v.status = (terms.quadratic <= 1.0 && terms.quartic <= 1.0)
                 ? VerdictStatus::breaking_certified
                 : VerdictStatus::inconclusive;
  v.notes = "criterion independent of k and of the chain length";
  return v;
}

// Star-network analogue of thm1; the bound tightens with the source count n.
inline Verdict thm4_unital_star(const RandomUnitaryChannel& c, int k, int n,
                                const Tolerances& tol = {}) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (n < 2) throw DomainError("star networks need at least 2 sources");
  const double ratio = static_cast<double>(n) / (2.0 * k);
  return detail::unital_breaking_verdict("thm4", c, -(1.0 + ratio), -ratio, tol);
}

inline Verdict thm5_unital_preserving_star(const RandomUnitaryChannel& c, int n = 2, int k = 1,
                                           const Tolerances& tol = {}) {
  return detail::unital_preserving_verdict("thm5", c, Topology::star, n, k, tol);
}

inline double depol_threshold_star(int k, int n) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (n < 2) throw DomainError("star networks need at least 2 sources");
  return 1.0 - std::pow(2.0, -static_cast<double>(n) / (2.0 * k));
}

namespace detail {

inline void require_pattern_counts(int m1, int m2, int n) {
  if (m1 < 0 || m2 < 0) throw PatternMismatch("placement counts must be non-negative");
  if (m1 + m2 > n) throw PatternMismatch("placement counts exceed the number of sources");
  if (m1 + 2 * m2 < 1) throw PatternMismatch("the channel must act on at least one qubit");
}

}  // namespace detail

// Non-unital damping channel in a star network with m1 one-sided and m2
// two-sided sources: breaking certified when
// quartic^m2 * quadratic^m1 <= 2^((2-n)(m1+m2)/2).
inline Verdict thm6_nonunital_star(const PauliDampingChannel& c, int m1, int m2, int n) {
  detail::require_damping_theorem_class(c);
  if (n < 2) throw DomainError("star networks need at least 2 sources");
  detail::require_pattern_counts(m1, m2, n);
  const NonUnitalTerms terms = nonunital_criterion_terms(c);
  Verdict v;
  v.theorem_id = "thm6";
  v.criterion_lhs = std::pow(terms.quartic, m2) * std::pow(terms.quadratic, m1);
  v.criterion_rhs = std::pow(2.0, 0.5 * (2.0 - n) * (m1 + m2));
  v.margin = v.criterion_rhs - v.criterion_lhs;
  v.details["one_side_term"] = terms.quadratic;
  v.details["both_sides_term"] = terms.quartic;
  if (m2 == 0) v.details["reduced_rhs"] = std::pow(2.0, 0.5 * (2.0 - n));
  if (m1 == 0) v.details["reduced_rhs"] = std::pow(2.0, 0.5 * (2.0 - n));
  v.status = v.criterion_lhs <= v.criterion_rhs ? VerdictStatus::breaking_certified
                                                : VerdictStatus::inconclusive;
  if (m2 == 0)
    v.notes = "one-sided-only placement: criterion reduces to quadratic <= 2^((2-n)/2), "
              "independent of m1";
  else if (m1 == 0)
    v.notes = "two-sided-only placement: criterion reduces to quartic <= 2^((2-n)/2), "
              "independent of m2";
  return v;
}

// Preserving criterion for the damping class in a star network, certified by
// n phi+ sources.
inline Verdict thm7_nonunital_preserving_star(const PauliDampingChannel& c, int m1, int m2,
                                              int n) {
  detail::require_damping_theorem_class(c);
  if (n < 2) throw DomainError("star networks need at least 2 sources");
  detail::require_pattern_counts(m1, m2, n);
  const double l1sq = c.lambda1 * c.lambda1;
  const double l3sq = c.lambda3 * c.lambda3;
  const double two_sided = c.t * c.t + l3sq;  // squared top transfer entry
  const double y1 = std::max(l1sq, l3sq);
  const double y2 = std::min(l1sq, l3sq);
  const double y3 = std::max(l1sq * l1sq, two_sided * two_sided);
  const double y4 = std::min(l1sq * l1sq, two_sided * two_sided);
  const double e1 = static_cast<double>(m1) / n;
  const double e2 = static_cast<double>(m2) / n;
  const double bound = std::sqrt(std::pow(y1, e1) * std::pow(y3, e2) +
                                 std::pow(y2, e1) * std::pow(y4, e2));
  Verdict v;
  v.theorem_id = "thm7";
  v.criterion_lhs = bound;
  v.criterion_rhs = 1.0;
  v.margin = bound - 1.0;
  v.details["y1"] = y1;
  v.details["y2"] = y2;
  v.details["y3"] = y3;
  v.details["y4"] = y4;
  if (bound > 1.0 + kMinWitnessMargin) {
    v.status = VerdictStatus::preserving_certified;
    WitnessScenario w;
    w.scenario = uniform_scenario(Topology::star, n, bell_phi_plus());
    w.pattern = UsagePattern::from_counts(n, m1, m2);
    w.closed_form_bound = bound;
    w.threshold = 1.0;
    v.witness = std::move(w);
  } else {
    v.status = VerdictStatus::inconclusive;
    v.notes = "witness bound does not strictly exceed the threshold";
  }
  return v;
}

// Unital channel in the three-source star against the escalated full-network
// threshold; k is capped by the six distributed qubits.
inline Verdict thm8_unital_fnn(const RandomUnitaryChannel& c, int k,
                               const Tolerances& tol = {}) {
  if (k < 1 || k > 6) throw DomainError("k must lie in 1..6 for the three-source star");
  return detail::unital_breaking_verdict("thm8", c, -(4.0 * k + 9.0) / (6.0 * k),
                                         -(9.0 - 2.0 * k) / (6.0 * k), tol);
}

// Negative values mean every q in [0,1] is certified.
inline double depol_threshold_fnn(int k) {
  if (k < 1 || k > 6) throw DomainError("k must lie in 1..6 for the three-source star");
  return 1.0 - std::pow(2.0, (2.0 * k - 9.0) / (6.0 * k));
}

inline Verdict thm9_nonunital_fnn(const PauliDampingChannel& c, int m1, int m2) {
  detail::require_damping_theorem_class(c);
  detail::require_pattern_counts(m1, m2, 3);
  const NonUnitalTerms terms = nonunital_criterion_terms(c);
  Verdict v;
  v.theorem_id = "thm9";
  v.criterion_lhs = std::pow(terms.quartic, m2) * std::pow(terms.quadratic, m1);
  v.criterion_rhs = std::pow(2.0, (2.0 - 3.0 * (m1 + m2)) / 6.0);
  v.margin = v.criterion_rhs - v.criterion_lhs;
  v.details["one_side_term"] = terms.quadratic;
  v.details["both_sides_term"] = terms.quartic;
  v.status = v.criterion_lhs <= v.criterion_rhs ? VerdictStatus::breaking_certified
                                                : VerdictStatus::inconclusive;
  return v;
}

// Scan of the whole valid damping-channel region for points violating the
// linear-chain breaking criterion. Expected to find none.
struct ScanConfig {
  long samples = 100000;
  uint64_t seed = 0;
  double grid_step = 0.0;  // > 0 adds an exhaustive grid over [0,1]^3
};

struct ScanReport {
  long grid_checked = 0;
  long sampled_checked = 0;
  long violations = 0;
  double min_margin = 1.0;
  uint64_t seed = 0;
};

inline ScanReport conjecture1_scan(const ScanConfig& cfg) {
  if (cfg.samples < 1) throw DomainError("sample count must be at least 1");
  ScanReport report;
  report.seed = cfg.seed;
  auto check = [&report](const PauliDampingChannel& c) {
    const NonUnitalTerms terms = nonunital_criterion_terms(c);
    const double margin = std::min(1.0 - terms.quadratic, 1.0 - terms.quartic);
    report.min_margin = std::min(report.min_margin, margin);
    if (margin < -1e-12) ++report.violations;
  };
  if (cfg.grid_step > 0.0) {
    // t, l1, l3 >= 0 suffices: every criterion term depends only on |t|,
    // |l1|, |l3|.
    const int steps = static_cast<int>(std::floor(1.0 / cfg.grid_step + 0.5));
    for (int it = 0; it <= steps; ++it)
      for (int i1 = 0; i1 <= steps; ++i1)
        for (int i3 = 0; i3 <= steps; ++i3) {
          PauliDampingChannel c;
          c.t = it * cfg.grid_step;
          c.lambda1 = i1 * cfg.grid_step;
          c.lambda3 = i3 * cfg.grid_step;
          if (!pauli_damping_valid(c)) continue;
          ++report.grid_checked;
          check(c);
        }
  }
  for (long i = 0; i < cfg.samples; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<uint64_t>(i)));
    check(random_pauli_damping(rng));
    ++report.sampled_checked;
  }
  return report;
}

}  // namespace netnl
