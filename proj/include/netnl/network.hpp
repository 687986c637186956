#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "netnl/bloch.hpp"
#include "netnl/channels.hpp"
#include "netnl/errors.hpp"

namespace netnl {

enum class Topology { linear, star, star_fnn3 };

enum class Placement { none, one_side_a, one_side_b, both_sides };

// Per-source channel placement. k = m1 + 2 m2 qubits pass through the channel.
struct UsagePattern {
  int n = 1;
  std::vector<Placement> placement;

  int m1() const {
    int c = 0;
    for (auto p : placement)
      if (p == Placement::one_side_a || p == Placement::one_side_b) ++c;
    return c;
  }
  int m2() const {
    int c = 0;
    for (auto p : placement)
      if (p == Placement::both_sides) ++c;
    return c;
  }
  int k() const { return m1() + 2 * m2(); }

  // Canonical layout: m1 one-side placements first, then m2 both-sides.
  static UsagePattern from_counts(int n, int m1, int m2) {
    if (n < 1) throw PatternMismatch("pattern needs at least one source");
    if (m1 < 0 || m2 < 0 || m1 + m2 > n)
      throw PatternMismatch("placement counts exceed the number of sources");
    UsagePattern u;
    u.n = n;
    u.placement.assign(static_cast<size_t>(n), Placement::none);
    for (int i = 0; i < m1; ++i) u.placement[static_cast<size_t>(i)] = Placement::one_side_a;
    for (int i = 0; i < m2; ++i)
      u.placement[static_cast<size_t>(m1 + i)] = Placement::both_sides;
    return u;
  }

  // Splits k uses over n sources, filling one-side placements first.
  static UsagePattern from_uses(int n, int k) {
    if (k < 0 || k > 2 * n) throw PatternMismatch("k must lie in 0..2n");
    const int m2 = std::max(0, k - n);
    return from_counts(n, k - 2 * m2, m2);
  }

  void validate() const {
    if (n < 1) throw PatternMismatch("pattern needs at least one source");
    if (static_cast<int>(placement.size()) != n)
      throw PatternMismatch("placement list length differs from n");
  }
};

struct NetworkScenario {
  Topology topology = Topology::linear;
  std::vector<BlochState> states;

  int n() const { return static_cast<int>(states.size()); }
};

inline void validate_scenario(const NetworkScenario& sc) {
  if (sc.n() < 1) throw TopologyError("scenario needs at least one source");
  if (sc.topology == Topology::star_fnn3 && sc.n() != 3)
    throw TopologyError("the full-network certification bound exists only for n = 3");
}

struct BoundReport {
  double bound = 0.0;
  double threshold = 1.0;
  bool violated = false;
  std::vector<OrderedSingulars> per_source;
  std::string note;
};

// Transforms each source per its placement. Placement::none leaves the
// source untouched.
inline NetworkScenario apply_usage(const QubitChannelAffine& ch, const NetworkScenario& sc,
                                   const UsagePattern& u) {
  u.validate();
  if (u.n != sc.n()) throw PatternMismatch("pattern length differs from scenario size");
  NetworkScenario out;
  out.topology = sc.topology;
  out.states.reserve(sc.states.size());
  for (size_t i = 0; i < sc.states.size(); ++i) {
    switch (u.placement[i]) {
      case Placement::none:
        out.states.push_back(sc.states[i]);
        break;
      case Placement::one_side_a:
        out.states.push_back(apply_first(ch, sc.states[i]));
        break;
      case Placement::one_side_b:
        out.states.push_back(apply_second(ch, sc.states[i]));
        break;
      case Placement::both_sides:
        out.states.push_back(apply_both(ch, sc.states[i]));
        break;
    }
  }
  return out;
}

namespace detail {

struct SingularProducts {
  std::vector<OrderedSingulars> per_source;
  double prod1 = 1.0;
  double prod2 = 1.0;
  bool underflow = false;
};

inline SingularProducts singular_products(const NetworkScenario& sc) {
  SingularProducts out;
  for (const auto& s : sc.states) {
    const OrderedSingulars e = ordered_singulars(s.W);
    out.per_source.push_back(e);
    out.prod1 *= e.e1;
    out.prod2 *= e.e2;
  }
  constexpr double kUnderflow = 1e-300;
  if ((out.prod1 != 0.0 && out.prod1 < kUnderflow) ||
      (out.prod2 != 0.0 && out.prod2 < kUnderflow)) {
    out.underflow = true;
    if (out.prod1 < kUnderflow) out.prod1 = 0.0;
    if (out.prod2 < kUnderflow) out.prod2 = 0.0;
  }
  return out;
}

inline BoundReport make_report(double bound, double threshold, detail::SingularProducts&& sp) {
  BoundReport r;
  r.bound = bound;
  r.threshold = threshold;
  r.violated = bound > threshold;
  r.per_source = std::move(sp.per_source);
  if (sp.underflow) r.note = "singular-value product underflowed below 1e-300; treated as 0";
  return r;
}

}  // namespace detail

// Detection bound for the linear chain: sqrt(prod E_i1 + prod E_i2) over the
// per-source ordered singular values; exceeding 1 certifies detection.
inline BoundReport bound_linear(const NetworkScenario& sc) {
  if (sc.topology != Topology::linear)
    throw TopologyError("bound_linear requires a linear scenario");
  validate_scenario(sc);
  auto sp = detail::singular_products(sc);
  const double bound = std::sqrt(sp.prod1 + sp.prod2);
  return detail::make_report(bound, 1.0, std::move(sp));
}

// Star-network bound: sqrt((prod E_i1)^(2/n) + (prod E_i2)^(2/n)); threshold 1.
inline BoundReport bound_star(const NetworkScenario& sc) {
  if (sc.topology != Topology::star)
    throw TopologyError("bound_star requires a star scenario");
  validate_scenario(sc);
  auto sp = detail::singular_products(sc);
  const double ex = 2.0 / sc.n();
  const double bound = std::sqrt(std::pow(sp.prod1, ex) + std::pow(sp.prod2, ex));
  return detail::make_report(bound, 1.0, std::move(sp));
}

// Trilocal star bound against the escalated threshold 2^(1/3); exceeding it
// certifies full network nonlocality.
inline BoundReport bound_fnn3(const NetworkScenario& sc) {
  if (sc.topology != Topology::star_fnn3)
    throw TopologyError("bound_fnn3 requires a three-source star scenario");
  validate_scenario(sc);
  auto sp = detail::singular_products(sc);
  const double ex = 2.0 / 3.0;
  const double bound = std::sqrt(std::pow(sp.prod1, ex) + std::pow(sp.prod2, ex));
  return detail::make_report(bound, std::cbrt(2.0), std::move(sp));
}

inline BoundReport network_bound(const NetworkScenario& sc) {
  switch (sc.topology) {
    case Topology::linear:
      return bound_linear(sc);
    case Topology::star:
      return bound_star(sc);
    case Topology::star_fnn3:
      return bound_fnn3(sc);
  }
  throw TopologyError("unknown topology");
}

inline NetworkScenario uniform_scenario(Topology topology, int n, const BlochState& s) {
  NetworkScenario sc;
  sc.topology = topology;
  sc.states.assign(static_cast<size_t>(n), s);
  validate_scenario(sc);
  return sc;
}

}  // namespace netnl
