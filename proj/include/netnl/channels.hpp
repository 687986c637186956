#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "netnl/bloch.hpp"
#include "netnl/errors.hpp"
#include "netnl/pauli.hpp"
#include "netnl/tolerances.hpp"

namespace netnl {

// Single-qubit channel in affine Bloch-transfer form: v -> t + T v.
// Trace preservation is structural (the transfer matrix's first row is
// implicitly (1, 0, 0, 0)); complete positivity is a testable property.
struct QubitChannelAffine {
  Eigen::Vector3d t = Eigen::Vector3d::Zero();
  Eigen::Matrix3d T = Eigen::Matrix3d::Identity();

  static QubitChannelAffine identity() { return QubitChannelAffine{}; }
};

// Equal-weight mixture of the four unitaries parameterized by alpha, beta
// with |alpha|^2 + |beta|^2 = 1. Covers every single-qubit unital channel.
struct RandomUnitaryChannel {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
};

// Non-unital class with shift (0,0,t) and contraction diag(l1, l2, l3).
// The validity constraints and all theorem criteria assume l2 = 0; the field
// is kept (default 0) so the full diagonal form stays representable.
struct PauliDampingChannel {
  double t = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};

struct SFactors {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::array<double, 4> m{};  // (Re a)^2, (Im a)^2, (Re b)^2, (Im b)^2
  double m_max = 0.0;
  double m_min = 0.0;
};

inline void validate_random_unitary(const RandomUnitaryChannel& c, double tol = 1e-9) {
  const double norm = std::norm(c.alpha) + std::norm(c.beta);
  if (std::abs(norm - 1.0) > tol)
    throw NormViolation("|alpha|^2 + |beta|^2 deviates from 1 beyond tolerance");
}

// Validity constraints for the lambda2 = 0 damping class:
//   |l1| <= 1,  |l3| + |t| <= 1,  l1^2 + t^2 <= (1 - |l3|)^2.
inline bool pauli_damping_valid(const PauliDampingChannel& c) {
  const double t = std::abs(c.t);
  const double l1 = std::abs(c.lambda1);
  const double l3 = std::abs(c.lambda3);
  return l1 <= 1.0 && l3 + t <= 1.0 &&
         c.lambda1 * c.lambda1 + c.t * c.t <= (1.0 - l3) * (1.0 - l3);
}

// Transfer form of a random unitary channel: zero shift and
// T = diag((a^2+conj(a)^2-b^2-conj(b)^2)/2, (a^2+conj(a)^2+b^2+conj(b)^2)/2,
//          |a|^2-|b|^2), kept signed.
inline QubitChannelAffine ru_to_affine(const RandomUnitaryChannel& c) {
  validate_random_unitary(c);
  const double x = c.alpha.real(), y = c.alpha.imag();
  const double u = c.beta.real(), v = c.beta.imag();
  QubitChannelAffine out;
  out.t.setZero();
  out.T = Eigen::Vector3d(x * x - y * y - u * u + v * v,
                          x * x - y * y + u * u - v * v,
                          x * x + y * y - u * u - v * v)
              .asDiagonal();
  return out;
}

inline SFactors s_factors(const RandomUnitaryChannel& c) {
  const QubitChannelAffine a = ru_to_affine(c);
  SFactors f;
  f.s1 = std::abs(a.T(0, 0));
  f.s2 = std::abs(a.T(1, 1));
  f.s3 = std::abs(a.T(2, 2));
  f.m = {c.alpha.real() * c.alpha.real(), c.alpha.imag() * c.alpha.imag(),
         c.beta.real() * c.beta.real(), c.beta.imag() * c.beta.imag()};
  f.m_max = *std::max_element(f.m.begin(), f.m.end());
  f.m_min = *std::min_element(f.m.begin(), f.m.end());
  return f;
}

inline RandomUnitaryChannel depolarizing(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("depolarizing q must lie in [0,1]");
  RandomUnitaryChannel c;
  c.alpha = cplx(std::sqrt(1.0 - 0.75 * q), std::sqrt(0.25 * q));
  c.beta = cplx(std::sqrt(0.25 * q), std::sqrt(0.25 * q));
  return c;
}

inline RandomUnitaryChannel dephasing(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("dephasing p must lie in [0,1]");
  RandomUnitaryChannel c;
  c.alpha = cplx(std::sqrt(1.0 - 0.5 * p), std::sqrt(0.5 * p));
  c.beta = cplx(0.0, 0.0);
  return c;
}

struct WeightedUnitary {
  double weight;
  Eigen::Matrix2cd u;
};

// The four mixing unitaries, weight 1/4 each.
inline std::array<WeightedUnitary, 4> ru_kraus(const RandomUnitaryChannel& c) {
  validate_random_unitary(c);
  const cplx a = c.alpha, b = c.beta;
  const cplx ac = std::conj(a), bc = std::conj(b);
  std::array<WeightedUnitary, 4> out;
  out[0].u << a, bc, -b, ac;
  out[1].u << a, -bc, b, ac;
  out[2].u << ac, b, -bc, a;
  out[3].u << ac, -b, bc, a;
  for (auto& k : out) k.weight = 0.25;
  return out;
}

// Affine form of the damping class: shift (0,0,t), T = diag(l1, l2, l3).
// The validity gate applies to the l2 = 0 class only; an explicit nonzero l2
// bypasses it (complete positivity can still be probed via the Choi matrix).
inline QubitChannelAffine nu_to_affine(const PauliDampingChannel& c) {
  if (c.lambda2 == 0.0 && !pauli_damping_valid(c))
    throw InvalidChannel("damping channel parameters violate the validity constraints");
  QubitChannelAffine out;
  out.t = Eigen::Vector3d(0.0, 0.0, c.t);
  out.T = Eigen::Vector3d(c.lambda1, c.lambda2, c.lambda3).asDiagonal();
  return out;
}

// Two-sided affine action on a Bloch state:
//   a' = t_A + T_A a,  b' = t_B + T_B b,
//   W' = T_A W T_B^T + t_A (T_B b)^T + (T_A a) t_B^T + t_A t_B^T.
inline BlochState apply(const QubitChannelAffine& ch_a, const QubitChannelAffine& ch_b,
                        const BlochState& s) {
  BlochState out;
  out.a = ch_a.t + ch_a.T * s.a;
  out.b = ch_b.t + ch_b.T * s.b;
  out.W = ch_a.T * s.W * ch_b.T.transpose() + ch_a.t * (ch_b.T * s.b).transpose() +
          (ch_a.T * s.a) * ch_b.t.transpose() + ch_a.t * ch_b.t.transpose();
  return out;
}

inline BlochState apply_first(const QubitChannelAffine& ch, const BlochState& s) {
  return apply(ch, QubitChannelAffine::identity(), s);
}

inline BlochState apply_second(const QubitChannelAffine& ch, const BlochState& s) {
  return apply(QubitChannelAffine::identity(), ch, s);
}

inline BlochState apply_both(const QubitChannelAffine& ch, const BlochState& s) {
  return apply(ch, ch, s);
}

// Choi matrix (channel x id acting on half of the maximally entangled pair).
// PSD iff the channel is completely positive.
inline Eigen::Matrix4cd choi_matrix(const QubitChannelAffine& ch) {
  const BlochState out = apply_first(ch, bell_phi_plus());
  return from_bloch(out).rho.m;
}

inline double choi_min_eigenvalue(const QubitChannelAffine& ch) {
  return min_hermitian_eigenvalue(choi_matrix(ch));
}

inline bool is_completely_positive(const QubitChannelAffine& ch, const Tolerances& tol = {}) {
  return choi_min_eigenvalue(ch) >= -tol.psd;
}

// A complex number is proper when neither its real nor its imaginary part
// vanishes (up to eps).
inline bool is_proper(cplx z, double eps = 1e-12) {
  return std::abs(z.real()) > eps && std::abs(z.imag()) > eps;
}

// Zero-structure cases for non-proper channel parameters. Returned ids:
//   1: Re a = Re b = 0    2: Im a = Im b = 0   3: Re a = Im b = 0
//   4: Im a = Re b = 0    5: a = 0             6: b = 0
inline std::optional<int> improper_case(const RandomUnitaryChannel& c, double eps = 1e-12) {
  const bool re_a = std::abs(c.alpha.real()) <= eps;
  const bool im_a = std::abs(c.alpha.imag()) <= eps;
  const bool re_b = std::abs(c.beta.real()) <= eps;
  const bool im_b = std::abs(c.beta.imag()) <= eps;
  if (re_a && im_a) return 5;
  if (re_b && im_b) return 6;
  if (re_a && re_b) return 1;
  if (im_a && im_b) return 2;
  if (re_a && im_b) return 3;
  if (im_a && re_b) return 4;
  return std::nullopt;
}

}  // namespace netnl
