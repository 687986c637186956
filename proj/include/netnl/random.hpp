#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "netnl/bloch.hpp"
#include "netnl/channels.hpp"

namespace netnl {

// splitmix64 step; used to derive independent per-sample seeds so results do
// not depend on evaluation order.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t index) {
  uint64_t s = base ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return splitmix64(s);
}

inline cplx standard_normal_cplx(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return cplx(normal(rng), normal(rng));
}

// Haar-random pure state from a normalized complex Gaussian 4-vector.
inline Eigen::Vector4cd haar_pure4(std::mt19937_64& rng) {
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = standard_normal_cplx(rng);
  return v / v.norm();
}

// Trace-normalized Wishart-style random mixed state.
inline Eigen::Matrix4cd random_mixed4(std::mt19937_64& rng) {
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = standard_normal_cplx(rng);
  Eigen::Matrix4cd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline BlochState random_pure_state(std::mt19937_64& rng) {
  const Eigen::Vector4cd psi = haar_pure4(rng);
  DensityOperator rho;
  rho.m = psi * psi.adjoint();
  return to_bloch(rho);
}

inline BlochState random_mixed_state(std::mt19937_64& rng) {
  DensityOperator rho;
  rho.m = random_mixed4(rng);
  return to_bloch(rho);
}

// Haar-random single-qubit unitary via a random unit quaternion.
inline Eigen::Matrix2cd haar_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector4d q;
  for (int i = 0; i < 4; ++i) q(i) = normal(rng);
  q.normalize();
  Eigen::Matrix2cd u;
  u << cplx(q(0), q(1)), cplx(q(2), q(3)), cplx(-q(2), q(3)), cplx(q(0), -q(1));
  return u;
}

inline RandomUnitaryChannel random_ru_channel(std::mt19937_64& rng) {
  Eigen::Vector4d v;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 4; ++i) v(i) = normal(rng);
  v.normalize();
  RandomUnitaryChannel c;
  c.alpha = cplx(v(0), v(1));
  c.beta = cplx(v(2), v(3));
  return c;
}

// Uniform draw from the valid damping-channel region via rejection from the
// bounding box. sign_free = true samples t, l1, l3 in [-1,1], else [0,1].
inline PauliDampingChannel random_pauli_damping(std::mt19937_64& rng, bool sign_free = true) {
  std::uniform_real_distribution<double> unif(sign_free ? -1.0 : 0.0, 1.0);
  PauliDampingChannel c;
  do {
    c.t = unif(rng);
    c.lambda1 = unif(rng);
    c.lambda3 = unif(rng);
  } while (!pauli_damping_valid(c));
  return c;
}

}  // namespace netnl
