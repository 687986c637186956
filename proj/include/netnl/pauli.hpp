#pragma once

#include <complex>

#include <Eigen/Dense>

#include "netnl/errors.hpp"

namespace netnl {

using cplx = std::complex<double>;

inline Eigen::Matrix2cd pauli_id() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, 1;
  return m;
}

inline Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

inline Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

// pauli(0) = I, pauli(1..3) = sigma_x, sigma_y, sigma_z.
inline Eigen::Matrix2cd pauli(int i) {
  switch (i) {
    case 0:
      return pauli_id();
    case 1:
      return pauli_x();
    case 2:
      return pauli_y();
    case 3:
      return pauli_z();
    default:
      throw DomainError("pauli index must be in 0..3");
  }
}

inline Eigen::Matrix2cd direction_dot_sigma(const Eigen::Vector3d& d) {
  return d.x() * pauli_x() + d.y() * pauli_y() + d.z() * pauli_z();
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Bell-basis kets ordered by outcome bits (flip bit, phase bit):
// index 0 -> (0,0), 1 -> (0,1), 2 -> (1,0), 3 -> (1,1).
inline Eigen::Vector4cd bell_ket(int index) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (index) {
    case 0:  // (|00> + |11>)/sqrt2
      v(0) = r;
      v(3) = r;
      break;
    case 1:  // (|00> - |11>)/sqrt2
      v(0) = r;
      v(3) = -r;
      break;
    case 2:  // (|01> + |10>)/sqrt2
      v(1) = r;
      v(2) = r;
      break;
    case 3:  // (|01> - |10>)/sqrt2
      v(1) = r;
      v(2) = -r;
      break;
    default:
      throw DomainError("bell index must be in 0..3");
  }
  return v;
}

inline Eigen::Matrix4cd bell_projector(int index) {
  const Eigen::Vector4cd v = bell_ket(index);
  return v * v.adjoint();
}

// Outcome bits assigned to a Bell-basis result: first bit distinguishes
// bit-flip (Psi) from no-flip (Phi), second distinguishes the phase sign.
inline int bell_flip_bit(int index) { return index >> 1; }
inline int bell_phase_bit(int index) { return index & 1; }

}  // namespace netnl
