#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "netnl/errors.hpp"
#include "netnl/pauli.hpp"
#include "netnl/tolerances.hpp"

namespace netnl {

// Two-qubit density operator, 4x4 in the computational basis |00>,|01>,|10>,|11>.
struct DensityOperator {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
};

// Two-qubit state in Bloch form: local vectors a, b and 3x3 correlation tensor W,
// rho = (1/4)(I + a.sigma x I + I x b.sigma + sum_ij W_ij sigma_i x sigma_j).
struct BlochState {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  Eigen::Matrix3d W = Eigen::Matrix3d::Zero();
};

// Descending singular values of a correlation tensor.
struct OrderedSingulars {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
};

inline double min_hermitian_eigenvalue(const Eigen::Matrix4cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
  return es.eigenvalues().minCoeff();
}

inline void validate_density(const DensityOperator& rho, const Tolerances& tol = {}) {
  const double herm_dev = (rho.m - rho.m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol.hermiticity)
    throw InvalidDensity("matrix is not Hermitian within tolerance");
  const double trace_dev = std::abs(rho.m.trace() - cplx(1.0, 0.0));
  if (trace_dev > tol.hermiticity)
    throw InvalidDensity("trace differs from 1 beyond tolerance");
  if (min_hermitian_eigenvalue((rho.m + rho.m.adjoint()) / 2.0) < -tol.psd)
    throw InvalidDensity("matrix has an eigenvalue below the PSD slack");
}

// Pauli expectations of a valid density operator: a_i = Tr[rho sigma_i x I],
// b_j = Tr[rho I x sigma_j], W_ij = Tr[rho sigma_i x sigma_j].
inline BlochState to_bloch(const DensityOperator& rho, const Tolerances& tol = {}) {
  validate_density(rho, tol);
  BlochState s;
  for (int i = 1; i <= 3; ++i) {
    s.a(i - 1) = (rho.m * kron(pauli(i), pauli(0))).trace().real();
    s.b(i - 1) = (rho.m * kron(pauli(0), pauli(i))).trace().real();
    for (int j = 1; j <= 3; ++j)
      s.W(i - 1, j - 1) = (rho.m * kron(pauli(i), pauli(j))).trace().real();
  }
  return s;
}

// from_bloch never rejects: hand-built tensors may fail positivity while the
// algebra on them is still meaningful, so the result carries a flag instead.
struct Reconstruction {
  DensityOperator rho;
  bool physical = true;
  double min_eigenvalue = 0.0;
};

inline Reconstruction from_bloch(const BlochState& s, const Tolerances& tol = {}) {
  Eigen::Matrix4cd m = kron(pauli(0), pauli(0));
  for (int i = 1; i <= 3; ++i) {
    m += s.a(i - 1) * kron(pauli(i), pauli(0));
    m += s.b(i - 1) * kron(pauli(0), pauli(i));
    for (int j = 1; j <= 3; ++j) m += s.W(i - 1, j - 1) * kron(pauli(i), pauli(j));
  }
  Reconstruction r;
  r.rho.m = m / 4.0;
  r.min_eigenvalue = min_hermitian_eigenvalue(r.rho.m);
  r.physical = r.min_eigenvalue >= -tol.psd;
  return r;
}

// Descending singular values of W, computed from the symmetric eigenproblem
// of W^T W. Round-off negatives are clamped to zero.
inline OrderedSingulars ordered_singulars(const Eigen::Matrix3d& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(w.transpose() * w);
  Eigen::Vector3d ev = es.eigenvalues();  // ascending
  OrderedSingulars out;
  out.e1 = std::sqrt(std::max(0.0, ev(2)));
  out.e2 = std::sqrt(std::max(0.0, ev(1)));
  out.e3 = std::sqrt(std::max(0.0, ev(0)));
  return out;
}

inline OrderedSingulars ordered_singulars(const BlochState& s) {
  return ordered_singulars(s.W);
}

// Named state presets. Correlation tensors:
//   phi+ : diag( 1,-1, 1)      psi+ : diag( 1, 1,-1)
//   phi- : diag(-1, 1, 1)      psi- : diag(-1,-1,-1)
inline BlochState bell_phi_plus() {
  BlochState s;
  s.W = Eigen::Vector3d(1, -1, 1).asDiagonal();
  return s;
}

inline BlochState bell_phi_minus() {
  BlochState s;
  s.W = Eigen::Vector3d(-1, 1, 1).asDiagonal();
  return s;
}

inline BlochState bell_psi_plus() {
  BlochState s;
  s.W = Eigen::Vector3d(1, 1, -1).asDiagonal();
  return s;
}

inline BlochState bell_psi_minus() {
  BlochState s;
  s.W = Eigen::Vector3d(-1, -1, -1).asDiagonal();
  return s;
}

inline BlochState max_mixed() { return BlochState{}; }

// Rotates a state by local unitaries so its correlation tensor becomes
// diagonal (possibly with signed entries). Proper rotations only, so the
// result is exactly as physical as the input.
inline BlochState diagonalize_correlation(const BlochState& s) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(s.W, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  Eigen::Matrix3d v = svd.matrixV();
  if (u.determinant() < 0) u.col(2) *= -1.0;
  if (v.determinant() < 0) v.col(2) *= -1.0;
  BlochState out;
  out.a = u.transpose() * s.a;
  out.b = v.transpose() * s.b;
  Eigen::Matrix3d d = u.transpose() * s.W * v;
  out.W = Eigen::Vector3d(d(0, 0), d(1, 1), d(2, 2)).asDiagonal();
  return out;
}

}  // namespace netnl
