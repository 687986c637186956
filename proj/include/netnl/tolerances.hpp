#pragma once

namespace netnl {

// Central numeric tolerances. All comparison thresholds used across the
// library live here so they can be overridden in one place (CLI --tol,
// NETNL_TOL, or a config file).
struct Tolerances {
  double hermiticity = 1e-12;  // max entrywise |M - M^dagger|
  double psd = 1e-10;          // eigenvalues may dip this far below zero
  double equality = 1e-12;     // generic value comparisons
  double properness = 1e-12;   // |Re z|, |Im z| must exceed this to count as nonzero
};

}  // namespace netnl
