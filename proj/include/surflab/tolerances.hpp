#pragma once

namespace surflab {

// Central tolerance record. The defaults are contractual: file formats and
// classification verdicts are defined relative to these values.
struct Tolerances {
  double machine_zero = 1e-300;     // division-by-zero magnitude threshold
  double branch_cut = 1e-12;        // distance to the excluded ray of log/sqrt
  double zero_test = 1e-9;          // tau_0 of the classification zero tests
  double guard_factor = 10.0;       // |c| in (tau_0, guard*tau_0) => ambiguous
  double on_singular_set = 1e-8;    // |lambda_hat| below this counts as "on set"
  double curve_projection = 1e-10;  // Newton target for traced samples
  double quadrature = 1e-12;        // per-segment integration tolerance
  double closedness_gate = 1e-6;    // refuse CMC integration above this residual
  double fd_step = 1e-4;            // default step of the finite-difference oracle
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace surflab
