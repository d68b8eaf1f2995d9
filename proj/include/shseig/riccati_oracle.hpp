#pragma once

#include <vector>

#include "shseig/riccati_closed_form.hpp"
#include "shseig/types.hpp"

namespace shseig {

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double k_switch = 1e3;    // |k| beyond which integration moves to w = 1/k
  double horizon = 0.0;     // maximum backward duration searched
  long max_steps = 10'000'000;
  double refine_tol = 0.0;  // final bracket width for the pole location

  static IntegratorOptions defaults(double T) {
    IntegratorOptions o;
    o.horizon = 50.0 * T;
    o.refine_tol = 1e-10 * T;
    return o;
  }
};

// Samples in ascending t; the last sample sits at (T, 0).
struct Trajectory {
  std::vector<TrajectorySample> samples;
};

struct BlowUpEstimate {
  double t_star = 0.0;
  double uncertainty = 0.0;  // half-width of the final bracket
  long chart_switches = 0;
  long steps = 0;
};

/// Integrates k' = q k^2 + p k + r backward from k(T) = 0 to t_end using an
/// embedded Runge-Kutta 5(4) pair in the variable s = T - t. Throws
/// BlowUpBeforeTEnd (with the partial trajectory) when the solution has a
/// pole above t_end.
Trajectory integrate_backward(const RiccatiCoeffs& rc, double T, double t_end,
                              const IntegratorOptions& opts);

/// Locates the blow-up time without using the closed forms: integrates
/// backward, moves to the reciprocal chart w = 1/k once |k| >= k_switch,
/// and brackets the transversal zero crossing of w on the dense output.
BlowUpEstimate detect_blowup(const RiccatiCoeffs& rc, double T,
                             const IntegratorOptions& opts);

// Max over interior samples of the normalized finite-difference defect
// |dk/dt - (q k^2 + p k + r)| / (1 + |q| k^2).
double residual_scan(const Trajectory& traj, const RiccatiCoeffs& rc);

struct CrosscheckReport {
  double primal_gap = 0.0;
  double dual_gap = 0.0;
  bool pass = false;  // both gaps <= 1e-6 * (1 + respective delta)
};

CrosscheckReport crosscheck(const ReducedParams& P, const Coefficients& c, double rho,
                            const IntegratorOptions& opts);

}  // namespace shseig
