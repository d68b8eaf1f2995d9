#pragma once

#include "shseig/types.hpp"

namespace shseig {

enum class RiccatiKind { primal, dual };

// k' = q k^2 + p k + r with terminal value k(T) = 0, integrated backward.
struct RiccatiCoeffs {
  double q = 0.0;
  double p = 0.0;
  double r = 0.0;
  RiccatiKind kind = RiccatiKind::primal;
};

RiccatiCoeffs primal_coefficients(const ReducedParams& P, const Coefficients& c, double rho);

// Dual coefficients are (q~, p~, r~(rho)) = (H11, -p, -q(rho)).
RiccatiCoeffs dual_coefficients(const ReducedParams& P, const Coefficients& c, double rho);

struct BlowUp {
  double t_star = 0.0;  // left endpoint of the maximal existence interval
  double delta = 0.0;   // T - t_star
  double omega = 0.0;
  double theta = 0.0;
};

struct Deltas {
  double delta = 0.0;
  double delta_tilde = 0.0;
};

// delta = (pi/2 + theta)/omega; throws InadmissibleRho for rho >= rho_max.
BlowUp blowup_primal(const ReducedParams& P, const Coefficients& c, double rho);

// delta = (pi/2 - theta)/omega.
BlowUp blowup_dual(const ReducedParams& P, const Coefficients& c, double rho);

// Convenience pair (delta, delta_tilde); their sum is pi/omega.
Deltas deltas(const ReducedParams& P, const Coefficients& c, double rho);

/// Tangent-form solution of the primal problem, valid on (t_star, T].
/// Throws OutsideDomain at or beyond the pole.
double k_closed(const ReducedParams& P, const Coefficients& c, double rho, double t);

/// Tangent-form solution of the dual problem, valid on (t_star~, T].
double k_tilde_closed(const ReducedParams& P, const Coefficients& c, double rho, double t);

}  // namespace shseig
