#include "shseig/riccati_closed_form.hpp"

#include <cmath>
#include <numbers>

#include "shseig/errors.hpp"
#include "shseig/problem_model.hpp"

namespace shseig {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

RiccatiCoeffs primal_coefficients(const ReducedParams& P, const Coefficients& c, double rho) {
  return {coefficients_at(P, c, rho).q, P.p, P.r, RiccatiKind::primal};
}

RiccatiCoeffs dual_coefficients(const ReducedParams& P, const Coefficients& c, double rho) {
  return {P.q_tilde, P.p_tilde, coefficients_at(P, c, rho).r_tilde, RiccatiKind::dual};
}

BlowUp blowup_primal(const ReducedParams& P, const Coefficients& c, double rho) {
  const auto [omega, theta] = omega_theta(P, c, rho);
  const double delta = (kHalfPi + theta) / omega;
  return {P.T - delta, delta, omega, theta};
}

BlowUp blowup_dual(const ReducedParams& P, const Coefficients& c, double rho) {
  const auto [omega, theta] = omega_theta(P, c, rho);
  const double delta = (kHalfPi - theta) / omega;
  return {P.T - delta, delta, omega, theta};
}

Deltas deltas(const ReducedParams& P, const Coefficients& c, double rho) {
  const auto [omega, theta] = omega_theta(P, c, rho);
  return {(kHalfPi + theta) / omega, (kHalfPi - theta) / omega};
}

double k_closed(const ReducedParams& P, const Coefficients& c, double rho, double t) {
  const BlowUp bu = blowup_primal(P, c, rho);
  if (!(t > bu.t_star) || !(t <= P.T)) throw OutsideDomain(t, bu.t_star, P.T);
  const double q = coefficients_at(P, c, rho).q;
  const double arg = bu.omega * (P.T - t) - bu.theta;
  return -(bu.omega / q) * std::tan(arg) - P.p / (2.0 * q);
}

double k_tilde_closed(const ReducedParams& P, const Coefficients& c, double rho, double t) {
  const BlowUp bu = blowup_dual(P, c, rho);
  if (!(t > bu.t_star) || !(t <= P.T)) throw OutsideDomain(t, bu.t_star, P.T);
  const double arg = bu.omega * (t - P.T) - bu.theta;
  return (bu.omega / P.q_tilde) * std::tan(arg) - P.p_tilde / (2.0 * P.q_tilde);
}

}  // namespace shseig
