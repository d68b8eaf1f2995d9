#include "shseig/problem_model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "shseig/errors.hpp"

namespace shseig {
namespace {

// Eigenvalues of a symmetric 3x3 matrix, descending, via the trigonometric
// solution of the characteristic cubic. No iteration, deterministic.
std::array<double, 3> symmetric_eigenvalues(double a11, double a22, double a33,
                                            double a12, double a13, double a23) {
  const double off = a12 * a12 + a13 * a13 + a23 * a23;
  if (off == 0.0) {
    std::array<double, 3> eig{a11, a22, a33};
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
  }
  const double q = (a11 + a22 + a33) / 3.0;
  const double b11 = a11 - q, b22 = a22 - q, b33 = a33 - q;
  const double p2 = b11 * b11 + b22 * b22 + b33 * b33 + 2.0 * off;
  const double p = std::sqrt(p2 / 6.0);
  const double c11 = b11 / p, c22 = b22 / p, c33 = b33 / p;
  const double c12 = a12 / p, c13 = a13 / p, c23 = a23 / p;
  const double half_det = 0.5 * (c11 * (c22 * c33 - c23 * c23) -
                                 c12 * (c12 * c33 - c23 * c13) +
                                 c13 * (c12 * c23 - c22 * c13));
  const double r = std::clamp(half_det, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {e1, 3.0 * q - e1 - e3, e3};
}

}  // namespace

void validate_coefficients(const Coefficients& c) {
  const double entries[] = {c.H11, c.H12, c.H13, c.H21, c.H22,
                            c.H23, c.H31, c.H32, c.H33, c.T};
  for (double v : entries)
    if (!std::isfinite(v)) throw std::invalid_argument("coefficients must be finite");
  if (!(c.T > 0.0)) throw std::invalid_argument("time horizon T must be positive");
}

MonotonicityReport validate_monotonicity(const Coefficients& c) {
  // Symmetric part of [[-H11,-H12,-H13],[H21,H22,H23],[H31,H32,H33]].
  const double s12 = 0.5 * (-c.H12 + c.H21);
  const double s13 = 0.5 * (-c.H13 + c.H31);
  const double s23 = 0.5 * (c.H23 + c.H32);
  MonotonicityReport rep;
  rep.eigenvalues = symmetric_eigenvalues(-c.H11, c.H22, c.H33, s12, s13, s23);
  rep.alpha = -rep.eigenvalues[0];
  rep.passes = rep.alpha > 0.0;
  // A passing check pins the diagonal signs used throughout the reduction.
  assert(!rep.passes || (c.H11 > 0.0 && c.H22 < 0.0 && c.H33 < 0.0));
  return rep;
}

double structure_residual(const Coefficients& c) {
  return std::abs(c.H23 + c.H33 * c.H13);
}

bool structure_ok(const Coefficients& c, double tol) {
  return structure_residual(c) <= tol * (1.0 + std::abs(c.H33 * c.H13));
}

void validate_structure(const Coefficients& c, double tol) {
  if (!structure_ok(c, tol)) throw StructureViolation(structure_residual(c));
}

ReducedParams reduced_params(const Coefficients& c) {
  if (c.H11 == 0.0 || c.H22 == 0.0)
    throw DegenerateCoefficients("H11 and H22 must be nonzero");
  ReducedParams P;
  P.p_tilde = 2.0 * c.H21 + c.H13 * c.H13;
  P.p = -P.p_tilde;
  P.r = -c.H11;
  P.q_tilde = c.H11;
  P.rho0 = c.H33 * c.H13 * c.H13 / c.H22;
  P.rho_star = P.p_tilde * P.p_tilde / (4.0 * c.H11 * c.H22);
  P.rho_max = P.rho0 + P.rho_star;
  P.T = c.T;
  return P;
}

RhoCoeffs coefficients_at(const ReducedParams&, const Coefficients& c, double rho) {
  const double q = -(rho * c.H22 - c.H33 * c.H13 * c.H13);
  return {q, -q};
}

OmegaTheta omega_theta(const ReducedParams& P, const Coefficients& c, double rho) {
  if (!(rho < P.rho_max)) throw InadmissibleRho(rho, P.rho_max);
  const double q = coefficients_at(P, c, rho).q;
  const double disc = 4.0 * P.r * q - P.p * P.p;
  if (!(disc > 0.0)) throw InadmissibleRho(rho, P.rho_max);
  const double root = std::sqrt(disc);
  return {0.5 * root, std::atan(P.p / root)};
}

Mat3 dual_hamiltonian(const Coefficients& c, double rho) {
  if (c.H33 == 0.0) throw DegenerateCoefficients("H33 must be nonzero");
  const double inv = 1.0 / c.H33;
  const double a = inv * c.H32 * c.H32 - rho * c.H22;
  const double b = inv * c.H32 * c.H31 - c.H21;
  const double d = -inv * c.H32;
  const double e = inv * c.H31 * c.H31;
  const double f = -inv * c.H31;
  return Mat3{{a, b, d,
               b, e, f,
               d, f, inv}};
}

Vec3 dual_solution_map(const Coefficients& c, const Vec3& dual_xyz) {
  if (c.H33 == 0.0) throw DegenerateCoefficients("H33 must be nonzero");
  const double inv = 1.0 / c.H33;
  const double x = dual_xyz[1];
  const double y = dual_xyz[0];
  const double z =
      -inv * c.H32 * dual_xyz[0] - inv * c.H31 * dual_xyz[1] + inv * dual_xyz[2];
  return {x, y, z};
}

}  // namespace shseig
