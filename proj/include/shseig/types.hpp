#pragma once

#include <array>
#include <vector>

namespace shseig {

// Scalar coefficients of the two-point boundary problem on [0, T].
struct Coefficients {
  double H11 = 0.0;
  double H12 = 0.0;
  double H13 = 0.0;
  double H21 = 0.0;
  double H22 = 0.0;
  double H23 = 0.0;
  double H31 = 0.0;
  double H32 = 0.0;
  double H33 = 0.0;
  double T = 0.0;  // time horizon, must be positive
};

// rho = 1 - lambda ties the spectral parameter to the eigenvalue.
struct SpectralParameter {
  double rho = 0.0;
  double lambda = 0.0;

  static constexpr SpectralParameter from_rho(double rho) { return {rho, 1.0 - rho}; }
  static constexpr SpectralParameter from_lambda(double lambda) { return {1.0 - lambda, lambda}; }
};

struct MonotonicityReport {
  double alpha = 0.0;                   // largest a with symmetric part <= -a I
  std::array<double, 3> eigenvalues{};  // of the symmetric part, descending
  bool passes = false;                  // alpha > 0
};

// Derived scalars shared by the Riccati and spectrum routines.
struct ReducedParams {
  double p = 0.0;
  double p_tilde = 0.0;   // -p = 2*H21 + H13^2
  double r = 0.0;         // -H11
  double q_tilde = 0.0;   // H11
  double rho0 = 0.0;      // H33*H13^2/H22
  double rho_star = 0.0;  // (2*H21 + H13^2)^2 / (4*H11*H22)
  double rho_max = 0.0;   // rho0 + rho_star; closed forms need rho < rho_max
  double T = 0.0;
};

// rho-dependent quadratic coefficients; r_tilde = -q always.
struct RhoCoeffs {
  double q = 0.0;
  double r_tilde = 0.0;
};

struct OmegaTheta {
  double omega = 0.0;  // sqrt(r*q - p^2/4), positive on the admissible range
  double theta = 0.0;  // atan(p / sqrt(4*r*q - p^2)), in (-pi/2, pi/2)
};

struct Mat3 {
  std::array<double, 9> m{};  // row-major
  double operator()(int i, int j) const { return m[3 * i + j]; }
};

using Vec3 = std::array<double, 3>;

struct TrajectorySample {
  double t = 0.0;
  double k = 0.0;
};

}  // namespace shseig
