#pragma once

#include "shseig/types.hpp"

namespace shseig {

inline constexpr double kStructureTolDefault = 1e-12;

// Throws std::invalid_argument unless every entry is finite and T > 0.
void validate_coefficients(const Coefficients& c);

/// Eigenvalue check of the symmetric part of the rearranged coefficient
/// matrix [[-H11,-H12,-H13],[H21,H22,H23],[H31,H32,H33]]. The check passes
/// when the matrix is negative definite in the quadratic-form sense.
MonotonicityReport validate_monotonicity(const Coefficients& c);

// |H23 + H33*H13|; the pass criterion is residual <= tol*(1 + |H33*H13|).
double structure_residual(const Coefficients& c);
bool structure_ok(const Coefficients& c, double tol = kStructureTolDefault);
void validate_structure(const Coefficients& c, double tol = kStructureTolDefault);

// Throws DegenerateCoefficients when H11 = 0 or H22 = 0.
ReducedParams reduced_params(const Coefficients& c);

// q(rho) = -(rho*H22 - H33*H13^2) and r_tilde(rho) = -q(rho).
RhoCoeffs coefficients_at(const ReducedParams& P, const Coefficients& c, double rho);

// Throws InadmissibleRho unless rho < rho_max (strict).
OmegaTheta omega_theta(const ReducedParams& P, const Coefficients& c, double rho);

// Symmetric by construction; throws DegenerateCoefficients when H33 = 0.
Mat3 dual_hamiltonian(const Coefficients& c, double rho);

// Maps a dual-system state (x~, y~, z~) back to the original variables.
Vec3 dual_solution_map(const Coefficients& c, const Vec3& dual_xyz);

}  // namespace shseig
