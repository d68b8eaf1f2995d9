#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "shseig/errors.hpp"
#include "shseig/problem_model.hpp"
#include "test_instances.hpp"

using namespace shseig;
using testutil::instance_a;
using testutil::instance_b;
using testutil::Rng;

namespace {

// Independent oracle for the 3x3 eigenvalue routine: scan the characteristic
// cubic for sign changes inside the Gershgorin bounds and bisect each one.
struct CharPoly {
  double a11, a22, a33, a12, a13, a23;

  double eval(double x) const {
    const double b11 = a11 - x, b22 = a22 - x, b33 = a33 - x;
    return b11 * (b22 * b33 - a23 * a23) - a12 * (a12 * b33 - a23 * a13) +
           a13 * (a12 * a23 - b22 * a13);
  }
};

std::vector<double> brute_force_roots(const CharPoly& cp) {
  const double r1 = std::abs(cp.a12) + std::abs(cp.a13);
  const double r2 = std::abs(cp.a12) + std::abs(cp.a23);
  const double r3 = std::abs(cp.a13) + std::abs(cp.a23);
  const double lo = std::min({cp.a11 - r1, cp.a22 - r2, cp.a33 - r3}) - 1.0;
  const double hi = std::max({cp.a11 + r1, cp.a22 + r2, cp.a33 + r3}) + 1.0;
  const int kScan = 20000;
  std::vector<double> roots;
  double x_prev = lo, f_prev = cp.eval(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo + (hi - lo) * double(i) / kScan;
    const double f = cp.eval(x);
    if (f == 0.0) {
      roots.push_back(x);
    } else if (f_prev * f < 0.0) {
      double a = x_prev, b = x, fa = f_prev;
      for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = cp.eval(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x_prev = x;
    f_prev = f;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

CharPoly symmetric_part(const Coefficients& c) {
  return {-c.H11, c.H22, c.H33, 0.5 * (-c.H12 + c.H21), 0.5 * (-c.H13 + c.H31),
          0.5 * (c.H23 + c.H32)};
}

}  // namespace

TEST_CASE("monotonicity: diagonal instance gives alpha = 1") {
  const auto rep = validate_monotonicity(instance_a());
  CHECK(rep.passes);
  CHECK(rep.alpha == doctest::Approx(1.0).epsilon(1e-14));
  for (double e : rep.eigenvalues) CHECK(e == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("monotonicity: flipped H11 fails with alpha = -1") {
  Coefficients c = instance_a();
  c.H11 = -1.0;
  const auto rep = validate_monotonicity(c);
  CHECK_FALSE(rep.passes);
  CHECK(rep.alpha == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("monotonicity: coupled instance passes with alpha >= 0.5") {
  const auto rep = validate_monotonicity(instance_b());
  CHECK(rep.passes);
  CHECK(rep.alpha >= 0.5);
  // Cross-check against the brute-force characteristic-polynomial roots.
  const auto roots = brute_force_roots(symmetric_part(instance_b()));
  REQUIRE(roots.size() == 3);
  CHECK(rep.alpha == doctest::Approx(-roots[0]).epsilon(1e-10));
}

TEST_CASE("monotonicity: eigenvalues match the brute-force oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    Coefficients c;
    c.H11 = rng.uniform(-2.0, 2.0);
    c.H12 = rng.uniform(-1.0, 1.0);
    c.H13 = rng.uniform(-1.0, 1.0);
    c.H21 = rng.uniform(-1.0, 1.0);
    c.H22 = rng.uniform(-2.0, 2.0);
    c.H23 = rng.uniform(-1.0, 1.0);
    c.H31 = rng.uniform(-1.0, 1.0);
    c.H32 = rng.uniform(-1.0, 1.0);
    c.H33 = rng.uniform(-2.0, 2.0);
    c.T = 1.0;
    const auto rep = validate_monotonicity(c);
    CHECK(rep.eigenvalues[0] >= rep.eigenvalues[1]);
    CHECK(rep.eigenvalues[1] >= rep.eigenvalues[2]);
    const CharPoly cp = symmetric_part(c);
    // Every reported eigenvalue is a root of the characteristic cubic.
    const double scale = 1.0 + std::abs(cp.a11) + std::abs(cp.a22) + std::abs(cp.a33);
    for (double e : rep.eigenvalues)
      CHECK(std::abs(cp.eval(e)) <= 1e-10 * scale * scale * scale);
    const auto roots = brute_force_roots(cp);
    if (roots.size() == 3)
      CHECK(rep.eigenvalues[0] == doctest::Approx(roots[0]).epsilon(1e-8));
  }
}

TEST_CASE("passing monotonicity forces the diagonal sign pattern") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Coefficients c = testutil::random_passing_instance(rng);
    CHECK(c.H11 > 0.0);
    CHECK(c.H22 < 0.0);
    CHECK(c.H33 < 0.0);
  }
}

TEST_CASE("structure check") {
  Coefficients c;
  c.H33 = -1.0;
  c.H13 = 0.5;
  c.H23 = 0.5;
  c.H11 = 1.0;
  c.H22 = -1.0;
  c.T = 1.0;
  CHECK(structure_ok(c, 1e-12));
  CHECK_NOTHROW(validate_structure(c, 1e-12));

  c.H23 = 0.4;
  CHECK_FALSE(structure_ok(c));
  CHECK(structure_residual(c) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(validate_structure(c), StructureViolation);
  try {
    validate_structure(c);
  } catch (const StructureViolation& e) {
    CHECK(e.residual == doctest::Approx(0.1).epsilon(1e-12));
  }

  CHECK(structure_ok(instance_a()));  // both sides zero
}

TEST_CASE("reduced parameters: instance A") {
  const ReducedParams P = reduced_params(instance_a());
  CHECK(P.p == 0.0);
  CHECK(P.p_tilde == 0.0);
  CHECK(P.r == -1.0);
  CHECK(P.q_tilde == 1.0);
  CHECK(P.rho0 == 0.0);
  CHECK(P.rho_star == 0.0);
  CHECK(P.rho_max == 0.0);
  CHECK(P.T == instance_a().T);
}

TEST_CASE("reduced parameters: instance B") {
  const Coefficients c = instance_b();
  const ReducedParams P = reduced_params(c);
  const double p_tilde = 2.0 * 0.2 + 0.25;
  CHECK(P.p_tilde == doctest::Approx(p_tilde).epsilon(1e-15));
  CHECK(P.p == doctest::Approx(-p_tilde).epsilon(1e-15));
  CHECK(P.rho0 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(P.rho_star == doctest::Approx(-0.105625).epsilon(1e-14));
  CHECK(P.rho_max == doctest::Approx(0.144375).epsilon(1e-13));
  CHECK(P.rho_max == P.rho0 + P.rho_star);  // exact assembly
}

TEST_CASE("reduced parameters: degenerate coefficients rejected") {
  Coefficients c = instance_a();
  c.H11 = 0.0;
  CHECK_THROWS_AS(reduced_params(c), DegenerateCoefficients);
  c = instance_a();
  c.H22 = 0.0;
  CHECK_THROWS_AS(reduced_params(c), DegenerateCoefficients);
}

TEST_CASE("coefficients_at") {
  const Coefficients a = instance_a();
  const ReducedParams Pa = reduced_params(a);
  const RhoCoeffs at = coefficients_at(Pa, a, -1.0);
  CHECK(at.q == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(at.r_tilde == doctest::Approx(1.0).epsilon(1e-15));

  const Coefficients b = instance_b();
  const ReducedParams Pb = reduced_params(b);
  const RhoCoeffs bt = coefficients_at(Pb, b, 0.0);
  CHECK(bt.q == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(bt.r_tilde == doctest::Approx(0.25).epsilon(1e-15));

  // rho0 is the zero of q by construction.
  const RhoCoeffs z = coefficients_at(Pb, b, Pb.rho0);
  CHECK(std::abs(z.q) <= 1e-15 * (1.0 + std::abs(b.H33 * b.H13 * b.H13)));
}

TEST_CASE("q_tilde * r_tilde equals r * q") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Coefficients c = testutil::random_passing_instance(rng);
    const ReducedParams P = reduced_params(c);
    for (int i = 0; i < 20; ++i) {
      const double rho = rng.uniform(P.rho_max - 100.0, P.rho_max + 1.0);
      const RhoCoeffs rc = coefficients_at(P, c, rho);
      const double lhs = P.q_tilde * rc.r_tilde;
      const double rhs = P.r * rc.q;
      CHECK(std::abs(lhs - rhs) <= 1e-14 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("omega_theta: instance A at rho = -1") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);
  const OmegaTheta ot = omega_theta(P, c, -1.0);
  CHECK(ot.omega == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ot.theta == 0.0);  // p = 0 gives theta = 0 exactly
}

TEST_CASE("omega_theta: instance B at rho = 0") {
  const Coefficients c = instance_b();
  const ReducedParams P = reduced_params(c);
  const OmegaTheta ot = omega_theta(P, c, 0.0);
  // Reference digits recomputed with extended precision.
  CHECK(ot.omega == doctest::Approx(0.37996710383926659).epsilon(1e-12));
  CHECK(ot.theta == doctest::Approx(-0.70758443672535558).epsilon(1e-12));
}

TEST_CASE("omega_theta: inadmissible rho rejected, boundary included") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);
  CHECK_THROWS_AS(omega_theta(P, c, 0.0), InadmissibleRho);   // rho_max = 0
  CHECK_THROWS_AS(omega_theta(P, c, 1.0), InadmissibleRho);
  CHECK_NOTHROW(omega_theta(P, c, -1e-6));
}

TEST_CASE("omega_theta: range, sign, and monotonicity properties") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Coefficients c = testutil::random_passing_instance(rng);
    const ReducedParams P = reduced_params(c);
    double prev_omega = -1.0;
    for (int i = 30; i >= 1; --i) {  // increasing rho toward rho_max
      const double rho = P.rho_max - 0.1 * i;
      const OmegaTheta ot = omega_theta(P, c, rho);
      CHECK(ot.omega > 0.0);
      CHECK(ot.theta > -1.5707963267948966);
      CHECK(ot.theta < 1.5707963267948966);
      if (P.p == 0.0) CHECK(ot.theta == 0.0);
      if (P.p != 0.0) CHECK(((ot.theta > 0.0) == (P.p > 0.0)));
      if (prev_omega > 0.0) CHECK(ot.omega < prev_omega);  // strictly decreasing
      prev_omega = ot.omega;
    }
  }
}

TEST_CASE("dual hamiltonian: examples") {
  const Coefficients a = instance_a();
  const Mat3 m1 = dual_hamiltonian(a, -2.0);
  const double expected1[9] = {-2, 0, 0, 0, 0, 0, 0, 0, -1};
  for (int i = 0; i < 9; ++i) CHECK(m1.m[i] == doctest::Approx(expected1[i]).epsilon(1e-15));

  const Mat3 m2 = dual_hamiltonian(a, 0.0);
  const double expected2[9] = {0, 0, 0, 0, 0, 0, 0, 0, -1};
  for (int i = 0; i < 9; ++i) CHECK(m2.m[i] == doctest::Approx(expected2[i]).epsilon(1e-15));

  const Mat3 m3 = dual_hamiltonian(instance_b(), 0.0);
  const double expected3[9] = {0, -0.2, 0, -0.2, 0, 0, 0, 0, -1};
  for (int i = 0; i < 9; ++i) CHECK(m3.m[i] == doctest::Approx(expected3[i]).epsilon(1e-15));

  Coefficients degenerate = instance_a();
  degenerate.H33 = 0.0;
  CHECK_THROWS_AS(dual_hamiltonian(degenerate, 0.0), DegenerateCoefficients);
}

TEST_CASE("dual hamiltonian: symmetric to zero rounding") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Coefficients c = testutil::random_passing_instance(rng);
    const Mat3 m = dual_hamiltonian(c, rng.uniform(-5.0, 5.0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(m(i, j) == m(j, i));
  }
}

TEST_CASE("dual solution map: examples and linearity") {
  const Vec3 v1 = dual_solution_map(instance_a(), {1.0, 2.0, 3.0});
  CHECK(v1[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(v1[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v1[2] == doctest::Approx(-3.0).epsilon(1e-15));

  const Vec3 v2 = dual_solution_map(instance_b(), {0.0, 0.0, 0.0});
  for (double x : v2) CHECK(x == 0.0);

  const Vec3 v3 = dual_solution_map(instance_b(), {1.0, 0.0, 0.0});
  CHECK(v3[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v3[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v3[2] == doctest::Approx(0.0).epsilon(1e-15));

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Coefficients c = testutil::random_passing_instance(rng);
    const Vec3 u{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const Vec3 v{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    const Vec3 comb{a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]};
    const Vec3 lhs = dual_solution_map(c, comb);
    const Vec3 mu = dual_solution_map(c, u);
    const Vec3 mv = dual_solution_map(c, v);
    for (int i = 0; i < 3; ++i) {
      const double rhs = a * mu[i] + b * mv[i];
      CHECK(std::abs(lhs[i] - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("coefficient validation") {
  CHECK_NOTHROW(validate_coefficients(instance_a()));
  Coefficients c = instance_a();
  c.T = 0.0;
  CHECK_THROWS_AS(validate_coefficients(c), std::invalid_argument);
  c = instance_a();
  c.H22 = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_coefficients(c), std::invalid_argument);
}
