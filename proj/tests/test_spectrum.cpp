#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "shseig/errors.hpp"
#include "shseig/problem_model.hpp"
#include "shseig/riccati_closed_form.hpp"
#include "shseig/spectrum.hpp"
#include "test_instances.hpp"

using namespace shseig;
using testutil::instance_a;
using testutil::instance_b;

namespace {

constexpr double kPi = std::numbers::pi;

// Out-of-range fixture: instance B stretched to T = 10 pushes the first
// counting root beyond the closed-form region while n >= 2 stay inside.
shseig::Coefficients instance_b_t10() {
  shseig::Coefficients c = instance_b();
  c.T = 10.0;
  return c;
}

}  // namespace

TEST_CASE("counting_value: instance A") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);
  CHECK(std::abs(counting_value(P, c, 1, -0.25)) <= 1e-12);
  CHECK(counting_value(P, c, 1, -4.0) ==
        doctest::Approx(-3.0 * kPi / 4.0).epsilon(1e-13));
  CHECK(std::abs(counting_value(P, c, 2, -2.25)) <= 1e-12);
  CHECK_THROWS_AS(counting_value(P, c, 1, 0.0), InadmissibleRho);
  CHECK_THROWS_AS(counting_value(P, c, 0, -1.0), std::invalid_argument);
}

TEST_CASE("counting function is strictly increasing in rho") {
  for (const Coefficients& c : {instance_a(), instance_b()}) {
    const ReducedParams P = reduced_params(c);
    for (const int n : {1, 3, 10}) {
      double prev = -1e300;
      for (int i = 0; i < 50; ++i) {
        const double gap = std::pow(10.0, 1.5 - 4.0 * double(i) / 49.0);
        const double f = counting_value(P, c, n, P.rho_max - gap);
        CHECK(f > prev);
        prev = f;
      }
    }
  }
}

TEST_CASE("solve_rho: instance A roots in closed form") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);
  const RootResult r1 = solve_rho(P, c, 1);
  CHECK(std::abs(r1.rho - (-0.25)) <= 1e-10);
  CHECK(r1.iterations > 0);
  const RootResult r3 = solve_rho(P, c, 3);
  CHECK(std::abs(r3.rho - (-6.25)) <= 1e-9);
}

TEST_CASE("solve_rho: instance B at T = 1 has all roots in range") {
  const Coefficients c = instance_b();
  const ReducedParams P = reduced_params(c);
  // Determined by the sign of F_1 just below rho_max.
  const double rho_hi = P.rho_max - 1e-9 * (1.0 + std::abs(P.rho_max));
  REQUIRE(counting_value(P, c, 1, rho_hi) > 0.0);
  for (const int n : {1, 5, 10}) {
    const RootResult r = solve_rho(P, c, n);
    CHECK(std::abs(counting_value(P, c, n, r.rho)) <= 1e-10 * P.T);
    CHECK(r.rho < P.rho_max);
  }
}

TEST_CASE("solve_rho: out-of-range root is reported, not invented") {
  const Coefficients c = instance_b_t10();
  const ReducedParams P = reduced_params(c);
  const double rho_hi = P.rho_max - 1e-9 * (1.0 + std::abs(P.rho_max));
  REQUIRE(counting_value(P, c, 1, rho_hi) < 0.0);
  CHECK_THROWS_AS(solve_rho(P, c, 1), RootOutOfClosedFormRange);
  CHECK_NOTHROW(solve_rho(P, c, 2));
}

TEST_CASE("eigenvalue: instance A closed-form values") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);
  const EigenvalueRecord e1 = eigenvalue(P, c, 1);
  CHECK(std::abs(e1.lambda - 1.25) <= 1e-10);
  CHECK(e1.lambda == 1.0 - e1.rho);  // exact tie
  CHECK(e1.status == SolveStatus::ok);

  const EigenvalueRecord e2 = eigenvalue(P, c, 2);
  CHECK(std::abs(e2.lambda - 3.25) <= 1e-10);
  CHECK(std::abs(e2.delta - kPi / 3.0) <= 1e-10);
  CHECK(std::abs(e2.delta_tilde - kPi / 3.0) <= 1e-10);

  const EigenvalueRecord e4 = eigenvalue(P, c, 4);
  CHECK(std::abs(e4.lambda - 13.25) <= 1e-10);
  CHECK(e4.ratio == doctest::Approx(13.25 / 16.0).epsilon(1e-10));
}

TEST_CASE("eigenvalue records satisfy their invariants") {
  for (const Coefficients& c : {instance_a(), instance_b()}) {
    const ReducedParams P = reduced_params(c);
    for (const int n : {1, 2, 7, 25, 60}) {
      const EigenvalueRecord rec = eigenvalue(P, c, n);
      CHECK(rec.counting_residual <= 1e-10 * P.T);
      CHECK(rec.chain_residual <= 1e-8 * P.T);
      CHECK(std::abs(n * rec.delta + (n - 1) * rec.delta_tilde - P.T) <= 1e-10 * P.T);
      // Expansion identity tying r*q(rho_n) - p^2/4 to lambda_n.
      const double rq = P.r * coefficients_at(P, c, rec.rho).q;
      const double lhs = rq - P.p * P.p / 4.0;
      const double rhs = (-c.H11 * c.H22) * rec.lambda + c.H11 * c.H22 -
                         c.H11 * c.H33 * c.H13 * c.H13 -
                         P.p_tilde * P.p_tilde / 4.0;
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rq)));
    }
  }
}

TEST_CASE("chain times: instance A") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);
  const auto chain2 = chain_times(P, c, 2, -2.25);
  REQUIRE(chain2.size() == 4);
  CHECK(chain2[0] == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(chain2[1] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
  CHECK(chain2[2] == doctest::Approx(kPi / 3.0).epsilon(1e-12));
  CHECK(std::abs(chain2[3]) <= 1e-12);

  const auto chain1 = chain_times(P, c, 1, -0.25);
  REQUIRE(chain1.size() == 2);
  CHECK(chain1[0] == kPi);
  CHECK(std::abs(chain1[1]) <= 1e-12);

  // Generic shape: t^0 = T, then strictly decreasing.
  const auto chain5 = chain_times(P, c, 5, solve_rho(P, c, 5).rho);
  CHECK(chain5[0] == P.T);
  for (std::size_t i = 1; i < chain5.size(); ++i) CHECK(chain5[i] < chain5[i - 1]);
}

TEST_CASE("spectrum sweep: instance A values and order") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);
  const auto recs = spectrum_sweep(P, c, 3);
  REQUIRE(recs.size() == 3);
  const double expected[3] = {1.25, 3.25, 7.25};
  for (int i = 0; i < 3; ++i) {
    CHECK(recs[i].n == i + 1);
    CHECK(recs[i].status == SolveStatus::ok);
    CHECK(std::abs(recs[i].lambda - expected[i]) <= 1e-9);
  }
  const auto one = spectrum_sweep(P, c, 1);
  REQUIRE(one.size() == 1);
}

TEST_CASE("spectrum sweep: out-of-range prefix is flagged") {
  const Coefficients c = instance_b_t10();
  const ReducedParams P = reduced_params(c);
  const auto recs = spectrum_sweep(P, c, 3);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].status == SolveStatus::out_of_closed_form_range);
  CHECK(std::isnan(recs[0].lambda));
  CHECK(recs[1].status == SolveStatus::ok);
  CHECK(recs[2].status == SolveStatus::ok);
  CHECK(to_string(recs[0].status) == std::string("out_of_closed_form_range"));
}

TEST_CASE("spectrum is strictly monotone in n") {
  for (const Coefficients& c : {instance_a(), instance_b()}) {
    const ReducedParams P = reduced_params(c);
    const auto recs = spectrum_sweep(P, c, 40);
    for (std::size_t i = 1; i < recs.size(); ++i) {
      CHECK(recs[i].rho < recs[i - 1].rho);
      CHECK(recs[i].lambda > recs[i - 1].lambda);
    }
  }
}

TEST_CASE("omega brackets hold for every computed index") {
  for (const Coefficients& c : {instance_a(), instance_b()}) {
    const ReducedParams P = reduced_params(c);
    const auto recs = spectrum_sweep(P, c, 60);
    for (const auto& rec : recs) {
      REQUIRE(rec.status == SolveStatus::ok);
      const double om = omega_theta(P, c, rec.rho).omega;
      const double lo = (rec.n - 1) * kPi / P.T;
      const double hi = rec.n * kPi / P.T;
      CHECK(om >= lo * (1.0 - 1e-12));
      CHECK(om <= hi * (1.0 + 1e-12));
      // Looser large-index bracket, checked from n = 10 on.
      if (rec.n >= 10) CHECK(om <= (2.0 * rec.n - 1.0) * kPi / P.T * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("delta ratio approaches one") {
  const Coefficients c = instance_b();  // p != 0 makes the ratio nontrivial
  const ReducedParams P = reduced_params(c);
  double prev = 1e300;
  for (int n = 50; n <= 80; n += 5) {
    const EigenvalueRecord rec = eigenvalue(P, c, n);
    const double dev = std::abs(rec.delta / rec.delta_tilde - 1.0);
    CHECK(dev <= 0.1);
    CHECK(dev <= prev + 1e-15);
    prev = dev;
  }
}

TEST_CASE("asymptotics report: instance A") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);
  const auto recs = spectrum_sweep(P, c, 60);
  const AsymptoticsReport rep = asymptotics(P, c, recs);
  CHECK(rep.lower_bound == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.upper_bound == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(rep.upper_bound / rep.lower_bound == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(rep.omega_brackets_ok);
  CHECK(rep.bounds_ok_from == 1);  // 1.25 already sits inside [0.5, 4]
  REQUIRE(rep.ratios.size() == 60);
  CHECK(rep.ratios.front().second == doctest::Approx(1.25).epsilon(1e-9));
  // lambda_50 / 50^2 = (1 + 99^2/4) / 2500
  CHECK(rep.ratios[49].second == doctest::Approx(0.9805).epsilon(1e-9));
  for (const auto& [n, ratio] : rep.ratios) {
    if (n >= 10) {
      CHECK(ratio >= rep.lower_bound * (1.0 - 1e-3));
      CHECK(ratio <= rep.upper_bound * (1.0 + 1e-3));
    }
  }
  CHECK_THROWS_AS(asymptotics(P, c, std::span<const EigenvalueRecord>{}), EmptyInput);
}

TEST_CASE("period classifier: instance A examples") {
  const Coefficients c = instance_a();
  const ReducedParams P = reduced_params(c);

  const PeriodVerdict v100 = period_classify(P, c, 100.0);
  REQUIRE(v100.n_greater_than.has_value());
  REQUIRE(v100.n_less_than.has_value());
  CHECK(*v100.n_greater_than == 4);
  CHECK(*v100.n_less_than == 15);
  CHECK_FALSE(v100.caveat.empty());

  const PeriodVerdict v125 = period_classify(P, c, 1.25);
  CHECK_FALSE(v125.n_greater_than.has_value());
  REQUIRE(v125.n_less_than.has_value());
  CHECK(*v125.n_less_than == 2);

  const PeriodVerdict v0 = period_classify(P, c, 0.0);
  CHECK_FALSE(v0.n_greater_than.has_value());
  REQUIRE(v0.n_less_than.has_value());
  CHECK(*v0.n_less_than == 1);
}

TEST_CASE("period classifier: brackets computed eigenvalues") {
  for (const Coefficients& c : {instance_a(), instance_b()}) {
    const ReducedParams P = reduced_params(c);
    for (const int n : {10, 20, 50}) {
      const EigenvalueRecord rec = eigenvalue(P, c, n);
      const PeriodVerdict v = period_classify(P, c, rec.lambda);
      REQUIRE(v.n_greater_than.has_value());
      REQUIRE(v.n_less_than.has_value());
      CHECK(*v.n_greater_than < n);
      CHECK(n < *v.n_less_than);
      CHECK(*v.n_greater_than < *v.n_less_than);
    }
  }
}

TEST_CASE("period classifier: invalid sign rejected") {
  Coefficients c = instance_a();
  c.H11 = -1.0;  // -H11*H22 becomes negative
  const ReducedParams P = reduced_params(c);
  CHECK_THROWS_AS(period_classify(P, c, 1.0), InvalidSign);
}
