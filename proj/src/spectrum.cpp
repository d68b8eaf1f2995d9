#include "shseig/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "shseig/errors.hpp"
#include "shseig/problem_model.hpp"
#include "shseig/riccati_closed_form.hpp"

namespace shseig {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

EigenvalueRecord blank_record(int n, SolveStatus status) {
  EigenvalueRecord rec;
  rec.n = n;
  rec.rho = rec.lambda = rec.delta = rec.delta_tilde = kNaN;
  rec.counting_residual = rec.chain_residual = rec.ratio = kNaN;
  rec.status = status;
  return rec;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::ok:
      return "ok";
    case SolveStatus::out_of_closed_form_range:
      return "out_of_closed_form_range";
    case SolveStatus::failed:
      return "failed";
  }
  return "unknown";
}

double counting_value(const ReducedParams& P, const Coefficients& c, int n, double rho) {
  if (n < 1) throw std::invalid_argument("index n must be >= 1");
  const auto [omega, theta] = omega_theta(P, c, rho);
  return ((2.0 * n - 1.0) * kHalfPi + theta) / omega - P.T;
}

RootResult solve_rho(const ReducedParams& P, const Coefficients& c, int n,
                     double tol_rho, double tol_f) {
  if (n < 1) throw std::invalid_argument("index n must be >= 1");
  if (tol_f < 0.0) tol_f = 1e-10 * P.T;
  long evals = 0;
  const auto F = [&](double rho) {
    ++evals;
    return counting_value(P, c, n, rho);
  };
  // Evaluating exactly at rho_max would divide by omega = 0; back off a hair.
  const double scale = 1.0 + std::abs(P.rho_max);
  const double rho_hi = P.rho_max - 1e-9 * scale;
  const double f_hi = F(rho_hi);
  if (f_hi < 0.0) throw RootOutOfClosedFormRange(n);
  if (f_hi == 0.0) return {rho_hi, evals};
  double span = scale;
  double lo = rho_hi - span;
  double f_lo = F(lo);
  int doublings = 0;
  while (f_lo >= 0.0) {
    if (++doublings > 200) throw BracketExpansionFailed(n);
    span *= 2.0;
    lo = rho_hi - span;
    f_lo = F(lo);
  }
  double hi = rho_hi;
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = F(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if (f_mid < 0.0)
      lo = mid;
    else
      hi = mid;
    const double width = hi - lo;
    if (width <= tol_rho * (1.0 + std::abs(mid)) && std::abs(f_mid) <= tol_f) break;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() *
                     std::max({std::abs(lo), std::abs(hi), 1.0}))
      break;
  }
  const double root = 0.5 * (lo + hi);
  if (!(std::abs(F(root)) <= tol_f))
    throw Error("counting-equation refinement stalled above tolerance");
  return {root, evals};
}

std::vector<double> chain_times(const ReducedParams& P, const Coefficients& c,
                                int n, double rho) {
  if (n < 1) throw std::invalid_argument("index n must be >= 1");
  const Deltas d = deltas(P, c, rho);
  std::vector<double> chain;
  chain.reserve(2 * static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    chain.push_back(P.T - (j - 1) * d.delta - (j - 1) * d.delta_tilde);
    chain.push_back(P.T - j * d.delta - (j - 1) * d.delta_tilde);
  }
  return chain;
}

EigenvalueRecord eigenvalue(const ReducedParams& P, const Coefficients& c, int n) {
  const RootResult root = solve_rho(P, c, n);
  const SpectralParameter sp = SpectralParameter::from_rho(root.rho);
  const Deltas d = deltas(P, c, root.rho);
  const std::vector<double> chain = chain_times(P, c, n, root.rho);
  EigenvalueRecord rec;
  rec.n = n;
  rec.rho = sp.rho;
  rec.lambda = sp.lambda;
  rec.delta = d.delta;
  rec.delta_tilde = d.delta_tilde;
  rec.counting_residual = std::abs(counting_value(P, c, n, root.rho));
  rec.chain_residual = std::abs(chain.back());
  rec.ratio = rec.lambda / (double(n) * double(n));
  rec.iterations = root.iterations;
  rec.status = SolveStatus::ok;
  return rec;
}

std::vector<EigenvalueRecord> spectrum_sweep(const ReducedParams& P,
                                             const Coefficients& c, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  std::vector<EigenvalueRecord> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    try {
      out.push_back(eigenvalue(P, c, n));
    } catch (const RootOutOfClosedFormRange&) {
      out.push_back(blank_record(n, SolveStatus::out_of_closed_form_range));
    } catch (const BracketExpansionFailed&) {
      out.push_back(blank_record(n, SolveStatus::failed));
    }
  }
  return out;
}

AsymptoticsReport asymptotics(const ReducedParams& P, const Coefficients& c,
                              std::span<const EigenvalueRecord> records) {
  if (records.empty()) throw EmptyInput("no eigenvalue records");
  const double prod = -(c.H11 * c.H22);
  if (!(prod > 0.0)) throw InvalidSign(prod);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  AsymptoticsReport rep;
  rep.lower_bound = pi2 / (2.0 * prod * P.T * P.T);
  rep.upper_bound = 4.0 * pi2 / (prod * P.T * P.T);
  rep.omega_brackets_ok = true;
  constexpr double kRel = 1e-12;
  int last_bad = 0;
  int first_n = 0;
  bool any_ok = false;
  for (const auto& rec : records) {
    if (rec.status != SolveStatus::ok) continue;
    if (!any_ok) {
      first_n = rec.n;
      any_ok = true;
    }
    rep.ratios.emplace_back(rec.n, rec.ratio);
    const double om = omega_theta(P, c, rec.rho).omega;
    const double lo = (rec.n - 1) * std::numbers::pi / P.T;
    const double hi_tight = rec.n * std::numbers::pi / P.T;
    if (om < lo * (1.0 - kRel) || om > hi_tight * (1.0 + kRel))
      rep.omega_brackets_ok = false;
    if (rec.n >= 10) {
      // Looser bracket valid for large indices, kept as a separate check.
      const double hi_loose = (2.0 * rec.n - 1.0) * std::numbers::pi / P.T;
      if (om < lo * (1.0 - kRel) || om > hi_loose * (1.0 + kRel))
        rep.omega_brackets_ok = false;
    }
    if (rec.ratio < rep.lower_bound || rec.ratio > rep.upper_bound)
      last_bad = rec.n;
  }
  if (!any_ok) throw EmptyInput("no successful eigenvalue records");
  rep.bounds_ok_from = last_bad == 0 ? first_n : last_bad + 1;
  return rep;
}

PeriodVerdict period_classify(const ReducedParams& P, const Coefficients& c,
                              double lambda) {
  const double prod = -(c.H11 * c.H22);
  if (!(prod > 0.0)) throw InvalidSign(prod);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double c_less = pi2 / (2.0 * prod * P.T * P.T);
  const double c_greater = 4.0 * pi2 / (prod * P.T * P.T);
  PeriodVerdict v;
  v.lambda = lambda;
  long nl = 1;
  if (lambda >= c_less) {
    nl = std::max<long>(1, static_cast<long>(std::floor(std::sqrt(lambda / c_less))));
    while (!(lambda < c_less * double(nl) * double(nl))) ++nl;
    while (nl > 1 && lambda < c_less * double(nl - 1) * double(nl - 1)) --nl;
  }
  v.n_less_than = nl;
  if (lambda > c_greater) {
    long ng = static_cast<long>(std::ceil(std::sqrt(lambda / c_greater)));
    while (ng >= 1 && !(lambda > c_greater * double(ng) * double(ng))) --ng;
    while (lambda > c_greater * double(ng + 1) * double(ng + 1)) ++ng;
    if (ng >= 1) v.n_greater_than = ng;
  }
  v.caveat =
      "bounds hold for sufficiently large n; verdicts at small indices are "
      "indicative only";
  return v;
}

}  // namespace shseig
