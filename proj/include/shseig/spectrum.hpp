#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shseig/types.hpp"

namespace shseig {

enum class SolveStatus { ok, out_of_closed_form_range, failed };
const char* to_string(SolveStatus s);

struct EigenvalueRecord {
  int n = 0;
  double rho = 0.0;
  double lambda = 0.0;       // 1 - rho
  double delta = 0.0;        // T - t_star
  double delta_tilde = 0.0;  // T - t_star~
  double counting_residual = 0.0;
  double chain_residual = 0.0;  // |last chain time|
  double ratio = 0.0;           // lambda / n^2
  long iterations = 0;
  SolveStatus status = SolveStatus::ok;
};

struct AsymptoticsReport {
  double lower_bound = 0.0;  // pi^2 / (-2 H11 H22 T^2)
  double upper_bound = 0.0;  // 4 pi^2 / (-H11 H22 T^2); exactly 8x the lower
  std::vector<std::pair<int, double>> ratios;
  bool omega_brackets_ok = false;
  int bounds_ok_from = 0;  // first n after which all ratios stay in bounds
};

struct PeriodVerdict {
  double lambda = 0.0;
  std::optional<long> n_less_than;     // smallest n with lambda < n^2 * lower_bound
  std::optional<long> n_greater_than;  // largest n with lambda > n^2 * upper_bound
  std::string caveat;
};

/// Counting function F_n(rho) = n*delta + (n-1)*delta_tilde - T, evaluated as
/// [(2n-1)*pi/2 + theta(rho)] / omega(rho) - T. Strictly increasing in rho on
/// the admissible range; its unique root gives the n-th eigenvalue.
double counting_value(const ReducedParams& P, const Coefficients& c, int n, double rho);

struct RootResult {
  double rho = 0.0;
  long iterations = 0;  // counting-function evaluations
};

/// Bracketing plus bisection for the root of F_n. tol_f < 0 selects the
/// default 1e-10 * T. Throws RootOutOfClosedFormRange when the root lies at
/// or above rho_max (possible only for small n).
RootResult solve_rho(const ReducedParams& P, const Coefficients& c, int n,
                     double tol_rho = 1e-12, double tol_f = -1.0);

// t^0 = T down to t^{2n-1}; strictly decreasing, 2n entries.
std::vector<double> chain_times(const ReducedParams& P, const Coefficients& c,
                                int n, double rho);

EigenvalueRecord eigenvalue(const ReducedParams& P, const Coefficients& c, int n);

// Records for n = 1..n_max in index order; per-index failures become
// status flags instead of aborting the sweep.
std::vector<EigenvalueRecord> spectrum_sweep(const ReducedParams& P,
                                             const Coefficients& c, int n_max);

AsymptoticsReport asymptotics(const ReducedParams& P, const Coefficients& c,
                              std::span<const EigenvalueRecord> records);

PeriodVerdict period_classify(const ReducedParams& P, const Coefficients& c,
                              double lambda);

}  // namespace shseig
