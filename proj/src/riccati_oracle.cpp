#include "shseig/riccati_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "shseig/errors.hpp"
#include "shseig/problem_model.hpp"

namespace shseig {
namespace {

constexpr double kUround = 2.3e-16;

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;
// Coefficients of the fourth-order continuous extension.
constexpr double kD1 = -12715105075.0 / 11282082432.0,
                 kD3 = 87487479700.0 / 32700410799.0,
                 kD4 = -10690763975.0 / 1880347072.0,
                 kD5 = 701980252875.0 / 199316789632.0,
                 kD6 = -1453857185.0 / 822651844.0,
                 kD7 = 69997945.0 / 29380423.0;

// PI step-size controller constants.
constexpr double kSafe = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kShrinkLimit = 5.0;   // h may shrink by at most 1/5 per retry
constexpr double kGrowLimitInv = 0.1;  // and grow by at most 10x per step

enum class Chart { k, w };

// One accepted step, stored as the dense-output polynomial.
struct Step {
  double s0 = 0.0, h = 0.0;
  double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0, r5 = 0.0;
  Chart chart = Chart::k;

  double y_begin() const { return r1; }
  double y_end() const { return r1 + r2; }
};

double dense_eval(const Step& st, double s) {
  const double th = (s - st.s0) / st.h;
  return st.r1 + th * (st.r2 + (1.0 - th) * (st.r3 + th * (st.r4 + (1.0 - th) * st.r5)));
}

class PoleAwareIntegrator {
 public:
  PoleAwareIntegrator(const RiccatiCoeffs& rc, const IntegratorOptions& opts)
      : rc_(rc), opts_(opts) {
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0) || !(opts.k_switch > 1.0) ||
        !(opts.horizon > 0.0) || !(opts.refine_tol > 0.0) || opts.max_steps <= 0)
      throw std::invalid_argument("integrator options out of range");
  }

  struct Outcome {
    bool crossed = false;
    double s_cross = 0.0;
    double uncertainty = 0.0;
  };

  // Runs from (s, k) = (0, 0); stops at s_end or at the pole crossing.
  Outcome run(double s_end);

  const std::vector<Step>& steps() const { return steps_; }
  long accepted() const { return accepted_; }
  long chart_switches() const { return switches_; }

  // k on the integrated range, by dense evaluation of the step polynomials.
  double k_at(double s) const;

 private:
  double rhs(Chart chart, double y) const {
    // In s = T - t: dk/ds = -(q k^2 + p k + r) and dw/ds = q + p w + r w^2.
    return chart == Chart::k ? -((rc_.q * y + rc_.p) * y + rc_.r)
                             : (rc_.r * y + rc_.p) * y + rc_.q;
  }

  double initial_step(Chart chart, double y, double f, double s_room) const;
  Outcome refine_crossing(const Step& st) const;

  RiccatiCoeffs rc_;
  IntegratorOptions opts_;
  std::vector<Step> steps_;
  long accepted_ = 0;
  long switches_ = 0;
};

double PoleAwareIntegrator::initial_step(Chart chart, double y, double f,
                                         double s_room) const {
  const double sk = opts_.abs_tol + opts_.rel_tol * std::abs(y);
  const double d0 = std::abs(y) / sk;
  const double d1 = std::abs(f) / sk;
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
  h0 = std::min(h0, s_room);
  const double f1 = rhs(chart, y + h0 * f);
  const double d2 = std::abs(f1 - f) / (sk * h0);
  const double dmax = std::max(d1, d2);
  const double h1 =
      dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, s_room});
}

PoleAwareIntegrator::Outcome PoleAwareIntegrator::run(double s_end) {
  steps_.clear();
  accepted_ = 0;
  switches_ = 0;
  Chart chart = Chart::k;
  double s = 0.0;
  double y = 0.0;
  double f = rhs(chart, y);
  double h = initial_step(chart, y, f, s_end);
  double facold = 1e-4;
  long attempts = 0;
  while (s < s_end) {
    if (++attempts > opts_.max_steps) throw MaxStepsExceeded(attempts);
    if (0.1 * h <= std::abs(s) * kUround) throw StepUnderflow(s);
    const double hs = std::min(h, s_end - s);
    const double k1 = f;
    const double k2 = rhs(chart, y + hs * (kA21 * k1));
    const double k3 = rhs(chart, y + hs * (kA31 * k1 + kA32 * k2));
    const double k4 = rhs(chart, y + hs * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    const double k5 =
        rhs(chart, y + hs * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    const double k6 = rhs(chart, y + hs * (kA61 * k1 + kA62 * k2 + kA63 * k3 +
                                           kA64 * k4 + kA65 * k5));
    const double y1 =
        y + hs * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const double k7 = rhs(chart, y1);
    if (!std::isfinite(y1) || !std::isfinite(k7)) {
      h = 0.5 * hs;
      continue;
    }
    const double e =
        hs * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
    const double sk =
        opts_.abs_tol + opts_.rel_tol * std::max(std::abs(y), std::abs(y1));
    const double err = std::abs(e) / sk;
    const double fac11 = std::pow(std::max(err, 1e-32), kExpo);
    if (err > 1.0) {
      h = hs / std::min(kShrinkLimit, fac11 / kSafe);
      continue;
    }
    double fac = fac11 / std::pow(facold, kBeta);
    fac = std::max(kGrowLimitInv, std::min(kShrinkLimit, fac / kSafe));
    facold = std::max(err, 1e-4);
    const double ydiff = y1 - y;
    const double bspl = hs * k1 - ydiff;
    steps_.push_back(Step{s, hs, y, ydiff, bspl, ydiff - hs * k7 - bspl,
                          hs * (kD1 * k1 + kD3 * k3 + kD4 * k4 + kD5 * k5 +
                                kD6 * k6 + kD7 * k7),
                          chart});
    ++accepted_;
    const double y_prev = y;
    s += hs;
    y = y1;
    f = k7;
    h = hs / fac;
    if (chart == Chart::w && (y_prev * y1 < 0.0 || y1 == 0.0))
      return refine_crossing(steps_.back());
    if (chart == Chart::k && std::abs(y) >= opts_.k_switch) {
      chart = Chart::w;
      y = 1.0 / y;
      f = rhs(chart, y);
      ++switches_;
      if (s < s_end) h = initial_step(chart, y, f, s_end - s);
    }
  }
  return {};
}

PoleAwareIntegrator::Outcome PoleAwareIntegrator::refine_crossing(const Step& st) const {
  if (st.y_end() == 0.0) return {true, st.s0 + st.h, 0.0};
  double lo = 0.0, hi = 1.0;
  double wlo = st.y_begin();
  for (int i = 0; i < 200 && st.h * (hi - lo) > opts_.refine_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double wm = dense_eval(st, st.s0 + st.h * mid);
    if (wm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((wm > 0.0) == (wlo > 0.0)) {
      lo = mid;
      wlo = wm;
    } else {
      hi = mid;
    }
  }
  return {true, st.s0 + st.h * 0.5 * (lo + hi), 0.5 * st.h * (hi - lo)};
}

double PoleAwareIntegrator::k_at(double s) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), s,
                             [](double v, const Step& st) { return v < st.s0; });
  const Step& st = it == steps_.begin() ? *it : *(it - 1);
  const double v = dense_eval(st, std::clamp(s, st.s0, st.s0 + st.h));
  return st.chart == Chart::k ? v : 1.0 / v;
}

std::vector<TrajectorySample> node_samples(double T, const std::vector<Step>& steps,
                                           bool drop_last) {
  std::vector<TrajectorySample> nodes;
  nodes.reserve(steps.size() + 1);
  nodes.push_back({T, 0.0});
  for (const Step& st : steps) {
    const double y = st.y_end();
    nodes.push_back({T - (st.s0 + st.h), st.chart == Chart::k ? y : 1.0 / y});
  }
  if (drop_last && nodes.size() > 1) nodes.pop_back();
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace

Trajectory integrate_backward(const RiccatiCoeffs& rc, double T, double t_end,
                              const IntegratorOptions& opts) {
  if (!(t_end <= T)) throw std::invalid_argument("t_end must not exceed T");
  if (t_end == T) return Trajectory{{{T, 0.0}}};
  const double s_end = T - t_end;
  PoleAwareIntegrator engine(rc, opts);
  const auto outcome = engine.run(s_end);
  if (outcome.crossed) {
    // The node past the pole belongs to the wrong branch; drop it.
    throw BlowUpBeforeTEnd(T - outcome.s_cross,
                           node_samples(T, engine.steps(), true));
  }
  // Uniform resampling through the dense output keeps finite-difference
  // scans of the result accurate away from poles.
  constexpr int kIntervals = 4096;
  Trajectory traj;
  traj.samples.reserve(kIntervals + 1);
  for (int i = 0; i <= kIntervals; ++i) {
    const double t = t_end + (T - t_end) * (double(i) / kIntervals);
    const double s = std::clamp(T - t, 0.0, s_end);
    traj.samples.push_back({t, engine.k_at(s)});
  }
  return traj;
}

BlowUpEstimate detect_blowup(const RiccatiCoeffs& rc, double T,
                             const IntegratorOptions& opts) {
  PoleAwareIntegrator engine(rc, opts);
  const auto outcome = engine.run(opts.horizon);
  if (!outcome.crossed) throw NoBlowUpWithinHorizon(opts.horizon);
  return {T - outcome.s_cross, outcome.uncertainty, engine.chart_switches(),
          engine.accepted()};
}

double residual_scan(const Trajectory& traj, const RiccatiCoeffs& rc) {
  const auto& s = traj.samples;
  if (s.size() < 3) throw InsufficientSamples(s.size());
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double h1 = s[i].t - s[i - 1].t;
    const double h2 = s[i + 1].t - s[i].t;
    const double slope = -h2 / (h1 * (h1 + h2)) * s[i - 1].k +
                         (h2 - h1) / (h1 * h2) * s[i].k +
                         h1 / (h2 * (h1 + h2)) * s[i + 1].k;
    const double k = s[i].k;
    const double target = (rc.q * k + rc.p) * k + rc.r;
    worst = std::max(worst,
                     std::abs(slope - target) / (1.0 + std::abs(rc.q) * k * k));
  }
  return worst;
}

CrosscheckReport crosscheck(const ReducedParams& P, const Coefficients& c, double rho,
                            const IntegratorOptions& opts) {
  const BlowUp bp = blowup_primal(P, c, rho);
  const BlowUp bd = blowup_dual(P, c, rho);
  const BlowUpEstimate ep = detect_blowup(primal_coefficients(P, c, rho), P.T, opts);
  const BlowUpEstimate ed = detect_blowup(dual_coefficients(P, c, rho), P.T, opts);
  CrosscheckReport rep;
  rep.primal_gap = std::abs(ep.t_star - bp.t_star);
  rep.dual_gap = std::abs(ed.t_star - bd.t_star);
  rep.pass = rep.primal_gap <= 1e-6 * (1.0 + bp.delta) &&
             rep.dual_gap <= 1e-6 * (1.0 + bd.delta);
  return rep;
}

}  // namespace shseig
