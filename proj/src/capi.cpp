#include "shseig.h"

#include <cstdio>
#include <memory>
#include <new>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shseig/config_io.hpp"
#include "shseig/errors.hpp"
#include "shseig/problem_model.hpp"
#include "shseig/riccati_closed_form.hpp"
#include "shseig/riccati_oracle.hpp"
#include "shseig/spectrum.hpp"

struct shseig_problem {
  shseig::Coefficients c;
  std::optional<shseig::ReducedParams> reduced;
};

struct shseig_trajectory {
  shseig::Trajectory traj;
  shseig::RiccatiCoeffs rc;
};

namespace {

shseig_status map_current_exception() {
  try {
    throw;
  } catch (const shseig::ConfigError&) {
    return SHSEIG_ERR_PARSE;
  } catch (const shseig::DegenerateCoefficients&) {
    return SHSEIG_ERR_DEGENERATE_COEFFICIENTS;
  } catch (const shseig::StructureViolation&) {
    return SHSEIG_ERR_STRUCTURE_VIOLATION;
  } catch (const shseig::InadmissibleRho&) {
    return SHSEIG_ERR_INADMISSIBLE_RHO;
  } catch (const shseig::OutsideDomain&) {
    return SHSEIG_ERR_OUTSIDE_DOMAIN;
  } catch (const shseig::BlowUpBeforeTEnd&) {
    return SHSEIG_ERR_BLOWUP_BEFORE_T_END;
  } catch (const shseig::NoBlowUpWithinHorizon&) {
    return SHSEIG_ERR_NO_BLOWUP_WITHIN_HORIZON;
  } catch (const shseig::StepUnderflow&) {
    return SHSEIG_ERR_STEP_UNDERFLOW;
  } catch (const shseig::MaxStepsExceeded&) {
    return SHSEIG_ERR_MAX_STEPS_EXCEEDED;
  } catch (const shseig::RootOutOfClosedFormRange&) {
    return SHSEIG_ERR_ROOT_OUT_OF_CLOSED_FORM_RANGE;
  } catch (const shseig::BracketExpansionFailed&) {
    return SHSEIG_ERR_BRACKET_EXPANSION_FAILED;
  } catch (const shseig::InsufficientSamples&) {
    return SHSEIG_ERR_INSUFFICIENT_SAMPLES;
  } catch (const shseig::EmptyInput&) {
    return SHSEIG_ERR_EMPTY_INPUT;
  } catch (const shseig::InvalidSign&) {
    return SHSEIG_ERR_INVALID_SIGN;
  } catch (const std::invalid_argument&) {
    return SHSEIG_ERR_INVALID_ARGUMENT;
  } catch (...) {
    return SHSEIG_ERR_INTERNAL;
  }
}

template <class Fn>
shseig_status guarded(Fn&& fn) {
  try {
    fn();
    return SHSEIG_OK;
  } catch (...) {
    return map_current_exception();
  }
}

const shseig::ReducedParams& reduced_of(const shseig_problem* p) {
  if (!p->reduced)
    throw shseig::DegenerateCoefficients("H11 and H22 must be nonzero");
  return *p->reduced;
}

shseig::IntegratorOptions to_options(const shseig_problem* p,
                                     const shseig_integrator_options* opts) {
  if (!opts) return shseig::IntegratorOptions::defaults(p->c.T);
  shseig::IntegratorOptions o;
  o.rel_tol = opts->rel_tol;
  o.abs_tol = opts->abs_tol;
  o.k_switch = opts->k_switch;
  o.horizon = opts->horizon;
  o.refine_tol = opts->refine_tol;
  o.max_steps = opts->max_steps;
  return o;
}

shseig_eig_status to_c_status(shseig::SolveStatus s) {
  switch (s) {
    case shseig::SolveStatus::ok:
      return SHSEIG_EIG_OK;
    case shseig::SolveStatus::out_of_closed_form_range:
      return SHSEIG_EIG_OUT_OF_CLOSED_FORM_RANGE;
    case shseig::SolveStatus::failed:
      return SHSEIG_EIG_FAILED;
  }
  return SHSEIG_EIG_FAILED;
}

shseig_eigenvalue_record to_c_record(const shseig::EigenvalueRecord& r) {
  shseig_eigenvalue_record out;
  out.n = r.n;
  out.rho = r.rho;
  out.lambda = r.lambda;
  out.delta = r.delta;
  out.delta_tilde = r.delta_tilde;
  out.counting_residual = r.counting_residual;
  out.chain_residual = r.chain_residual;
  out.ratio = r.ratio;
  out.iterations = r.iterations;
  out.status = to_c_status(r.status);
  return out;
}

shseig::EigenvalueRecord from_c_record(const shseig_eigenvalue_record& r) {
  shseig::EigenvalueRecord out;
  out.n = r.n;
  out.rho = r.rho;
  out.lambda = r.lambda;
  out.delta = r.delta;
  out.delta_tilde = r.delta_tilde;
  out.counting_residual = r.counting_residual;
  out.chain_residual = r.chain_residual;
  out.ratio = r.ratio;
  out.iterations = r.iterations;
  out.status = r.status == SHSEIG_EIG_OK
                   ? shseig::SolveStatus::ok
                   : (r.status == SHSEIG_EIG_OUT_OF_CLOSED_FORM_RANGE
                          ? shseig::SolveStatus::out_of_closed_form_range
                          : shseig::SolveStatus::failed);
  return out;
}

shseig_problem* make_problem(const shseig::Coefficients& c) {
  shseig::validate_coefficients(c);
  auto p = std::make_unique<shseig_problem>();
  p->c = c;
  try {
    p->reduced = shseig::reduced_params(c);
  } catch (const shseig::DegenerateCoefficients&) {
    // Handle stays usable for the validation entry points.
  }
  return p.release();
}

}  // namespace

extern "C" {

const char* shseig_status_name(shseig_status status) {
  switch (status) {
    case SHSEIG_OK: return "ok";
    case SHSEIG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SHSEIG_ERR_PARSE: return "config parse error";
    case SHSEIG_ERR_DEGENERATE_COEFFICIENTS: return "degenerate coefficients";
    case SHSEIG_ERR_STRUCTURE_VIOLATION: return "structure violation";
    case SHSEIG_ERR_INADMISSIBLE_RHO: return "inadmissible rho";
    case SHSEIG_ERR_OUTSIDE_DOMAIN: return "outside solution domain";
    case SHSEIG_ERR_BLOWUP_BEFORE_T_END: return "blow-up before t_end";
    case SHSEIG_ERR_NO_BLOWUP_WITHIN_HORIZON: return "no blow-up within horizon";
    case SHSEIG_ERR_STEP_UNDERFLOW: return "step underflow";
    case SHSEIG_ERR_MAX_STEPS_EXCEEDED: return "max steps exceeded";
    case SHSEIG_ERR_ROOT_OUT_OF_CLOSED_FORM_RANGE:
      return "root out of closed-form range";
    case SHSEIG_ERR_BRACKET_EXPANSION_FAILED: return "bracket expansion failed";
    case SHSEIG_ERR_INSUFFICIENT_SAMPLES: return "insufficient samples";
    case SHSEIG_ERR_EMPTY_INPUT: return "empty input";
    case SHSEIG_ERR_INVALID_SIGN: return "invalid sign";
    case SHSEIG_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* shseig_version(void) { return "1.0.0"; }

shseig_status shseig_problem_create(const double h[9], double t_horizon,
                                    shseig_problem** out) {
  if (!h || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    const shseig::Coefficients c{h[0], h[1], h[2], h[3], h[4],
                                 h[5], h[6], h[7], h[8], t_horizon};
    *out = make_problem(c);
  });
}

shseig_status shseig_problem_load(const char* path, shseig_problem** out,
                                  char* err_msg, size_t err_cap) {
  if (!path || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  if (err_msg && err_cap) err_msg[0] = '\0';
  try {
    *out = make_problem(shseig::parse_config_file(path));
    return SHSEIG_OK;
  } catch (const std::exception& e) {
    if (err_msg && err_cap) std::snprintf(err_msg, err_cap, "%s", e.what());
    return map_current_exception();
  } catch (...) {
    return SHSEIG_ERR_INTERNAL;
  }
}

void shseig_problem_free(shseig_problem* p) { delete p; }

shseig_status shseig_problem_coefficients(const shseig_problem* p, double h[9],
                                          double* t_horizon) {
  if (!p || !h || !t_horizon) return SHSEIG_ERR_INVALID_ARGUMENT;
  h[0] = p->c.H11;
  h[1] = p->c.H12;
  h[2] = p->c.H13;
  h[3] = p->c.H21;
  h[4] = p->c.H22;
  h[5] = p->c.H23;
  h[6] = p->c.H31;
  h[7] = p->c.H32;
  h[8] = p->c.H33;
  *t_horizon = p->c.T;
  return SHSEIG_OK;
}

shseig_status shseig_monotonicity(const shseig_problem* p,
                                  shseig_monotonicity_report* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::MonotonicityReport rep = shseig::validate_monotonicity(p->c);
    out->alpha = rep.alpha;
    out->eigenvalues[0] = rep.eigenvalues[0];
    out->eigenvalues[1] = rep.eigenvalues[1];
    out->eigenvalues[2] = rep.eigenvalues[2];
    out->passes = rep.passes ? 1 : 0;
  });
}

shseig_status shseig_structure_check(const shseig_problem* p, double tol,
                                     double* residual, int* passes) {
  if (!p || !residual || !passes) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const double t = tol > 0.0 ? tol : shseig::kStructureTolDefault;
    *residual = shseig::structure_residual(p->c);
    *passes = shseig::structure_ok(p->c, t) ? 1 : 0;
  });
}

shseig_status shseig_reduced(const shseig_problem* p, shseig_reduced_params* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::ReducedParams& P = reduced_of(p);
    out->p = P.p;
    out->p_tilde = P.p_tilde;
    out->r = P.r;
    out->q_tilde = P.q_tilde;
    out->rho0 = P.rho0;
    out->rho_star = P.rho_star;
    out->rho_max = P.rho_max;
    out->t_horizon = P.T;
  });
}

shseig_status shseig_coefficients_at(const shseig_problem* p, double rho,
                                     double* q, double* r_tilde) {
  if (!p || !q || !r_tilde) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::RhoCoeffs rc = shseig::coefficients_at(reduced_of(p), p->c, rho);
    *q = rc.q;
    *r_tilde = rc.r_tilde;
  });
}

shseig_status shseig_omega_theta(const shseig_problem* p, double rho,
                                 double* omega, double* theta) {
  if (!p || !omega || !theta) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::OmegaTheta ot = shseig::omega_theta(reduced_of(p), p->c, rho);
    *omega = ot.omega;
    *theta = ot.theta;
  });
}

shseig_status shseig_dual_hamiltonian(const shseig_problem* p, double rho,
                                      double out[9]) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::Mat3 m = shseig::dual_hamiltonian(p->c, rho);
    for (int i = 0; i < 9; ++i) out[i] = m.m[static_cast<std::size_t>(i)];
  });
}

shseig_status shseig_dual_solution_map(const shseig_problem* p,
                                       const double dual_xyz[3], double out[3]) {
  if (!p || !dual_xyz || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::Vec3 v = shseig::dual_solution_map(
        p->c, shseig::Vec3{dual_xyz[0], dual_xyz[1], dual_xyz[2]});
    out[0] = v[0];
    out[1] = v[1];
    out[2] = v[2];
  });
}

shseig_status shseig_blowup_primal(const shseig_problem* p, double rho,
                                   shseig_blowup* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::BlowUp b = shseig::blowup_primal(reduced_of(p), p->c, rho);
    *out = {b.t_star, b.delta, b.omega, b.theta};
  });
}

shseig_status shseig_blowup_dual(const shseig_problem* p, double rho,
                                 shseig_blowup* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::BlowUp b = shseig::blowup_dual(reduced_of(p), p->c, rho);
    *out = {b.t_star, b.delta, b.omega, b.theta};
  });
}

shseig_status shseig_k_closed(const shseig_problem* p, double rho, double t,
                              double* k) {
  if (!p || !k) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] { *k = shseig::k_closed(reduced_of(p), p->c, rho, t); });
}

shseig_status shseig_k_tilde_closed(const shseig_problem* p, double rho, double t,
                                    double* k) {
  if (!p || !k) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] { *k = shseig::k_tilde_closed(reduced_of(p), p->c, rho, t); });
}

shseig_status shseig_integrator_options_default(const shseig_problem* p,
                                                shseig_integrator_options* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  const shseig::IntegratorOptions o = shseig::IntegratorOptions::defaults(p->c.T);
  out->rel_tol = o.rel_tol;
  out->abs_tol = o.abs_tol;
  out->k_switch = o.k_switch;
  out->horizon = o.horizon;
  out->refine_tol = o.refine_tol;
  out->max_steps = o.max_steps;
  return SHSEIG_OK;
}

shseig_status shseig_detect_blowup(const shseig_problem* p, double rho, int dual,
                                   const shseig_integrator_options* opts,
                                   shseig_blowup_estimate* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::ReducedParams& P = reduced_of(p);
    const shseig::RiccatiCoeffs rc = dual
                                         ? shseig::dual_coefficients(P, p->c, rho)
                                         : shseig::primal_coefficients(P, p->c, rho);
    const shseig::BlowUpEstimate e =
        shseig::detect_blowup(rc, p->c.T, to_options(p, opts));
    out->t_star = e.t_star;
    out->uncertainty = e.uncertainty;
    out->chart_switches = e.chart_switches;
    out->steps = e.steps;
  });
}

shseig_status shseig_crosscheck(const shseig_problem* p, double rho,
                                const shseig_integrator_options* opts,
                                double* primal_gap, double* dual_gap, int* passes) {
  if (!p || !primal_gap || !dual_gap || !passes) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::CrosscheckReport rep =
        shseig::crosscheck(reduced_of(p), p->c, rho, to_options(p, opts));
    *primal_gap = rep.primal_gap;
    *dual_gap = rep.dual_gap;
    *passes = rep.pass ? 1 : 0;
  });
}

shseig_status shseig_integrate_backward(const shseig_problem* p, double rho,
                                        int dual, double t_end,
                                        const shseig_integrator_options* opts,
                                        shseig_trajectory** out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    const shseig::ReducedParams& P = reduced_of(p);
    const shseig::RiccatiCoeffs rc = dual
                                         ? shseig::dual_coefficients(P, p->c, rho)
                                         : shseig::primal_coefficients(P, p->c, rho);
    auto traj = std::make_unique<shseig_trajectory>();
    traj->rc = rc;
    traj->traj = shseig::integrate_backward(rc, p->c.T, t_end, to_options(p, opts));
    *out = traj.release();
  });
}

size_t shseig_trajectory_size(const shseig_trajectory* traj) {
  return traj ? traj->traj.samples.size() : 0;
}

shseig_status shseig_trajectory_sample(const shseig_trajectory* traj, size_t index,
                                       double* t, double* k) {
  if (!traj || !t || !k || index >= traj->traj.samples.size())
    return SHSEIG_ERR_INVALID_ARGUMENT;
  *t = traj->traj.samples[index].t;
  *k = traj->traj.samples[index].k;
  return SHSEIG_OK;
}

shseig_status shseig_trajectory_max_residual(const shseig_trajectory* traj,
                                             double* out) {
  if (!traj || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = shseig::residual_scan(traj->traj, traj->rc); });
}

void shseig_trajectory_free(shseig_trajectory* traj) { delete traj; }

const char* shseig_eig_status_name(shseig_eig_status status) {
  switch (status) {
    case SHSEIG_EIG_OK: return "ok";
    case SHSEIG_EIG_OUT_OF_CLOSED_FORM_RANGE: return "out_of_closed_form_range";
    case SHSEIG_EIG_FAILED: return "failed";
  }
  return "unknown";
}

shseig_status shseig_counting_value(const shseig_problem* p, int n, double rho,
                                    double* f) {
  if (!p || !f) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] { *f = shseig::counting_value(reduced_of(p), p->c, n, rho); });
}

shseig_status shseig_eigenvalue(const shseig_problem* p, int n,
                                shseig_eigenvalue_record* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = to_c_record(shseig::eigenvalue(reduced_of(p), p->c, n)); });
}

shseig_status shseig_spectrum_sweep(const shseig_problem* p, int n_max,
                                    shseig_eigenvalue_record* records) {
  if (!p || !records || n_max < 1) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const auto recs = shseig::spectrum_sweep(reduced_of(p), p->c, n_max);
    for (std::size_t i = 0; i < recs.size(); ++i) records[i] = to_c_record(recs[i]);
  });
}

shseig_status shseig_chain_times(const shseig_problem* p, int n, double rho,
                                 double* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const auto chain = shseig::chain_times(reduced_of(p), p->c, n, rho);
    for (std::size_t i = 0; i < chain.size(); ++i) out[i] = chain[i];
  });
}

shseig_status shseig_asymptotic_bounds(const shseig_problem* p, double* lower,
                                       double* upper) {
  if (!p || !lower || !upper) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::ReducedParams& P = reduced_of(p);
    const double prod = -(p->c.H11 * p->c.H22);
    if (!(prod > 0.0)) throw shseig::InvalidSign(prod);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    *lower = pi2 / (2.0 * prod * P.T * P.T);
    *upper = 4.0 * pi2 / (prod * P.T * P.T);
  });
}

shseig_status shseig_asymptotics(const shseig_problem* p,
                                 const shseig_eigenvalue_record* records,
                                 size_t count, shseig_asymptotics_summary* out) {
  if (!p || !records || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<shseig::EigenvalueRecord> recs;
    recs.reserve(count);
    for (size_t i = 0; i < count; ++i) recs.push_back(from_c_record(records[i]));
    const shseig::AsymptoticsReport rep =
        shseig::asymptotics(reduced_of(p), p->c, recs);
    out->lower_bound = rep.lower_bound;
    out->upper_bound = rep.upper_bound;
    out->omega_brackets_ok = rep.omega_brackets_ok ? 1 : 0;
    out->bounds_ok_from = rep.bounds_ok_from;
  });
}

shseig_status shseig_period_classify(const shseig_problem* p, double lambda,
                                     shseig_period_verdict* out) {
  if (!p || !out) return SHSEIG_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const shseig::PeriodVerdict v =
        shseig::period_classify(reduced_of(p), p->c, lambda);
    out->lambda = v.lambda;
    out->has_n_less_than = v.n_less_than.has_value() ? 1 : 0;
    out->n_less_than = v.n_less_than.value_or(0);
    out->has_n_greater_than = v.n_greater_than.has_value() ? 1 : 0;
    out->n_greater_than = v.n_greater_than.value_or(0);
  });
}

const char* shseig_period_caveat(void) {
  return "bounds hold for sufficiently large n; verdicts at small indices are "
         "indicative only";
}

}  // extern "C"
