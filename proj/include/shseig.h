/* C interface to the stochastic-Hamiltonian spectral solver.
 *
 * All entry points are thread-safe for distinct handles; a problem handle is
 * immutable after creation and may be shared across threads. Functions report
 * failure through shseig_status; output parameters are untouched on error
 * unless stated otherwise.
 */
#ifndef SHSEIG_H
#define SHSEIG_H

#include <stddef.h>

#if defined(_WIN32)
#define SHSEIG_API __declspec(dllexport)
#else
#define SHSEIG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct shseig_problem shseig_problem;
typedef struct shseig_trajectory shseig_trajectory;

typedef enum shseig_status {
  SHSEIG_OK = 0,
  SHSEIG_ERR_INVALID_ARGUMENT = 1,
  SHSEIG_ERR_PARSE = 2,
  SHSEIG_ERR_DEGENERATE_COEFFICIENTS = 3,
  SHSEIG_ERR_STRUCTURE_VIOLATION = 4,
  SHSEIG_ERR_INADMISSIBLE_RHO = 5,
  SHSEIG_ERR_OUTSIDE_DOMAIN = 6,
  SHSEIG_ERR_BLOWUP_BEFORE_T_END = 7,
  SHSEIG_ERR_NO_BLOWUP_WITHIN_HORIZON = 8,
  SHSEIG_ERR_STEP_UNDERFLOW = 9,
  SHSEIG_ERR_MAX_STEPS_EXCEEDED = 10,
  SHSEIG_ERR_ROOT_OUT_OF_CLOSED_FORM_RANGE = 11,
  SHSEIG_ERR_BRACKET_EXPANSION_FAILED = 12,
  SHSEIG_ERR_INSUFFICIENT_SAMPLES = 13,
  SHSEIG_ERR_EMPTY_INPUT = 14,
  SHSEIG_ERR_INVALID_SIGN = 15,
  SHSEIG_ERR_INTERNAL = 16
} shseig_status;

SHSEIG_API const char* shseig_status_name(shseig_status status);
SHSEIG_API const char* shseig_version(void);

/* Coefficients are passed row-major: H11,H12,H13,H21,H22,H23,H31,H32,H33.
 * Entries must be finite and t_horizon positive. */
SHSEIG_API shseig_status shseig_problem_create(const double h[9], double t_horizon,
                                               shseig_problem** out);

/* Loads a `key = value` coefficient file. On failure a short message is
 * written to err_msg (if non-NULL, NUL-terminated, at most err_cap bytes). */
SHSEIG_API shseig_status shseig_problem_load(const char* path, shseig_problem** out,
                                             char* err_msg, size_t err_cap);
SHSEIG_API void shseig_problem_free(shseig_problem* p);
SHSEIG_API shseig_status shseig_problem_coefficients(const shseig_problem* p,
                                                     double h[9], double* t_horizon);

typedef struct shseig_monotonicity_report {
  double alpha;           /* largest a with symmetric part <= -a I */
  double eigenvalues[3];  /* of the symmetric part, descending */
  int passes;             /* alpha > 0 */
} shseig_monotonicity_report;

SHSEIG_API shseig_status shseig_monotonicity(const shseig_problem* p,
                                             shseig_monotonicity_report* out);

/* residual = |H23 + H33*H13|; passes iff residual <= tol*(1 + |H33*H13|).
 * tol <= 0 selects the default 1e-12. */
SHSEIG_API shseig_status shseig_structure_check(const shseig_problem* p, double tol,
                                                double* residual, int* passes);

typedef struct shseig_reduced_params {
  double p;
  double p_tilde;
  double r;
  double q_tilde;
  double rho0;
  double rho_star;
  double rho_max;
  double t_horizon;
} shseig_reduced_params;

SHSEIG_API shseig_status shseig_reduced(const shseig_problem* p,
                                        shseig_reduced_params* out);
SHSEIG_API shseig_status shseig_coefficients_at(const shseig_problem* p, double rho,
                                                double* q, double* r_tilde);
SHSEIG_API shseig_status shseig_omega_theta(const shseig_problem* p, double rho,
                                            double* omega, double* theta);
SHSEIG_API shseig_status shseig_dual_hamiltonian(const shseig_problem* p, double rho,
                                                 double out[9]);
SHSEIG_API shseig_status shseig_dual_solution_map(const shseig_problem* p,
                                                  const double dual_xyz[3],
                                                  double out[3]);

typedef struct shseig_blowup {
  double t_star;
  double delta; /* T - t_star */
  double omega;
  double theta;
} shseig_blowup;

SHSEIG_API shseig_status shseig_blowup_primal(const shseig_problem* p, double rho,
                                              shseig_blowup* out);
SHSEIG_API shseig_status shseig_blowup_dual(const shseig_problem* p, double rho,
                                            shseig_blowup* out);
SHSEIG_API shseig_status shseig_k_closed(const shseig_problem* p, double rho,
                                         double t, double* k);
SHSEIG_API shseig_status shseig_k_tilde_closed(const shseig_problem* p, double rho,
                                               double t, double* k);

typedef struct shseig_integrator_options {
  double rel_tol;
  double abs_tol;
  double k_switch;
  double horizon;
  double refine_tol;
  long max_steps;
} shseig_integrator_options;

SHSEIG_API shseig_status shseig_integrator_options_default(
    const shseig_problem* p, shseig_integrator_options* out);

typedef struct shseig_blowup_estimate {
  double t_star;
  double uncertainty;
  long chart_switches;
  long steps;
} shseig_blowup_estimate;

/* dual != 0 selects the dual Riccati problem; opts may be NULL for defaults. */
SHSEIG_API shseig_status shseig_detect_blowup(const shseig_problem* p, double rho,
                                              int dual,
                                              const shseig_integrator_options* opts,
                                              shseig_blowup_estimate* out);
SHSEIG_API shseig_status shseig_crosscheck(const shseig_problem* p, double rho,
                                           const shseig_integrator_options* opts,
                                           double* primal_gap, double* dual_gap,
                                           int* passes);

/* Sampled backward integration over [t_end, T]; free with
 * shseig_trajectory_free. */
SHSEIG_API shseig_status shseig_integrate_backward(
    const shseig_problem* p, double rho, int dual, double t_end,
    const shseig_integrator_options* opts, shseig_trajectory** out);
SHSEIG_API size_t shseig_trajectory_size(const shseig_trajectory* traj);
SHSEIG_API shseig_status shseig_trajectory_sample(const shseig_trajectory* traj,
                                                  size_t index, double* t, double* k);
SHSEIG_API shseig_status shseig_trajectory_max_residual(const shseig_trajectory* traj,
                                                        double* out);
SHSEIG_API void shseig_trajectory_free(shseig_trajectory* traj);

typedef enum shseig_eig_status {
  SHSEIG_EIG_OK = 0,
  SHSEIG_EIG_OUT_OF_CLOSED_FORM_RANGE = 1,
  SHSEIG_EIG_FAILED = 2
} shseig_eig_status;

SHSEIG_API const char* shseig_eig_status_name(shseig_eig_status status);

typedef struct shseig_eigenvalue_record {
  int n;
  double rho;
  double lambda;
  double delta;
  double delta_tilde;
  double counting_residual;
  double chain_residual;
  double ratio;
  long iterations;
  shseig_eig_status status;
} shseig_eigenvalue_record;

SHSEIG_API shseig_status shseig_counting_value(const shseig_problem* p, int n,
                                               double rho, double* f);
SHSEIG_API shseig_status shseig_eigenvalue(const shseig_problem* p, int n,
                                           shseig_eigenvalue_record* out);

/* Fills records[0..n_max-1]; per-index failures are reported through the
 * record status, never by aborting the sweep. */
SHSEIG_API shseig_status shseig_spectrum_sweep(const shseig_problem* p, int n_max,
                                               shseig_eigenvalue_record* records);

/* out must hold 2*n values: t^0 = T down to t^{2n-1}. */
SHSEIG_API shseig_status shseig_chain_times(const shseig_problem* p, int n,
                                            double rho, double* out);

SHSEIG_API shseig_status shseig_asymptotic_bounds(const shseig_problem* p,
                                                  double* lower, double* upper);

typedef struct shseig_asymptotics_summary {
  double lower_bound;
  double upper_bound;
  int omega_brackets_ok;
  int bounds_ok_from;
} shseig_asymptotics_summary;

SHSEIG_API shseig_status shseig_asymptotics(const shseig_problem* p,
                                            const shseig_eigenvalue_record* records,
                                            size_t count,
                                            shseig_asymptotics_summary* out);

typedef struct shseig_period_verdict {
  double lambda;
  int has_n_less_than;
  long n_less_than;
  int has_n_greater_than;
  long n_greater_than;
} shseig_period_verdict;

SHSEIG_API shseig_status shseig_period_classify(const shseig_problem* p, double lambda,
                                                shseig_period_verdict* out);
SHSEIG_API const char* shseig_period_caveat(void);

#ifdef __cplusplus
}
#endif

#endif /* SHSEIG_H */
