// Command-line frontend; talks to the solver exclusively through the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shseig.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 3;

constexpr double kStructureTol = 1e-12;

std::string g17(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Problem {
  shseig_problem* handle = nullptr;
  Problem() = default;
  Problem(const Problem&) = delete;
  Problem& operator=(const Problem&) = delete;
  ~Problem() { shseig_problem_free(handle); }
};

bool load(const std::string& path, Problem& p) {
  char err[512];
  const shseig_status st = shseig_problem_load(path.c_str(), &p.handle, err, sizeof err);
  if (st != SHSEIG_OK) {
    std::cerr << "error: " << (err[0] ? err : shseig_status_name(st)) << "\n";
    return false;
  }
  return true;
}

// Both validations must hold before any spectral computation.
int validate(const Problem& p) {
  shseig_monotonicity_report rep;
  if (shseig_monotonicity(p.handle, &rep) != SHSEIG_OK) return kExitValidation;
  if (!rep.passes) {
    std::cerr << "error: monotonicity check failed (alpha = " << g17(rep.alpha) << ")\n";
    return kExitValidation;
  }
  double residual = 0.0;
  int sok = 0;
  shseig_structure_check(p.handle, kStructureTol, &residual, &sok);
  if (!sok) {
    std::cerr << "error: structure identity H23 = -H33*H13 violated (residual "
              << g17(residual) << ")\n";
    return kExitValidation;
  }
  shseig_reduced_params rp;
  if (shseig_reduced(p.handle, &rp) != SHSEIG_OK) {
    std::cerr << "error: H11 and H22 must be nonzero\n";
    return kExitValidation;
  }
  return kExitOk;
}

struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;
  bool open(const std::string& path) {
    if (path.empty()) return true;
    file.open(path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file " << path << "\n";
      return false;
    }
    out = &file;
    return true;
  }
};

int cmd_check(const std::string& config) {
  Problem p;
  if (!load(config, p)) return kExitUsage;
  shseig_monotonicity_report rep;
  shseig_monotonicity(p.handle, &rep);
  double residual = 0.0;
  int sok = 0;
  shseig_structure_check(p.handle, kStructureTol, &residual, &sok);
  std::cout << "monotonicity: alpha = " << g17(rep.alpha)
            << " (symmetric-part eigenvalues " << g17(rep.eigenvalues[0]) << ", "
            << g17(rep.eigenvalues[1]) << ", " << g17(rep.eigenvalues[2]) << ") -> "
            << (rep.passes ? "pass" : "fail") << "\n";
  std::cout << "structure: |H23 + H33*H13| = " << g17(residual) << " -> "
            << (sok ? "pass" : "fail") << "\n";
  shseig_reduced_params rp;
  if (shseig_reduced(p.handle, &rp) == SHSEIG_OK) {
    std::cout << "rho0 = " << g17(rp.rho0) << "\n"
              << "rho_star = " << g17(rp.rho_star) << "\n"
              << "rho_max = " << g17(rp.rho_max) << "\n";
  } else {
    std::cout << "derived parameters unavailable (H11 or H22 is zero)\n";
  }
  double h[9];
  double t = 0.0;
  shseig_problem_coefficients(p.handle, h, &t);
  if (h[1] != 0.0 || h[7] != 0.0)
    std::cout << "note: H12 or H32 is nonzero; these entries enter only the "
                 "monotonicity check and the dual system\n";
  return (rep.passes && sok) ? kExitOk : kExitValidation;
}

int cmd_params(const std::string& config) {
  Problem p;
  if (!load(config, p)) return kExitUsage;
  if (const int rc = validate(p); rc != kExitOk) return rc;
  shseig_reduced_params rp;
  shseig_reduced(p.handle, &rp);
  std::cout << "p = " << g17(rp.p) << "\n"
            << "p_tilde = " << g17(rp.p_tilde) << "\n"
            << "r = " << g17(rp.r) << "\n"
            << "q_tilde = " << g17(rp.q_tilde) << "\n"
            << "rho0 = " << g17(rp.rho0) << "\n"
            << "rho_star = " << g17(rp.rho_star) << "\n"
            << "rho_max = " << g17(rp.rho_max) << "\n"
            << "T = " << g17(rp.t_horizon) << "\n";
  return kExitOk;
}

int cmd_eigs(const std::string& config, int n_max, const std::string& format,
             const std::string& out_path) {
  Problem p;
  if (!load(config, p)) return kExitUsage;
  if (const int rc = validate(p); rc != kExitOk) return rc;
  std::vector<shseig_eigenvalue_record> recs(static_cast<std::size_t>(n_max));
  const shseig_status st = shseig_spectrum_sweep(p.handle, n_max, recs.data());
  if (st != SHSEIG_OK) {
    std::cerr << "error: " << shseig_status_name(st) << "\n";
    return kExitNumerical;
  }
  Sink sink;
  if (!sink.open(out_path)) return kExitUsage;
  bool all_ok = true;
  if (format == "csv") {
    *sink.out << "n,rho,lambda,delta,delta_tilde,counting_residual,chain_residual,"
                 "ratio,status\n";
    for (const auto& r : recs) {
      *sink.out << r.n << ',' << g17(r.rho) << ',' << g17(r.lambda) << ','
                << g17(r.delta) << ',' << g17(r.delta_tilde) << ','
                << g17(r.counting_residual) << ',' << g17(r.chain_residual) << ','
                << g17(r.ratio) << ',' << shseig_eig_status_name(r.status) << "\n";
      all_ok = all_ok && r.status == SHSEIG_EIG_OK;
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : recs) {
      nlohmann::ordered_json row;
      row["n"] = r.n;
      row["rho"] = r.rho;
      row["lambda"] = r.lambda;
      row["delta"] = r.delta;
      row["delta_tilde"] = r.delta_tilde;
      row["counting_residual"] = r.counting_residual;
      row["chain_residual"] = r.chain_residual;
      row["ratio"] = r.ratio;
      row["status"] = shseig_eig_status_name(r.status);
      arr.push_back(std::move(row));
      all_ok = all_ok && r.status == SHSEIG_EIG_OK;
    }
    *sink.out << arr.dump(2) << "\n";
  }
  return all_ok ? kExitOk : kExitNumerical;
}

int cmd_verify(const std::string& config, int n_max) {
  Problem p;
  if (!load(config, p)) return kExitUsage;
  if (const int rc = validate(p); rc != kExitOk) return rc;
  std::vector<shseig_eigenvalue_record> recs(static_cast<std::size_t>(n_max));
  if (shseig_spectrum_sweep(p.handle, n_max, recs.data()) != SHSEIG_OK)
    return kExitNumerical;
  double max_primal = 0.0, max_dual = 0.0;
  bool all_pass = true;
  int checked = 0;
  for (const auto& r : recs) {
    if (r.status != SHSEIG_EIG_OK) {
      std::cout << "n=" << r.n << " skipped (" << shseig_eig_status_name(r.status)
                << ")\n";
      continue;
    }
    double pg = 0.0, dg = 0.0;
    int pass = 0;
    const shseig_status st = shseig_crosscheck(p.handle, r.rho, nullptr, &pg, &dg, &pass);
    if (st != SHSEIG_OK) {
      std::cerr << "error: crosscheck failed at n=" << r.n << ": "
                << shseig_status_name(st) << "\n";
      return kExitNumerical;
    }
    std::cout << "n=" << r.n << " rho=" << g17(r.rho) << " primal_gap=" << g17(pg)
              << " dual_gap=" << g17(dg) << (pass ? " pass" : " FAIL") << "\n";
    max_primal = std::max(max_primal, pg);
    max_dual = std::max(max_dual, dg);
    all_pass = all_pass && pass;
    ++checked;
  }
  std::cout << "checked " << checked << " of " << n_max
            << "; max primal gap = " << g17(max_primal)
            << ", max dual gap = " << g17(max_dual) << "\n";
  return all_pass ? kExitOk : kExitNumerical;
}

int cmd_blowup(const std::string& config, double rho, bool oracle,
               const std::string& out_path) {
  Problem p;
  if (!load(config, p)) return kExitUsage;
  if (const int rc = validate(p); rc != kExitOk) return rc;
  shseig_blowup bp, bd;
  shseig_status st = shseig_blowup_primal(p.handle, rho, &bp);
  if (st == SHSEIG_OK) st = shseig_blowup_dual(p.handle, rho, &bd);
  if (st != SHSEIG_OK) {
    std::cerr << "error: " << shseig_status_name(st) << "\n";
    return st == SHSEIG_ERR_INADMISSIBLE_RHO ? kExitUsage : kExitNumerical;
  }
  std::cout << "rho = " << g17(rho) << "\n";
  std::cout << "primal: t_star = " << g17(bp.t_star) << "  delta = " << g17(bp.delta)
            << "\n";
  std::cout << "dual:   t_star = " << g17(bd.t_star) << "  delta = " << g17(bd.delta)
            << "\n";
  if (!oracle) return kExitOk;
  bool pass = true;
  shseig_blowup_estimate est[2];
  const char* names[2] = {"primal", "dual"};
  const double closed[2] = {bp.t_star, bd.t_star};
  const double durations[2] = {bp.delta, bd.delta};
  for (int dual = 0; dual < 2; ++dual) {
    st = shseig_detect_blowup(p.handle, rho, dual, nullptr, &est[dual]);
    if (st != SHSEIG_OK) {
      std::cerr << "error: oracle failed (" << shseig_status_name(st) << ")\n";
      return kExitNumerical;
    }
    const double gap = std::abs(est[dual].t_star - closed[dual]);
    pass = pass && gap <= 1e-6 * (1.0 + durations[dual]);
    std::cout << names[dual] << " oracle: t_star = " << g17(est[dual].t_star)
              << "  gap = " << g17(gap) << "  (uncertainty " << g17(est[dual].uncertainty)
              << ", steps " << est[dual].steps << ", chart switches "
              << est[dual].chart_switches << ")\n";
  }
  if (!out_path.empty()) {
    // Export the primal oracle trajectory, stopping just above the pole.
    const double t_end = est[0].t_star + 0.01 * (bp.delta);
    shseig_trajectory* traj = nullptr;
    st = shseig_integrate_backward(p.handle, rho, 0, t_end, nullptr, &traj);
    if (st != SHSEIG_OK) {
      std::cerr << "error: trajectory export failed (" << shseig_status_name(st)
                << ")\n";
      return kExitNumerical;
    }
    Sink sink;
    if (!sink.open(out_path)) {
      shseig_trajectory_free(traj);
      return kExitUsage;
    }
    *sink.out << "t,k\n";
    for (size_t i = 0; i < shseig_trajectory_size(traj); ++i) {
      double t = 0.0, k = 0.0;
      shseig_trajectory_sample(traj, i, &t, &k);
      *sink.out << g17(t) << ',' << g17(k) << "\n";
    }
    shseig_trajectory_free(traj);
  }
  return pass ? kExitOk : kExitNumerical;
}

int cmd_riccati(const std::string& config, double rho, int samples,
                const std::string& out_path) {
  Problem p;
  if (!load(config, p)) return kExitUsage;
  if (const int rc = validate(p); rc != kExitOk) return rc;
  shseig_blowup bp, bd;
  shseig_status st = shseig_blowup_primal(p.handle, rho, &bp);
  if (st == SHSEIG_OK) st = shseig_blowup_dual(p.handle, rho, &bd);
  if (st != SHSEIG_OK) {
    std::cerr << "error: " << shseig_status_name(st) << "\n";
    return st == SHSEIG_ERR_INADMISSIBLE_RHO ? kExitUsage : kExitNumerical;
  }
  double h[9];
  double T = 0.0;
  shseig_problem_coefficients(p.handle, h, &T);
  // Sample above whichever pole sits later in time, each with its margin.
  const double t_low = std::max(bp.t_star + 0.01 * bp.delta, bd.t_star + 0.01 * bd.delta);
  Sink sink;
  if (!sink.open(out_path)) return kExitUsage;
  *sink.out << "t,k,k_tilde\n";
  for (int i = 1; i <= samples; ++i) {
    const double t = t_low + (T - t_low) * (double(i) / samples);
    double k = 0.0, kt = 0.0;
    if (shseig_k_closed(p.handle, rho, t, &k) != SHSEIG_OK ||
        shseig_k_tilde_closed(p.handle, rho, t, &kt) != SHSEIG_OK) {
      std::cerr << "error: evaluation failed at t = " << g17(t) << "\n";
      return kExitNumerical;
    }
    *sink.out << g17(t) << ',' << g17(k) << ',' << g17(kt) << "\n";
  }
  return kExitOk;
}

int cmd_asymptotics(const std::string& config, int n_max, const std::string& format,
                    const std::string& out_path) {
  Problem p;
  if (!load(config, p)) return kExitUsage;
  if (const int rc = validate(p); rc != kExitOk) return rc;
  std::vector<shseig_eigenvalue_record> recs(static_cast<std::size_t>(n_max));
  if (shseig_spectrum_sweep(p.handle, n_max, recs.data()) != SHSEIG_OK)
    return kExitNumerical;
  double lower = 0.0, upper = 0.0;
  if (shseig_asymptotic_bounds(p.handle, &lower, &upper) != SHSEIG_OK)
    return kExitNumerical;
  Sink sink;
  if (!sink.open(out_path)) return kExitUsage;
  bool all_ok = true;
  if (format == "csv") {
    *sink.out << "n,ratio,lower,upper,in_bounds\n";
    for (const auto& r : recs) {
      if (r.status != SHSEIG_EIG_OK) {
        all_ok = false;
        continue;
      }
      const bool in = r.ratio >= lower && r.ratio <= upper;
      *sink.out << r.n << ',' << g17(r.ratio) << ',' << g17(lower) << ','
                << g17(upper) << ',' << (in ? "true" : "false") << "\n";
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : recs) {
      if (r.status != SHSEIG_EIG_OK) {
        all_ok = false;
        continue;
      }
      nlohmann::ordered_json row;
      row["n"] = r.n;
      row["ratio"] = r.ratio;
      row["lower"] = lower;
      row["upper"] = upper;
      row["in_bounds"] = r.ratio >= lower && r.ratio <= upper;
      arr.push_back(std::move(row));
    }
    *sink.out << arr.dump(2) << "\n";
  }
  return all_ok ? kExitOk : kExitNumerical;
}

int cmd_period(const std::string& config, double lambda) {
  Problem p;
  if (!load(config, p)) return kExitUsage;
  if (const int rc = validate(p); rc != kExitOk) return rc;
  shseig_period_verdict v;
  const shseig_status st = shseig_period_classify(p.handle, lambda, &v);
  if (st != SHSEIG_OK) {
    std::cerr << "error: " << shseig_status_name(st) << "\n";
    return kExitNumerical;
  }
  std::cout << "lambda = " << g17(lambda) << "\n";
  if (v.has_n_greater_than)
    std::cout << "statistic period greater than: " << v.n_greater_than << "\n";
  else
    std::cout << "statistic period greater than: (none)\n";
  if (v.has_n_less_than)
    std::cout << "statistic period less than: " << v.n_less_than << "\n";
  else
    std::cout << "statistic period less than: (none)\n";
  std::cout << "note: " << shseig_period_caveat() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for one-dimensional stochastic Hamiltonian "
               "boundary problems"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::string format = "csv";
  int n_max = 10;
  double rho = 0.0;
  double lambda = 0.0;
  bool oracle = false;
  int samples = 200;

  const auto add_config = [&config](CLI::App* sc) {
    sc->add_option("config", config, "coefficient file")->required();
  };
  const auto add_format = [&](CLI::App* sc) {
    sc->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--out", out_path, "output file (default stdout)");
  };

  CLI::App* c_check = app.add_subcommand("check", "run the coefficient validations");
  add_config(c_check);

  CLI::App* c_params = app.add_subcommand("params", "print derived parameters");
  add_config(c_params);

  CLI::App* c_eigs = app.add_subcommand("eigs", "compute eigenvalues 1..n_max");
  add_config(c_eigs);
  c_eigs->add_option("--n-max", n_max, "largest index")
      ->required()
      ->check(CLI::Range(1, 1000000));
  add_format(c_eigs);

  CLI::App* c_verify = app.add_subcommand(
      "verify", "crosscheck closed-form blow-up times against the integrator");
  add_config(c_verify);
  c_verify->add_option("--n-max", n_max, "largest index")
      ->required()
      ->check(CLI::Range(1, 1000000));

  CLI::App* c_blowup = app.add_subcommand("blowup", "blow-up times at a given rho");
  add_config(c_blowup);
  c_blowup->add_option("--rho", rho, "spectral parameter")->required();
  c_blowup->add_flag("--oracle", oracle, "also run the numeric integrator");
  c_blowup->add_option("--out", out_path, "CSV export of the oracle trajectory");

  CLI::App* c_riccati =
      app.add_subcommand("riccati", "sample the closed-form solutions");
  add_config(c_riccati);
  c_riccati->add_option("--rho", rho, "spectral parameter")->required();
  c_riccati->add_option("--samples", samples, "number of sample points")
      ->check(CLI::Range(1, 100000000));
  c_riccati->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* c_asym = app.add_subcommand("asymptotics", "ratio table with bounds");
  add_config(c_asym);
  c_asym->add_option("--n-max", n_max, "largest index")
      ->required()
      ->check(CLI::Range(1, 1000000));
  add_format(c_asym);

  CLI::App* c_period = app.add_subcommand("period", "period bounds for an eigenvalue");
  add_config(c_period);
  c_period->add_option("--lambda", lambda, "eigenvalue")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*c_check) return cmd_check(config);
  if (*c_params) return cmd_params(config);
  if (*c_eigs) return cmd_eigs(config, n_max, format, out_path);
  if (*c_verify) return cmd_verify(config, n_max);
  if (*c_blowup) return cmd_blowup(config, rho, oracle, out_path);
  if (*c_riccati) return cmd_riccati(config, rho, samples, out_path);
  if (*c_asym) return cmd_asymptotics(config, n_max, format, out_path);
  if (*c_period) return cmd_period(config, lambda);
  return kExitUsage;
}
