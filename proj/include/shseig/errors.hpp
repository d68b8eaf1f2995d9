#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shseig/types.hpp"

namespace shseig {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateCoefficients : Error {
  using Error::Error;
};

struct StructureViolation : Error {
  double residual;
  explicit StructureViolation(double residual)
      : Error("structure identity H23 = -H33*H13 violated, residual " +
              std::to_string(residual)),
        residual(residual) {}
};

struct InadmissibleRho : Error {
  double rho;
  double rho_max;
  InadmissibleRho(double rho, double rho_max)
      : Error("rho = " + std::to_string(rho) + " is not below rho_max = " +
              std::to_string(rho_max)),
        rho(rho),
        rho_max(rho_max) {}
};

struct OutsideDomain : Error {
  double t;
  double t_star;
  double t_end;
  OutsideDomain(double t, double t_star, double t_end)
      : Error("t = " + std::to_string(t) + " outside the solution domain (" +
              std::to_string(t_star) + ", " + std::to_string(t_end) + "]"),
        t(t),
        t_star(t_star),
        t_end(t_end) {}
};

struct BlowUpBeforeTEnd : Error {
  double t_star_estimate;
  std::vector<TrajectorySample> partial;
  BlowUpBeforeTEnd(double t_star_estimate, std::vector<TrajectorySample> partial)
      : Error("solution blows up near t = " + std::to_string(t_star_estimate) +
              " before reaching t_end"),
        t_star_estimate(t_star_estimate),
        partial(std::move(partial)) {}
};

struct StepUnderflow : Error {
  explicit StepUnderflow(double s)
      : Error("step size underflow at s = " + std::to_string(s)) {}
};

struct MaxStepsExceeded : Error {
  explicit MaxStepsExceeded(long steps)
      : Error("integration exceeded " + std::to_string(steps) + " steps") {}
};

struct NoBlowUpWithinHorizon : Error {
  explicit NoBlowUpWithinHorizon(double horizon)
      : Error("no blow-up detected within backward horizon " + std::to_string(horizon)) {}
};

struct InsufficientSamples : Error {
  explicit InsufficientSamples(std::size_t count)
      : Error("residual scan needs at least 3 samples, got " + std::to_string(count)) {}
};

struct RootOutOfClosedFormRange : Error {
  int n;
  explicit RootOutOfClosedFormRange(int n)
      : Error("counting root for n = " + std::to_string(n) +
              " lies outside the closed-form range"),
        n(n) {}
};

struct BracketExpansionFailed : Error {
  int n;
  explicit BracketExpansionFailed(int n)
      : Error("bracket expansion failed for n = " + std::to_string(n)), n(n) {}
};

struct EmptyInput : Error {
  using Error::Error;
};

struct InvalidSign : Error {
  explicit InvalidSign(double product)
      : Error("-H11*H22 must be positive, got " + std::to_string(product)) {}
};

struct ConfigError : Error {
  enum class Kind { io, parse, missing_key, duplicate_key, unknown_key };

  Kind kind;
  std::string origin;
  int line;  // 0 when not tied to a specific line
  std::string key;

  ConfigError(Kind kind, std::string origin, int line, std::string key,
              const std::string& detail)
      : Error(origin + (line > 0 ? ":" + std::to_string(line) : "") + ": " + detail),
        kind(kind),
        origin(std::move(origin)),
        line(line),
        key(std::move(key)) {}
};

}  // namespace shseig
