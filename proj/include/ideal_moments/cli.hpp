#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ideal_moments/arith.hpp"

namespace ideal_moments {

enum ExitCode : int {
  kExitOk = 0,
  kExitIdentityFailure = 2,
  kExitResourceCap = 3,
  kExitConfigError = 4,
};

/// y as a function of x: y = coefficient * x^exponent, rounded to the nearest integer.
struct YRule {
  double coefficient = 1.0;
  double exponent = 1.0;

  std::uint64_t operator()(std::uint64_t x) const;
};

/// Accepts "y=x^E", "y=C*x^E", "x^E" and "C*x^E". Throws ConfigError otherwise.
YRule parse_y_rule(const std::string& text);

struct VerifyOptions {
  std::uint64_t n = 500;  // coefficient range; other suite sizes derive from it
  std::uint64_t seed = 20240601;
  bool corrupt = false;  // flip one divisor-table entry to prove the check can fail
  ResourceLimits limits;
};

/// Identity suites for one field: Ramanujan Dirichlet series, divisor convolution, local Euler
/// factors, multiplicativity and the two Ramanujan-sum routes.
std::vector<VerifyReport> run_verify_suite(const NumberField& field, const VerifyOptions& options);

/// Entry point of the ideal-moments tool. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ideal_moments
