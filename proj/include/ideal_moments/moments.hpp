#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ideal_moments/analytic.hpp"
#include "ideal_moments/arith.hpp"

namespace ideal_moments {

enum class InnerSumMethod { Brute, Mertens };

/// S(x, I) = sum of C_J(I) over 0 < N(J) <= x.
Int128 inner_sum(const NumberField& field, std::uint64_t x, const Ideal& ideal,
                 InnerSumMethod method, const ResourceLimits& limits = {});
/// Mertens form against a prebuilt table; throws DomainError when the table does not reach x.
Int128 inner_sum_mertens(const CoefficientTable& mertens, std::uint64_t x, const Ideal& ideal);

/// One alternative prediction recorded next to the primary one.
struct Prediction {
  std::string label;
  double predicted = 0.0;
  double residual = 0.0;
  double normalized_residual = 0.0;
};

struct MomentResult {
  std::string field;
  std::string kind;  // "first" or "second"
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  Int128 empirical = 0;
  double predicted = 0.0;
  double residual = 0.0;
  double normalized_residual = 0.0;
  double error_scale = 1.0;
  std::string regime;  // "above", "below" or "" for the first moment
  double c2 = 0.5;
  std::vector<Prediction> alternatives;
  double runtime_ms = 0.0;
};

struct MomentOptions {
  unsigned threads = 1;
  double c2 = 0.5;
  ResourceLimits limits;
  /// Prebuilt Mertens table reaching at least x; built on demand when null.
  const CoefficientTable* mertens = nullptr;
};

/// Error yardsticks with epsilon = 0.
double first_moment_scale(double x, double y);
double second_moment_scale(double x, double y);

/// Exact sums of S(x, I) and S(x, I)^2 over N(I) <= y, computed from the divisor-norm profile of
/// each ideal class rather than one ideal at a time. Identical for any thread count.
struct MomentSums {
  Int128 first = 0;
  Int128 second = 0;
  Int128 ideals = 0;
};
MomentSums moment_sums(const NumberField& field, std::uint64_t x, std::uint64_t y,
                       const MomentOptions& options = {});
/// The same sums from enumerated ideals and brute inner sums (small x, y only).
MomentSums moment_sums_brute(const NumberField& field, std::uint64_t x, std::uint64_t y,
                             const ResourceLimits& limits = {});

MomentResult first_moment(const NumberField& field, std::uint64_t x, std::uint64_t y,
                          const MomentOptions& options = {});
MomentResult second_moment(const NumberField& field, std::uint64_t x, std::uint64_t y,
                           const MomentOptions& options = {});
/// Attach predictions to sums that were already computed.
MomentResult first_moment_from(const NumberField& field, std::uint64_t x, std::uint64_t y,
                               Int128 empirical);
MomentResult second_moment_from(const NumberField& field, std::uint64_t x, std::uint64_t y,
                                Int128 empirical, double c2 = 0.5);

struct AverageResult {
  std::string field;
  std::string kind;  // "avg-sigma" or "avg-sigma-pair"
  std::uint64_t x = 0;
  std::string z;  // "z" or "z1,z2"
  std::optional<Int128> exact;
  double empirical = 0.0;
  double predicted = 0.0;  // NaN when no main term applies to these parameters
  double residual = 0.0;
  double normalized_residual = 0.0;
  double error_scale = 1.0;
  double runtime_ms = 0.0;
};

/// Partial sum of A(n, z) up to x, exact when z is a nonnegative integer.
AverageResult avg_sigma(const NumberField& field, std::uint64_t x, const ZParam& z,
                        const ResourceLimits& limits = {});
AverageResult avg_sigma_pair(const NumberField& field, std::uint64_t x, const ZParam& z1,
                             const ZParam& z2, const ResourceLimits& limits = {});

/// Same sums from prebuilt coefficient tables covering x.
AverageResult avg_sigma(const CoefficientTable& divisor_table, std::uint64_t x, const ZParam& z);
AverageResult avg_sigma_pair(const CoefficientTable& pair_table, std::uint64_t x,
                             const ZParam& z1, const ZParam& z2);

/// x^(1/2) and x^((1 + a1 + a2)/2 - 2 a2 deg) with epsilon = 0.
double avg_sigma_scale(double x);
double avg_sigma_pair_scale(double x, double a1, double a2, int degree);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;  // zero residuals left out
};

/// Least squares of log|residual| against log scale.
FitResult fit_error_exponent(const std::vector<std::pair<double, double>>& points);

}  // namespace ideal_moments
