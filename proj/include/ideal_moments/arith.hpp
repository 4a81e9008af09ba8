#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ideal_moments/ideals.hpp"

namespace ideal_moments {

/// Exponent z of the generalized divisor function sigma_z.
///
/// Nonnegative integers take the exact path (results in 128-bit integers); anything else is
/// evaluated in double precision.
class ZParam {
 public:
  ZParam(std::int64_t value);  // NOLINT(google-explicit-constructor)
  ZParam(int value) : ZParam(static_cast<std::int64_t>(value)) {}  // NOLINT
  ZParam(double value);  // NOLINT
  ZParam(std::complex<double> value);  // NOLINT

  std::complex<double> value() const { return value_; }
  double real() const { return value_.real(); }
  bool is_real() const { return value_.imag() == 0.0; }
  bool exact() const { return exact_; }
  /// The integer value on the exact path; throws DomainError otherwise.
  unsigned integer() const;
  /// Compact text form used in table tags ("1", "-0.25", "0.5+2i").
  std::string text() const;

 private:
  std::complex<double> value_;
  bool exact_ = false;
};

using ArithValue = std::variant<Int128, std::complex<double>>;

int moebius(const Ideal& ideal);

Int128 sigma_exact(const Ideal& ideal, unsigned z);
std::complex<double> sigma_complex(const Ideal& ideal, std::complex<double> z);
ArithValue sigma_z(const Ideal& ideal, const ZParam& z);

enum class RamanujanMethod {
  LocalFactors,  // product of closed-form prime-power factors (default)
  DivisorSum,    // literal sum over common divisors
};

/// C_J(I) = sum over I1 | gcd(I, J) of N(I1) mu(J / I1).
Int128 ramanujan_sum(const Ideal& j, const Ideal& i,
                     RamanujanMethod method = RamanujanMethod::LocalFactors);

/// m(n) = sum of mu(J) over ideals of norm n.
CoefficientTable moebius_norm_table(const NumberField& field, std::uint64_t bound,
                                    const ResourceLimits& limits = {});
/// M_K(t) = sum of mu(J) over 0 < N(J) <= t.
CoefficientTable mertens_table(const NumberField& field, std::uint64_t bound,
                               const ResourceLimits& limits = {});
/// A(n, z) = sum of sigma_z(I) over N(I) = n. Real z only.
CoefficientTable divisor_coeff_table(const NumberField& field, std::uint64_t bound,
                                     const ZParam& z, const ResourceLimits& limits = {});
/// A(n, z1, z2) = sum of sigma_z1(I) sigma_z2(I) over N(I) = n. Real z only.
CoefficientTable pair_coeff_table(const NumberField& field, std::uint64_t bound,
                                  const ZParam& z1, const ZParam& z2,
                                  const ResourceLimits& limits = {});

/// Outcome of an identity check. Failure is reported, never thrown.
struct VerifyReport {
  std::string name;
  bool passed = true;
  std::optional<std::uint64_t> first_failure;
  std::uint64_t checked = 0;
  std::string detail;
};

/// Shared inputs for checking the Ramanujan-sum Dirichlet series against many ideals I.
struct RamanujanSeriesContext {
  NumberField field;
  std::uint64_t bound;
  CoefficientTable ideal_counts;
  std::vector<Ideal> ideals;  // every ideal of norm <= bound

  RamanujanSeriesContext(const NumberField& field, std::uint64_t bound,
                 const ResourceLimits& limits = {});
};

/// Coefficientwise zeta_K(s) * sum_J C_J(I) N(J)^-s = sigma_{1-s}(I) for n <= bound.
VerifyReport verify_ramanujan_series(const NumberField& field, const Ideal& ideal, std::uint64_t bound);
VerifyReport verify_ramanujan_series(const RamanujanSeriesContext& context, const Ideal& ideal);

/// A(n, z) = sum_{d | n} a_K(n/d) d^z a_K(d) for n <= bound, exact integer z.
VerifyReport verify_divisor_convolution(const NumberField& field, std::uint64_t bound, unsigned z,
                            const ResourceLimits& limits = {});
VerifyReport verify_divisor_convolution(const CoefficientTable& ideal_counts,
                            const CoefficientTable& divisor_table, unsigned z);

/// Euler factor at p of the sigma_z1 * sigma_z2 series, compared with enumeration of the
/// ideals supported above p, for every exponent k <= k_max. Exact when z1, z2 are exact;
/// otherwise relative tolerance 1e-9.
VerifyReport verify_sigma_pair_local(const NumberField& field, std::uint64_t p, int k_max,
                                  const ZParam& z1 = ZParam(0), const ZParam& z2 = ZParam(0));

/// mu, sigma_1 and C multiplicative on coprime pairs among ideals of norm <= bound.
VerifyReport verify_multiplicativity(const NumberField& field, std::uint64_t bound);

/// Both Ramanujan-sum routes agree on `pairs` seeded random (J, I) with norms <= bound.
VerifyReport verify_ramanujan_paths(const NumberField& field, std::uint64_t bound,
                                    std::size_t pairs, std::uint64_t seed);

}  // namespace ideal_moments
