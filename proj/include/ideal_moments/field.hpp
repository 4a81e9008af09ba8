#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ideal_moments {

enum class FieldKind { Rational, Quadratic, Cyclotomic };

/// One of the supported abelian number fields: Q, Q(sqrt d) with d squarefree and d != 0, 1,
/// or Q(zeta_m) with m >= 3 and m != 2 (mod 4).
///
/// Instances are validated on construction and immutable afterwards. The textual descriptor
/// ("Q", "Q(sqrt{d})", "Q(zeta{m})") is the canonical identity used by the CLI, the cache and
/// the reports.
class NumberField {
 public:
  static NumberField rational();
  static NumberField quadratic(std::int64_t d);
  static NumberField cyclotomic(std::int64_t m);
  static NumberField parse(std::string_view descriptor);

  FieldKind kind() const { return kind_; }
  /// d for quadratic fields, m for cyclotomic fields, 1 for Q.
  std::int64_t parameter() const { return parameter_; }
  int degree() const { return degree_; }
  /// Fundamental discriminant of a quadratic field (d or 4d); 1 for Q; for cyclotomic fields
  /// the modulus m is returned since that is the conductor used by the character route.
  std::int64_t conductor_discriminant() const { return discriminant_; }
  std::string descriptor() const;

  friend bool operator==(const NumberField&, const NumberField&) = default;

 private:
  NumberField(FieldKind kind, std::int64_t parameter, int degree, std::int64_t discriminant)
      : kind_(kind), parameter_(parameter), degree_(degree), discriminant_(discriminant) {}

  FieldKind kind_;
  std::int64_t parameter_;
  int degree_;
  std::int64_t discriminant_;
};

/// Decomposition type of a rational prime: p O_K = (P_1 ... P_g)^e with N(P_i) = p^f.
struct SplittingSignature {
  std::uint64_t p = 0;
  int e = 1;
  int f = 1;
  int g = 1;

  friend bool operator==(const SplittingSignature&, const SplittingSignature&) = default;
};

int degree(const NumberField& field);
std::vector<std::uint64_t> ramified_primes(const NumberField& field);

/// Throws DomainError if p is not prime.
SplittingSignature split_prime(const NumberField& field, std::uint64_t p);

/// split_prime without the primality check, for sieve inner loops that already know p is prime.
SplittingSignature split_known_prime(const NumberField& field, std::uint64_t p);

/// Q, Q(i), Q(sqrt 5), Q(zeta_5).
std::vector<NumberField> reference_fields();

}  // namespace ideal_moments
