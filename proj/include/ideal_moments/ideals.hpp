#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ideal_moments/field.hpp"
#include "ideal_moments/int128.hpp"

namespace ideal_moments {

/// Desk-scale caps shared by table builders and enumerators.
struct ResourceLimits {
  std::uint64_t max_table_n = 10'000'000;
  std::uint64_t max_ideals = 20'000'000;
};

/// A prime ideal above the rational prime p. Conjugates above a split p are told apart by a
/// stable index in [0, g); nothing computed here depends on which conjugate gets which index.
struct PrimeIdeal {
  std::uint64_t p = 0;
  int index = 0;
  int e = 1;
  int f = 1;
  std::uint64_t norm = 0;  // p^f

  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.p == b.p && a.index == b.index;
  }
  friend std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b) {
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.index <=> b.index;
  }
};

/// All prime ideals above p (p must be prime), indices 0..g-1.
std::vector<PrimeIdeal> primes_above(const NumberField& field, std::uint64_t p);

/// Nonzero integral ideal stored by its prime factorization.
///
/// The factor list is kept canonical: strictly increasing prime ideals, positive exponents.
/// The empty list is O_K. The norm is recomputed exactly whenever an ideal is built.
class Ideal {
 public:
  using Factor = std::pair<PrimeIdeal, int>;

  explicit Ideal(NumberField field);
  Ideal(NumberField field, std::vector<Factor> factors);

  /// Skips the per-prime consistency check; factors must come from primes_above().
  static Ideal trusted(const NumberField& field, std::vector<Factor> factors);
  static Ideal unit(const NumberField& field) { return Ideal(field); }
  static Ideal prime(const NumberField& field, const PrimeIdeal& prime, int exponent = 1);
  /// The extension n O_K of a rational ideal.
  static Ideal from_integer(const NumberField& field, std::uint64_t n);

  const NumberField& field() const { return field_; }
  std::span<const Factor> factors() const { return factors_; }
  std::uint64_t norm() const { return norm_; }
  bool is_unit() const { return factors_.empty(); }
  int valuation(const PrimeIdeal& prime) const;
  bool divides(const Ideal& other) const;

  std::string to_string() const;

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.field_ == b.field_ && a.norm_ == b.norm_ && a.factors_ == b.factors_;
  }
  /// Ascending norm, ties broken by lexicographic factorization.
  friend std::strong_ordering operator<=>(const Ideal& a, const Ideal& b);

 private:
  void canonicalize(std::vector<Factor> factors);

  NumberField field_;
  std::vector<Factor> factors_;
  std::uint64_t norm_ = 1;
};

Ideal ideal_mul(const Ideal& a, const Ideal& b);
Ideal ideal_gcd(const Ideal& a, const Ideal& b);
/// a / b; requires b | a.
Ideal ideal_quotient(const Ideal& a, const Ideal& b);
int valuation(const Ideal& ideal, const PrimeIdeal& prime);
/// All divisors, ascending in the ideal order; the count is prod (exponent + 1).
std::vector<Ideal> ideal_divisors(const Ideal& ideal);

/// Exponent vectors (v_0..v_{g-1}) with sum v_i = total, lexicographically ascending.
const std::vector<std::vector<int>>& exponent_vectors(int g, int total);

/// Every ideal with norm <= bound, each once, in ascending ideal order (O_K first).
std::vector<Ideal> enumerate_ideals(const NumberField& field, std::uint64_t bound,
                                    const ResourceLimits& limits = {});

/// Ideals of norm exactly p^k supported on the primes above p.
std::vector<Ideal> local_ideals(const NumberField& field, std::uint64_t p, int k);

// ---------------------------------------------------------------------------
// Coefficient tables

/// Exact integers when every parameter is a nonnegative integer, doubles otherwise.
using TableValues = std::variant<std::vector<Int128>, std::vector<double>>;

/// Array indexed by norm n in [0, N]. Entry 0 is unused and zero.
struct CoefficientTable {
  NumberField field = NumberField::rational();
  std::string tag;
  std::uint64_t bound = 0;
  TableValues values;

  bool exact() const { return std::holds_alternative<std::vector<Int128>>(values); }
  const std::vector<Int128>& exact_values() const;
  const std::vector<double>& real_values() const;
  std::vector<Int128>& exact_values();
  std::vector<double>& real_values();

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;
};

/// Multiplicative sieve: value(n) = prod over p^k || n of local(sig(p), k), for n <= bound.
/// The splitting signature of each prime is passed to the callback.
template <typename T>
using LocalFactorFn = std::function<T(const SplittingSignature&, int)>;

std::vector<Int128> multiplicative_table_exact(const NumberField& field, std::uint64_t bound,
                                               const LocalFactorFn<Int128>& local,
                                               const ResourceLimits& limits = {});
std::vector<double> multiplicative_table_real(const NumberField& field, std::uint64_t bound,
                                              const LocalFactorFn<double>& local,
                                              const ResourceLimits& limits = {});

/// a_K(n): the number of ideals of norm exactly n.
CoefficientTable ideal_count_table(const NumberField& field, std::uint64_t bound,
                                   const ResourceLimits& limits = {});

/// Number of ideals of norm <= bound predicted from the residue, used for the enumeration cap.
double predicted_ideal_count(const NumberField& field, std::uint64_t bound);

}  // namespace ideal_moments
