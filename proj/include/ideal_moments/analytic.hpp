#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ideal_moments/field.hpp"
#include "ideal_moments/int128.hpp"

namespace ideal_moments {

// ---------------------------------------------------------------------------
// Special functions (double precision with compensated summation)

/// zeta(s, a) = sum_{n>=0} (n + a)^-s continued to real s != 1, for a in (0, 1].
/// Euler-Maclaurin with the tail bound driven below 1e-16 relative.
double hurwitz_zeta(double s, double a);
double riemann_zeta(double s);
/// psi(x) for x > 0.
double digamma(double x);

// ---------------------------------------------------------------------------
// Dirichlet characters

/// A Dirichlet character mod m. Values are exact roots of unity: value(n) = exp(2 pi i k / order)
/// with k = exponent(n), or 0 when gcd(n, m) > 1.
class DirichletCharacter {
 public:
  DirichletCharacter(std::uint64_t modulus, std::uint64_t root_order,
                     std::vector<int> exponents);

  std::uint64_t modulus() const { return modulus_; }
  /// Order of the root of unity in which the value table is written (not the character order).
  std::uint64_t root_order() const { return root_order_; }
  /// Exponent k of chi(n) = zeta^k, or -1 when chi(n) = 0.
  int exponent(std::uint64_t n) const { return exponents_[n % modulus_]; }
  std::complex<double> value(std::uint64_t n) const;

  bool is_principal() const;
  /// chi(-1) = +1.
  bool is_even() const;
  /// Multiplicative order of the character.
  std::uint64_t order() const;
  std::uint64_t conductor() const;
  DirichletCharacter conjugate() const;

  friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;

 private:
  std::uint64_t modulus_;
  std::uint64_t root_order_;
  std::vector<int> exponents_;
};

/// All phi(m) characters mod m, principal first, in a fixed order.
std::vector<DirichletCharacter> dirichlet_characters(std::uint64_t modulus);

/// n -> (D/n), the real character attached to the fundamental discriminant D.
DirichletCharacter kronecker_character(std::int64_t discriminant);

/// L(s, chi) via Hurwitz zeta; rejects the principal character at s = 1.
std::complex<double> dirichlet_L(double s, const DirichletCharacter& chi);
/// L(1, chi) for nonprincipal chi from the digamma formula.
std::complex<double> L_at_one(const DirichletCharacter& chi);

/// Exact element of Q(zeta_r): sum_k coeffs[k] zeta_r^k / denominator, reduced modulo the
/// r-th cyclotomic polynomial so that zero is detected exactly.
struct CyclotomicRational {
  std::uint64_t root_order = 1;
  std::vector<Int128> coefficients;
  Int128 denominator = 1;

  bool is_zero() const;
  std::complex<double> value() const;
  /// The rational value when the element lies in Q.
  std::optional<std::pair<Int128, Int128>> as_rational() const;
};

CyclotomicRational cyclotomic_product(const CyclotomicRational& a, const CyclotomicRational& b);

/// L(0, chi) = -B_{1,chi} = -(1/m) sum_a chi(a) a, exactly; zero for even chi.
CyclotomicRational l_at_zero_via_bernoulli(const DirichletCharacter& chi);

// ---------------------------------------------------------------------------
// Dedekind zeta

/// Characters whose L-functions multiply with zeta(s) to give zeta_K(s) (nonprincipal only).
std::vector<DirichletCharacter> field_characters(const NumberField& field);

/// zeta_K(s) for real s != 1. Cyclotomic fields use the characters mod m and restore the
/// Euler factors at p | m that imprimitive characters drop.
double dedekind_zeta(const NumberField& field, double s);

struct AnalyticConstants {
  std::string field;
  double rho = 0.0;
  double zeta0 = 0.0;
  double zeta2 = 0.0;
  /// zeta_K(0) as an exact fraction when the Bernoulli product could be formed exactly.
  std::optional<std::pair<Int128, Int128>> zeta0_exact;
  int digits = 15;
  std::string provenance;
};

AnalyticConstants constants(const NumberField& field);

// ---------------------------------------------------------------------------
// Main terms

enum class SecondMomentRegime { Below, Above };

/// rho_K y.
double main_term_first(const NumberField& field, double x, double y);

/// c2 rho_K^2 / zeta_K(2) y x^2, plus rho_K^2 zeta_K(0) / (4 zeta_K(2)^2) x^4 below the
/// crossover y = x^(5/2). c2 is 1/2 or 1.
double main_term_second(const NumberField& field, double x, double y, SecondMomentRegime regime,
                        double c2 = 0.5);

/// Regime implied by y versus x^(5/2).
SecondMomentRegime second_moment_regime(double x, double y);

/// rho zeta_K(1 - z) x + rho zeta_K(1 + z) x^(1+z) / (1 + z) for z in (-1/2, 0).
double avg_sigma_main(const NumberField& field, double x, double z);

/// Sum of the four residues for sum sigma_z1 sigma_z2 up to x.
double r0_main(const NumberField& field, double x, double z1, double z2);

}  // namespace ideal_moments
