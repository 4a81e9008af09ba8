#include "ideal_moments/arith.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ideal_moments/errors.hpp"
#include "ideal_moments/numtheory.hpp"

namespace ideal_moments {

// ---------------------------------------------------------------------------
// ZParam

ZParam::ZParam(std::int64_t value)
    : value_(static_cast<double>(value), 0.0), exact_(value >= 0 && value <= 64) {}

ZParam::ZParam(double value) : value_(value, 0.0) {
  exact_ = value >= 0.0 && value <= 64.0 && std::floor(value) == value;
}

ZParam::ZParam(std::complex<double> value) : value_(value) {
  exact_ = value.imag() == 0.0 && value.real() >= 0.0 && value.real() <= 64.0 &&
           std::floor(value.real()) == value.real();
}

unsigned ZParam::integer() const {
  if (!exact_) throw DomainError("ZParam " + text() + " is not on the exact path");
  return static_cast<unsigned>(value_.real());
}

std::string ZParam::text() const {
  std::ostringstream out;
  out.precision(17);
  out << value_.real();
  if (value_.imag() != 0.0) out << (value_.imag() > 0 ? "+" : "") << value_.imag() << "i";
  return out.str();
}

// ---------------------------------------------------------------------------
// Ideal functions

int moebius(const Ideal& ideal) {
  for (const auto& [prime, exponent] : ideal.factors()) {
    if (exponent > 1) return 0;
  }
  return ideal.factors().size() % 2 == 0 ? 1 : -1;
}

Int128 sigma_exact(const Ideal& ideal, unsigned z) {
  Int128 result = 1;
  for (const auto& [prime, exponent] : ideal.factors()) {
    const Int128 step = checked_pow(static_cast<Int128>(prime.norm), z);
    Int128 local = 1;
    Int128 term = 1;
    for (int j = 1; j <= exponent; ++j) {
      term = checked_mul(term, step);
      local = checked_add(local, term);
    }
    result = checked_mul(result, local);
  }
  return result;
}

std::complex<double> sigma_complex(const Ideal& ideal, std::complex<double> z) {
  std::complex<double> result = 1.0;
  for (const auto& [prime, exponent] : ideal.factors()) {
    const std::complex<double> step = std::pow(static_cast<double>(prime.norm), z);
    std::complex<double> local = 1.0;
    std::complex<double> term = 1.0;
    for (int j = 1; j <= exponent; ++j) {
      term *= step;
      local += term;
    }
    result *= local;
  }
  return result;
}

ArithValue sigma_z(const Ideal& ideal, const ZParam& z) {
  if (z.exact()) return sigma_exact(ideal, z.integer());
  return sigma_complex(ideal, z.value());
}

namespace {

Int128 ramanujan_local_factors(const Ideal& j, const Ideal& i) {
  Int128 result = 1;
  for (const auto& [prime, k] : j.factors()) {
    const int v = i.valuation(prime);
    const Int128 norm = static_cast<Int128>(prime.norm);
    const Int128 power = checked_pow(norm, static_cast<unsigned>(k - 1));
    if (v >= k) {
      result = checked_mul(result, checked_mul(power, norm - 1));
    } else if (v == k - 1) {
      result = checked_mul(result, -power);
    } else {
      return 0;
    }
  }
  return result;
}

Int128 ramanujan_divisor_sum(const Ideal& j, const Ideal& i) {
  Int128 total = 0;
  for (const auto& divisor : ideal_divisors(ideal_gcd(i, j))) {
    const int mu = moebius(ideal_quotient(j, divisor));
    if (mu != 0) total = checked_add(total, mu * static_cast<Int128>(divisor.norm()));
  }
  return total;
}

}  // namespace

Int128 ramanujan_sum(const Ideal& j, const Ideal& i, RamanujanMethod method) {
  if (!(j.field() == i.field())) {
    throw FieldMismatchError("ramanujan_sum: ideals from " + j.field().descriptor() + " and " +
                             i.field().descriptor());
  }
  return method == RamanujanMethod::LocalFactors ? ramanujan_local_factors(j, i)
                                                 : ramanujan_divisor_sum(j, i);
}

// ---------------------------------------------------------------------------
// Tables

namespace {

Int128 pow_exact(std::uint64_t base, unsigned exponent) {
  return checked_pow(static_cast<Int128>(base), exponent);
}

std::uint64_t pow_u64(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) out = checked_mul_u64(out, base);
  return out;
}

// sigma_z(P^v) for N(P) = q as exact or real values.
Int128 local_sigma_exact(std::uint64_t q, unsigned z, int v) {
  const Int128 step = pow_exact(q, z);
  Int128 local = 1;
  Int128 term = 1;
  for (int j = 1; j <= v; ++j) {
    term = checked_mul(term, step);
    local = checked_add(local, term);
  }
  return local;
}

double local_sigma_real(std::uint64_t q, double z, int v) {
  const double step = std::pow(static_cast<double>(q), z);
  double local = 1.0;
  double term = 1.0;
  for (int j = 1; j <= v; ++j) {
    term *= step;
    local += term;
  }
  return local;
}

void require_real(const ZParam& z) {
  if (!z.is_real()) throw DomainError("coefficient tables support real z only, got " + z.text());
}

}  // namespace

CoefficientTable moebius_norm_table(const NumberField& field, std::uint64_t bound,
                                    const ResourceLimits& limits) {
  // Squarefree ideals of norm p^(f j): choose j of the g primes, sign (-1)^j.
  auto local = [](const SplittingSignature& sig, int k) -> Int128 {
    if (k % sig.f != 0) return 0;
    const int j = k / sig.f;
    if (j > sig.g) return 0;
    const auto count = static_cast<Int128>(
        nt::binomial(static_cast<std::uint64_t>(sig.g), static_cast<std::uint64_t>(j)));
    return j % 2 == 0 ? count : -count;
  };
  return {field, "moebius", bound, multiplicative_table_exact(field, bound, local, limits)};
}

CoefficientTable mertens_table(const NumberField& field, std::uint64_t bound,
                               const ResourceLimits& limits) {
  auto table = moebius_norm_table(field, bound, limits);
  auto& values = table.exact_values();
  for (std::uint64_t n = 2; n <= bound; ++n) values[n] += values[n - 1];
  table.tag = "mertens";
  return table;
}

CoefficientTable divisor_coeff_table(const NumberField& field, std::uint64_t bound,
                                     const ZParam& z, const ResourceLimits& limits) {
  require_real(z);
  const std::string tag = "divisor_z=" + z.text();
  if (z.exact()) {
    const unsigned zi = z.integer();
    auto local = [zi](const SplittingSignature& sig, int k) -> Int128 {
      if (k % sig.f != 0) return 0;
      const std::uint64_t q = pow_u64(sig.p, sig.f);
      Int128 total = 0;
      for (const auto& vec : exponent_vectors(sig.g, k / sig.f)) {
        Int128 product = 1;
        for (int v : vec) product = checked_mul(product, local_sigma_exact(q, zi, v));
        total = checked_add(total, product);
      }
      return total;
    };
    return {field, tag, bound, multiplicative_table_exact(field, bound, local, limits)};
  }
  const double zr = z.real();
  auto local = [zr](const SplittingSignature& sig, int k) -> double {
    if (k % sig.f != 0) return 0.0;
    const std::uint64_t q = pow_u64(sig.p, sig.f);
    double total = 0.0;
    for (const auto& vec : exponent_vectors(sig.g, k / sig.f)) {
      double product = 1.0;
      for (int v : vec) product *= local_sigma_real(q, zr, v);
      total += product;
    }
    return total;
  };
  return {field, tag, bound, multiplicative_table_real(field, bound, local, limits)};
}

CoefficientTable pair_coeff_table(const NumberField& field, std::uint64_t bound,
                                  const ZParam& z1, const ZParam& z2,
                                  const ResourceLimits& limits) {
  require_real(z1);
  require_real(z2);
  const std::string tag = "pair_z1=" + z1.text() + "_z2=" + z2.text();
  if (z1.exact() && z2.exact()) {
    const unsigned a = z1.integer();
    const unsigned b = z2.integer();
    auto local = [a, b](const SplittingSignature& sig, int k) -> Int128 {
      if (k % sig.f != 0) return 0;
      const std::uint64_t q = pow_u64(sig.p, sig.f);
      Int128 total = 0;
      for (const auto& vec : exponent_vectors(sig.g, k / sig.f)) {
        Int128 product = 1;
        for (int v : vec) {
          product = checked_mul(product, local_sigma_exact(q, a, v));
          product = checked_mul(product, local_sigma_exact(q, b, v));
        }
        total = checked_add(total, product);
      }
      return total;
    };
    return {field, tag, bound, multiplicative_table_exact(field, bound, local, limits)};
  }
  const double a = z1.real();
  const double b = z2.real();
  auto local = [a, b](const SplittingSignature& sig, int k) -> double {
    if (k % sig.f != 0) return 0.0;
    const std::uint64_t q = pow_u64(sig.p, sig.f);
    double total = 0.0;
    for (const auto& vec : exponent_vectors(sig.g, k / sig.f)) {
      double product = 1.0;
      for (int v : vec) product *= local_sigma_real(q, a, v) * local_sigma_real(q, b, v);
      total += product;
    }
    return total;
  };
  return {field, tag, bound, multiplicative_table_real(field, bound, local, limits)};
}

// ---------------------------------------------------------------------------
// Identity verification

RamanujanSeriesContext::RamanujanSeriesContext(const NumberField& field_in, std::uint64_t bound_in,
                               const ResourceLimits& limits)
    : field(field_in),
      bound(bound_in),
      ideal_counts(ideal_count_table(field_in, bound_in, limits)),
      ideals(enumerate_ideals(field_in, bound_in, limits)) {}

VerifyReport verify_ramanujan_series(const NumberField& field, const Ideal& ideal, std::uint64_t bound) {
  return verify_ramanujan_series(RamanujanSeriesContext(field, bound), ideal);
}

VerifyReport verify_ramanujan_series(const RamanujanSeriesContext& context, const Ideal& ideal) {
  VerifyReport report;
  report.name = "ramanujan series " + context.field.descriptor() + " I=" + ideal.to_string();
  if (ideal.norm() > context.bound) {
    throw DomainError("verify_ramanujan_series: bound must be >= N(I)");
  }
  const std::uint64_t bound = context.bound;
  // Coefficients of sum_J C_J(I) N(J)^-s.
  std::vector<Int128> ramanujan(bound + 1, 0);
  for (const auto& j : context.ideals) {
    ramanujan[j.norm()] = checked_add(ramanujan[j.norm()], ramanujan_sum(j, ideal));
  }
  // Coefficients of sigma_{1-s}(I): N(I1) for each divisor I1 of norm n.
  std::vector<Int128> expected(bound + 1, 0);
  for (const auto& divisor : ideal_divisors(ideal)) {
    if (divisor.norm() <= bound) {
      expected[divisor.norm()] += static_cast<Int128>(divisor.norm());
    }
  }
  const auto& counts = context.ideal_counts.exact_values();
  for (std::uint64_t n = 1; n <= bound; ++n) {
    Int128 convolution = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      convolution = checked_add(convolution, checked_mul(counts[n / d], ramanujan[d]));
      if (d * d != n) {
        convolution = checked_add(convolution, checked_mul(counts[d], ramanujan[n / d]));
      }
    }
    ++report.checked;
    if (convolution != expected[n]) {
      report.passed = false;
      report.first_failure = n;
      report.detail = "n=" + std::to_string(n) + ": convolution " + to_string(convolution) +
                      " != " + to_string(expected[n]);
      return report;
    }
  }
  return report;
}

VerifyReport verify_divisor_convolution(const NumberField& field, std::uint64_t bound, unsigned z,
                            const ResourceLimits& limits) {
  return verify_divisor_convolution(ideal_count_table(field, bound, limits),
                        divisor_coeff_table(field, bound, ZParam(static_cast<std::int64_t>(z)),
                                            limits),
                        z);
}

VerifyReport verify_divisor_convolution(const CoefficientTable& ideal_counts,
                            const CoefficientTable& divisor_table, unsigned z) {
  VerifyReport report;
  report.name = "divisor convolution " + ideal_counts.field.descriptor() + " z=" + std::to_string(z);
  const std::uint64_t bound = std::min(ideal_counts.bound, divisor_table.bound);
  const auto& counts = ideal_counts.exact_values();
  const auto& target = divisor_table.exact_values();
  // Dirichlet convolution of a_K(n) with n^z a_K(n), accumulated by multiples.
  std::vector<Int128> weighted(bound + 1, 0);
  for (std::uint64_t d = 1; d <= bound; ++d) {
    weighted[d] = checked_mul(counts[d], pow_exact(d, z));
  }
  std::vector<Int128> convolution(bound + 1, 0);
  for (std::uint64_t d = 1; d <= bound; ++d) {
    if (weighted[d] == 0) continue;
    for (std::uint64_t e = 1; d * e <= bound; ++e) {
      convolution[d * e] = checked_add(convolution[d * e], checked_mul(weighted[d], counts[e]));
    }
  }
  for (std::uint64_t n = 1; n <= bound; ++n) {
    ++report.checked;
    if (convolution[n] != target[n]) {
      report.passed = false;
      report.first_failure = n;
      report.detail = "n=" + std::to_string(n) + ": A(n," + std::to_string(z) + ")=" +
                      to_string(target[n]) + " but convolution gives " +
                      to_string(convolution[n]);
      return report;
    }
  }
  return report;
}

namespace {

// Truncated power series in u = N(P)^-s.
template <typename T>
using Series = std::vector<T>;

template <typename T>
Series<T> series_mul(const Series<T>& a, const Series<T>& b, T (*mul)(T, T), T (*add)(T, T)) {
  Series<T> out(a.size(), T{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == T{0}) continue;
    for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] = add(out[i + j], mul(a[i], b[j]));
  }
  return out;
}

// (1 - c u)^-g truncated to degree k_max.
template <typename T>
Series<T> inverse_power(T c, int g, int k_max, T (*mul)(T, T)) {
  Series<T> out(static_cast<std::size_t>(k_max + 1), T{0});
  T power = T{1};
  for (int j = 0; j <= k_max; ++j) {
    const auto binom = nt::binomial(static_cast<std::uint64_t>(j + g - 1),
                                    static_cast<std::uint64_t>(g - 1));
    out[static_cast<std::size_t>(j)] = mul(static_cast<T>(binom), power);
    if (j < k_max) power = mul(power, c);
  }
  return out;
}

// (1 - c u^2)^g truncated to degree k_max.
template <typename T>
Series<T> quadratic_power(T c, int g, int k_max, T (*mul)(T, T)) {
  Series<T> out(static_cast<std::size_t>(k_max + 1), T{0});
  T power = T{1};
  for (int j = 0; j <= g && 2 * j <= k_max; ++j) {
    const auto binom = static_cast<T>(
        nt::binomial(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(j)));
    out[static_cast<std::size_t>(2 * j)] = mul(j % 2 == 0 ? binom : -binom, power);
    power = mul(power, c);
  }
  return out;
}

Int128 mul_exact(Int128 a, Int128 b) { return checked_mul(a, b); }
Int128 add_exact(Int128 a, Int128 b) { return checked_add(a, b); }
double mul_real(double a, double b) { return a * b; }
double add_real(double a, double b) { return a + b; }

template <typename T>
Series<T> euler_factor(T c1, T c2, T c12, int g, int k_max, T (*mul)(T, T), T (*add)(T, T)) {
  auto series = inverse_power<T>(T{1}, g, k_max, mul);
  series = series_mul(series, inverse_power<T>(c1, g, k_max, mul), mul, add);
  series = series_mul(series, inverse_power<T>(c2, g, k_max, mul), mul, add);
  series = series_mul(series, inverse_power<T>(c12, g, k_max, mul), mul, add);
  return series_mul(series, quadratic_power<T>(c12, g, k_max, mul), mul, add);
}

}  // namespace

namespace {

// sigma_z(P^e) with N(P) = q: 1 + q^z + ... + q^(e z).
Int128 local_sigma_exact(std::uint64_t q, int e, unsigned z) {
  const Int128 step = pow_exact(q, z);
  Int128 term = 1;
  Int128 total = 1;
  for (int j = 1; j <= e; ++j) {
    term = checked_mul(term, step);
    total = checked_add(total, term);
  }
  return total;
}

double local_sigma_real(double q, int e, double z) {
  const double step = std::pow(q, z);
  double term = 1.0;
  double total = 1.0;
  for (int j = 1; j <= e; ++j) {
    term *= step;
    total += term;
  }
  return total;
}

}  // namespace

VerifyReport verify_sigma_pair_local(const NumberField& field, std::uint64_t p, int k_max,
                                  const ZParam& z1, const ZParam& z2) {
  VerifyReport report;
  report.name = "sigma-pair euler factor " + field.descriptor() + " p=" + std::to_string(p) +
                " z1=" + z1.text() + " z2=" + z2.text();
  if (!z1.is_real() || !z2.is_real()) throw DomainError("verify_sigma_pair_local: real z only");
  const SplittingSignature sig = split_prime(field, p);
  const std::uint64_t q = pow_u64(p, sig.f);
  const bool exact = z1.exact() && z2.exact();

  if (exact) {
    const unsigned a = z1.integer();
    const unsigned b = z2.integer();
    const auto rhs = euler_factor<Int128>(pow_exact(q, a), pow_exact(q, b), pow_exact(q, a + b),
                                          sig.g, k_max, mul_exact, add_exact);
    for (int k = 0; k <= k_max; ++k) {
      Int128 lhs = 0;
      for (const auto& v : exponent_vectors(sig.g, k)) {
        Int128 sa = 1;
        Int128 sb = 1;
        for (int e : v) {
          sa = checked_mul(sa, local_sigma_exact(q, e, a));
          sb = checked_mul(sb, local_sigma_exact(q, e, b));
        }
        lhs = checked_add(lhs, checked_mul(sa, sb));
      }
      ++report.checked;
      if (lhs != rhs[static_cast<std::size_t>(k)]) {
        report.passed = false;
        report.first_failure = static_cast<std::uint64_t>(k);
        report.detail = "k=" + std::to_string(k) + ": enumeration " + to_string(lhs) +
                        " != Euler factor " + to_string(rhs[static_cast<std::size_t>(k)]);
        return report;
      }
    }
    return report;
  }

  const double qd = static_cast<double>(q);
  const double a = z1.real();
  const double b = z2.real();
  const auto rhs = euler_factor<double>(std::pow(qd, a), std::pow(qd, b), std::pow(qd, a + b),
                                        sig.g, k_max, mul_real, add_real);
  for (int k = 0; k <= k_max; ++k) {
    double lhs = 0.0;
    for (const auto& v : exponent_vectors(sig.g, k)) {
      double sa = 1.0;
      double sb = 1.0;
      for (int e : v) {
        sa *= local_sigma_real(qd, e, a);
        sb *= local_sigma_real(qd, e, b);
      }
      lhs += sa * sb;
    }
    ++report.checked;
    const double expected = rhs[static_cast<std::size_t>(k)];
    const double scale = std::max({std::abs(lhs), std::abs(expected), 1.0});
    if (std::abs(lhs - expected) > 1e-9 * scale) {
      report.passed = false;
      report.first_failure = static_cast<std::uint64_t>(k);
      std::ostringstream detail;
      detail.precision(17);
      detail << "k=" << k << ": enumeration " << lhs << " vs Euler factor " << expected;
      report.detail = detail.str();
      return report;
    }
  }
  return report;
}

VerifyReport verify_multiplicativity(const NumberField& field, std::uint64_t bound) {
  VerifyReport report;
  report.name = "multiplicativity " + field.descriptor() + " N<=" + std::to_string(bound);
  const auto ideals = enumerate_ideals(field, bound);
  for (const auto& a : ideals) {
    for (const auto& b : ideals) {
      if (a.norm() * b.norm() > bound) break;
      if (!ideal_gcd(a, b).is_unit()) continue;
      const Ideal ab = ideal_mul(a, b);
      ++report.checked;
      const bool mu_ok = moebius(ab) == moebius(a) * moebius(b);
      const bool sigma_ok = sigma_exact(ab, 1) == sigma_exact(a, 1) * sigma_exact(b, 1);
      bool ramanujan_ok = true;
      // C_{ab}(I) = C_a(I) C_b(I) for a sample of I: the ideals of norm <= 20.
      for (const auto& i : ideals) {
        if (i.norm() > 20) break;
        if (ramanujan_sum(ab, i) != ramanujan_sum(a, i) * ramanujan_sum(b, i)) {
          ramanujan_ok = false;
          break;
        }
      }
      if (!(mu_ok && sigma_ok && ramanujan_ok)) {
        report.passed = false;
        report.first_failure = ab.norm();
        report.detail = "coprime pair " + a.to_string() + ", " + b.to_string() +
                        (mu_ok ? "" : " mu") + (sigma_ok ? "" : " sigma") +
                        (ramanujan_ok ? "" : " ramanujan");
        return report;
      }
    }
  }
  return report;
}

VerifyReport verify_ramanujan_paths(const NumberField& field, std::uint64_t bound,
                                    std::size_t pairs, std::uint64_t seed) {
  VerifyReport report;
  report.name = "ramanujan paths " + field.descriptor() + " seed=" + std::to_string(seed);
  const auto ideals = enumerate_ideals(field, bound);
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < pairs; ++t) {
    const Ideal& j = ideals[rng() % ideals.size()];
    const Ideal& i = ideals[rng() % ideals.size()];
    ++report.checked;
    const Int128 fast = ramanujan_sum(j, i, RamanujanMethod::LocalFactors);
    const Int128 slow = ramanujan_sum(j, i, RamanujanMethod::DivisorSum);
    if (fast != slow) {
      report.passed = false;
      report.first_failure = t;
      report.detail = "C_" + j.to_string() + "(" + i.to_string() + "): " + to_string(fast) +
                      " vs " + to_string(slow);
      return report;
    }
  }
  return report;
}

}  // namespace ideal_moments
