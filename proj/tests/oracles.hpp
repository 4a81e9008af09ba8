#pragma once

// Reference computations for the tests. Nothing here calls into the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline int mobius(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

/// Classical c_q(n) = sum_{d | gcd(q, n)} d mu(q / d).
inline std::int64_t ramanujan_divisor(std::int64_t q, std::int64_t n) {
  const std::int64_t g = std::gcd(q, n);
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= g; ++d) {
    if (g % d == 0) total += d * mobius(q / d);
  }
  return total;
}

/// Classical c_q(n) as the sum of cos(2 pi a n / q) over reduced residues a, rounded.
inline std::int64_t ramanujan_exponential(std::int64_t q, std::int64_t n) {
  const double pi = std::acos(-1.0);
  double total = 0.0;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) == 1) total += std::cos(2.0 * pi * static_cast<double>(a * n % q) / q);
  }
  return std::llround(total);
}

/// Number of ideals of Z[i] of norm n: Gaussian integers a + bi with a > 0, b >= 0 (one per
/// unit orbit) and a^2 + b^2 = n.
inline std::int64_t gaussian_ideal_count(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t a = 1; a * a <= n; ++a) {
    const std::int64_t rest = n - a * a;
    const auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    if (b * b == rest) ++count;
  }
  return count;
}

/// Legendre/Kronecker-style real character mod |D| from a residue list, for D = -4, 5, 8, ...
/// evaluated by brute force: chi(n) for the quadratic field of discriminant D.
inline int quadratic_character(std::int64_t D, std::int64_t n) {
  if (D == -4) {
    if (n % 2 == 0) return 0;
    return n % 4 == 1 ? 1 : -1;
  }
  if (D == 5) {
    const int r = static_cast<int>(n % 5);
    if (r == 0) return 0;
    return (r == 1 || r == 4) ? 1 : -1;
  }
  return 0;
}

/// a_K(n) = sum_{d | n} chi_D(d) for the quadratic field of discriminant D.
inline std::int64_t quadratic_ideal_count(std::int64_t D, std::int64_t n) {
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) total += quadratic_character(D, d);
  }
  return total;
}

/// Coefficients of zeta(s) L(s, chi) L(s, chi^2) L(s, chi^3) for the generator chi mod 5 with
/// chi(2) = i; these count the ideals of Q(zeta_5).
inline std::vector<std::int64_t> cyclotomic5_ideal_counts(std::int64_t bound) {
  // Discrete log base 2 mod 5: 1 -> 0, 2 -> 1, 4 -> 2, 3 -> 3.
  auto log2mod5 = [](std::int64_t n) -> int {
    switch (n % 5) {
      case 1: return 0;
      case 2: return 1;
      case 4: return 2;
      case 3: return 3;
      default: return -1;
    }
  };
  using C = std::complex<std::int64_t>;
  const C powers_of_i[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
  std::vector<C> series(bound + 1, C(0, 0));
  for (std::int64_t n = 1; n <= bound; ++n) series[n] = C(1, 0);
  for (int j = 1; j <= 3; ++j) {
    std::vector<C> next(bound + 1, C(0, 0));
    for (std::int64_t d = 1; d <= bound; ++d) {
      const int l = log2mod5(d);
      if (l < 0) continue;
      const C chi = powers_of_i[(l * j) % 4];
      for (std::int64_t e = 1; d * e <= bound; ++e) next[d * e] += chi * series[e];
    }
    series = std::move(next);
  }
  std::vector<std::int64_t> out(bound + 1, 0);
  for (std::int64_t n = 1; n <= bound; ++n) out[n] = series[n].real();
  return out;
}

/// Number of roots of x^2 + 1 mod p.
inline int roots_x2_plus_1(std::int64_t p) {
  int count = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    if ((x * x + 1) % p == 0) ++count;
  }
  return count;
}

/// Number of roots of x^2 - x - 1 mod p (the minimal polynomial of the golden ratio).
inline int roots_golden(std::int64_t p) {
  int count = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    if (((x * x - x - 1) % p + p) % p == 0) ++count;
  }
  return count;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// sum_{n <= N} 1 / n^s plus the integral tail bound midpoint N^(1-s)/(s-1) - N^-s/2.
inline double zeta_direct(double s, std::int64_t terms) {
  double total = 0.0;
  for (std::int64_t n = terms; n >= 1; --n) total += std::pow(static_cast<double>(n), -s);
  const double N = static_cast<double>(terms);
  return total + std::pow(N, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(N, -s) +
         s / 12.0 * std::pow(N, -s - 1.0);
}

/// Catalan's constant: sum (-1)^k / (2k+1)^2, averaging two consecutive partial sums.
inline double catalan_direct(std::int64_t terms) {
  double total = 0.0;
  double previous = 0.0;
  for (std::int64_t k = 0; k <= terms; ++k) {
    previous = total;
    const double t = 1.0 / static_cast<double>((2 * k + 1) * (2 * k + 1));
    total += k % 2 == 0 ? t : -t;
  }
  return 0.5 * (total + previous);
}

/// Leibniz series 1 - 1/3 + 1/5 - ... with repeated averaging of partial sums.
inline double leibniz_accelerated(int terms) {
  std::vector<double> partial;
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    total += (k % 2 == 0 ? 1.0 : -1.0) / (2.0 * k + 1.0);
    partial.push_back(total);
  }
  while (partial.size() > 1) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) next.push_back(0.5 * (partial[i] + partial[i + 1]));
    partial = std::move(next);
  }
  return partial[0];
}

/// S(x, n) over Q from the classical sums: sum_{q <= x} c_q(n).
inline std::int64_t classical_inner_sum(std::int64_t x, std::int64_t n) {
  std::int64_t total = 0;
  for (std::int64_t q = 1; q <= x; ++q) total += ramanujan_divisor(q, n);
  return total;
}

}  // namespace oracle
