#pragma once

// Elementary number theory on 64-bit integers shared by every module.

#include <cstdint>
#include <utility>
#include <vector>

namespace ideal_moments::nt {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic for all 64-bit inputs (strong-pseudoprime test on the first 12 prime bases).
bool is_prime(std::uint64_t n);

// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n);

bool is_squarefree(std::int64_t n);
std::uint64_t euler_phi(std::uint64_t n);

// Smallest k >= 1 with a^k = 1 (mod m); requires gcd(a, m) = 1. Returns 1 for m = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

// Kronecker symbol (a/n) for n >= 1.
int kronecker(std::int64_t a, std::uint64_t n);

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Smallest-prime-factor table on [0, limit]; spf[0] = spf[1] = 0.
class SpfSieve {
 public:
  explicit SpfSieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t smallest_factor(std::uint64_t n) const { return spf_[n]; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }

  // Factorization of n <= limit, ascending primes.
  std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

// Binomial coefficient as a 64-bit value; throws on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace ideal_moments::nt
