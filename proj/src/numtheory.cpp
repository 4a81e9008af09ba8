#include "ideal_moments/numtheory.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "ideal_moments/errors.hpp"
#include "ideal_moments/int128.hpp"

namespace ideal_moments::nt {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  const std::uint64_t a = static_cast<std::uint64_t>(n < 0 ? -n : n);
  for (const auto& [p, k] : factor(a)) {
    if (k > 1) return false;
  }
  return true;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (const auto& [p, k] : factor(n)) result = result / p * (p - 1);
  return result;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  if (gcd(a % m, m) != 1) throw DomainError("multiplicative_order: argument not a unit");
  // The order divides phi(m); strip prime factors while the power stays 1.
  std::uint64_t order = euler_phi(m);
  for (const auto& [p, k] : factor(order)) {
    for (int i = 0; i < k; ++i) {
      if (powmod(a, order / p, m) == 1) {
        order /= p;
      } else {
        break;
      }
    }
  }
  return order;
}

int kronecker(std::int64_t a, std::uint64_t n) {
  if (n == 0) throw DomainError("kronecker: n must be positive");
  int result = 1;
  // Factor out 2 from n using (a/2).
  while ((n & 1) == 0) {
    n >>= 1;
    if ((a & 1) == 0) return 0;
    const std::int64_t r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (a/n) for odd n.
  std::uint64_t b = n;
  std::uint64_t x = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(b)) +
                                                static_cast<std::int64_t>(b)) %
                                               static_cast<std::int64_t>(b));
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::uint64_t r = b % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, b);
    if (x % 4 == 3 && b % 4 == 3) result = -result;
    x %= b;
  }
  return b == 1 ? result : 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

SpfSieve::SpfSieve(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceLimitError("SpfSieve: limit exceeds 32-bit range");
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

std::vector<std::pair<std::uint64_t, int>> SpfSieve::factor(std::uint64_t n) const {
  std::vector<std::pair<std::uint64_t, int>> out;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("binomial overflow");
    }
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace ideal_moments::nt
