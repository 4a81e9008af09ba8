#include "ideal_moments/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "ideal_moments/analytic.hpp"
#include "ideal_moments/errors.hpp"
#include "ideal_moments/numtheory.hpp"

namespace ideal_moments {

std::vector<PrimeIdeal> primes_above(const NumberField& field, std::uint64_t p) {
  const SplittingSignature sig = split_prime(field, p);
  std::uint64_t norm = 1;
  for (int i = 0; i < sig.f; ++i) norm = checked_mul_u64(norm, p);
  std::vector<PrimeIdeal> out;
  out.reserve(static_cast<std::size_t>(sig.g));
  for (int i = 0; i < sig.g; ++i) out.push_back({p, i, sig.e, sig.f, norm});
  return out;
}

// ---------------------------------------------------------------------------
// Ideal

namespace {

std::uint64_t norm_of(std::span<const Ideal::Factor> factors) {
  std::uint64_t norm = 1;
  for (const auto& [prime, exponent] : factors) {
    for (int i = 0; i < exponent; ++i) norm = checked_mul_u64(norm, prime.norm);
  }
  return norm;
}

void require_same_field(const Ideal& a, const Ideal& b) {
  if (!(a.field() == b.field())) {
    throw FieldMismatchError("ideals from " + a.field().descriptor() + " and " +
                             b.field().descriptor());
  }
}

}  // namespace

Ideal::Ideal(NumberField field) : field_(field) {}

Ideal::Ideal(NumberField field, std::vector<Factor> factors) : field_(field) {
  canonicalize(std::move(factors));
  for (const auto& [prime, exponent] : factors_) {
    const SplittingSignature sig = split_prime(field_, prime.p);
    if (prime.index < 0 || prime.index >= sig.g || prime.f != sig.f || prime.e != sig.e) {
      throw DomainError("prime ideal data inconsistent with " + field_.descriptor());
    }
  }
}

Ideal Ideal::trusted(const NumberField& field, std::vector<Factor> factors) {
  Ideal out(field);
  out.canonicalize(std::move(factors));
  return out;
}

void Ideal::canonicalize(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (auto& [prime, exponent] : factors) {
    if (exponent < 0) throw DomainError("negative exponent in integral ideal");
    if (exponent == 0) continue;
    if (!factors_.empty() && factors_.back().first == prime) {
      factors_.back().second += exponent;
    } else {
      factors_.emplace_back(prime, exponent);
    }
  }
  norm_ = norm_of(factors_);
}

Ideal Ideal::prime(const NumberField& field, const PrimeIdeal& prime, int exponent) {
  return Ideal(field, {{prime, exponent}});
}

Ideal Ideal::from_integer(const NumberField& field, std::uint64_t n) {
  if (n == 0) throw DomainError("the zero ideal is not supported");
  std::vector<Factor> factors;
  for (const auto& [p, k] : nt::factor(n)) {
    for (const auto& prime : primes_above(field, p)) factors.emplace_back(prime, prime.e * k);
  }
  return trusted(field, std::move(factors));
}

int Ideal::valuation(const PrimeIdeal& prime) const {
  const auto it = std::lower_bound(
      factors_.begin(), factors_.end(), prime,
      [](const Factor& factor, const PrimeIdeal& key) { return factor.first < key; });
  return (it != factors_.end() && it->first == prime) ? it->second : 0;
}

bool Ideal::divides(const Ideal& other) const {
  require_same_field(*this, other);
  for (const auto& [prime, exponent] : factors_) {
    if (other.valuation(prime) < exponent) return false;
  }
  return true;
}

std::string Ideal::to_string() const {
  if (factors_.empty()) return "O_K";
  std::string out;
  for (const auto& [prime, exponent] : factors_) {
    if (!out.empty()) out += "*";
    out += "P" + std::to_string(prime.p) + "_" + std::to_string(prime.index);
    if (exponent != 1) out += "^" + std::to_string(exponent);
  }
  return out;
}

std::strong_ordering operator<=>(const Ideal& a, const Ideal& b) {
  if (auto c = a.norm_ <=> b.norm_; c != 0) return c;
  const auto& fa = a.factors_;
  const auto& fb = b.factors_;
  const std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = fa[i].first <=> fb[i].first; c != 0) return c;
    if (auto c = fa[i].second <=> fb[i].second; c != 0) return c;
  }
  return fa.size() <=> fb.size();
}

namespace {

template <typename Combine>
Ideal merge(const Ideal& a, const Ideal& b, Combine combine) {
  require_same_field(a, b);
  std::vector<Ideal::Factor> out;
  auto ia = a.factors().begin();
  auto ib = b.factors().begin();
  while (ia != a.factors().end() || ib != b.factors().end()) {
    if (ib == b.factors().end() || (ia != a.factors().end() && ia->first < ib->first)) {
      out.emplace_back(ia->first, combine(ia->second, 0));
      ++ia;
    } else if (ia == a.factors().end() || ib->first < ia->first) {
      out.emplace_back(ib->first, combine(0, ib->second));
      ++ib;
    } else {
      out.emplace_back(ia->first, combine(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return Ideal::trusted(a.field(), std::move(out));
}

}  // namespace

Ideal ideal_mul(const Ideal& a, const Ideal& b) {
  return merge(a, b, [](int x, int y) { return x + y; });
}

Ideal ideal_gcd(const Ideal& a, const Ideal& b) {
  return merge(a, b, [](int x, int y) { return std::min(x, y); });
}

Ideal ideal_quotient(const Ideal& a, const Ideal& b) {
  if (!b.divides(a)) throw DomainError("ideal_quotient: divisor does not divide");
  return merge(a, b, [](int x, int y) { return x - y; });
}

int valuation(const Ideal& ideal, const PrimeIdeal& prime) { return ideal.valuation(prime); }

std::vector<Ideal> ideal_divisors(const Ideal& ideal) {
  std::vector<std::vector<Ideal::Factor>> partial{{}};
  for (const auto& [prime, exponent] : ideal.factors()) {
    std::vector<std::vector<Ideal::Factor>> next;
    next.reserve(partial.size() * static_cast<std::size_t>(exponent + 1));
    for (const auto& base : partial) {
      for (int j = 0; j <= exponent; ++j) {
        auto extended = base;
        if (j > 0) extended.emplace_back(prime, j);
        next.push_back(std::move(extended));
      }
    }
    partial = std::move(next);
  }
  std::vector<Ideal> out;
  out.reserve(partial.size());
  for (auto& factors : partial) out.push_back(Ideal::trusted(ideal.field(), std::move(factors)));
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::vector<int>>& exponent_vectors(int g, int total) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<std::vector<int>>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{g, total}];
  if (!slot) {
    slot = std::make_unique<std::vector<std::vector<int>>>();
    std::vector<int> current(static_cast<std::size_t>(g), 0);
    // Fill position i with every feasible value, recursing on the remainder.
    auto recurse = [&](auto&& self, int position, int remaining) -> void {
      if (position == g - 1) {
        current[static_cast<std::size_t>(position)] = remaining;
        slot->push_back(current);
        return;
      }
      for (int v = 0; v <= remaining; ++v) {
        current[static_cast<std::size_t>(position)] = v;
        self(self, position + 1, remaining - v);
      }
    };
    if (g > 0) recurse(recurse, 0, total);
  }
  return *slot;
}

std::vector<Ideal> local_ideals(const NumberField& field, std::uint64_t p, int k) {
  const auto primes = primes_above(field, p);
  const int f = primes.front().f;
  std::vector<Ideal> out;
  if (k % f != 0) return out;
  for (const auto& vec : exponent_vectors(static_cast<int>(primes.size()), k / f)) {
    std::vector<Ideal::Factor> factors;
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (vec[i] > 0) factors.emplace_back(primes[i], vec[i]);
    }
    out.push_back(Ideal::trusted(field, std::move(factors)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double predicted_ideal_count(const NumberField& field, std::uint64_t bound) {
  return constants(field).rho * static_cast<double>(bound);
}

std::vector<Ideal> enumerate_ideals(const NumberField& field, std::uint64_t bound,
                                    const ResourceLimits& limits) {
  if (bound < 1) throw DomainError("enumerate_ideals: bound must be >= 1");
  if (bound > limits.max_table_n ||
      predicted_ideal_count(field, bound) > static_cast<double>(limits.max_ideals)) {
    throw ResourceLimitError("enumerate_ideals: bound " + std::to_string(bound) +
                             " exceeds the configured cap for " + field.descriptor());
  }
  const nt::SpfSieve sieve(bound);
  std::vector<Ideal> out;
  out.emplace_back(field);
  for (std::uint64_t n = 2; n <= bound; ++n) {
    std::vector<std::vector<Ideal::Factor>> partial{{}};
    for (const auto& [p, k] : sieve.factor(n)) {
      const auto locals = local_ideals(field, p, k);
      std::vector<std::vector<Ideal::Factor>> next;
      for (const auto& base : partial) {
        for (const auto& local : locals) {
          auto extended = base;
          extended.insert(extended.end(), local.factors().begin(), local.factors().end());
          next.push_back(std::move(extended));
        }
      }
      partial = std::move(next);
      if (partial.empty()) break;
    }
    const std::size_t first = out.size();
    for (auto& factors : partial) out.push_back(Ideal::trusted(field, std::move(factors)));
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient tables

const std::vector<Int128>& CoefficientTable::exact_values() const {
  return std::get<std::vector<Int128>>(values);
}
const std::vector<double>& CoefficientTable::real_values() const {
  return std::get<std::vector<double>>(values);
}
std::vector<Int128>& CoefficientTable::exact_values() {
  return std::get<std::vector<Int128>>(values);
}
std::vector<double>& CoefficientTable::real_values() {
  return std::get<std::vector<double>>(values);
}

namespace {

template <typename T, typename Multiply>
std::vector<T> sieve_table(const NumberField& field, std::uint64_t bound,
                           const LocalFactorFn<T>& local, const ResourceLimits& limits,
                           Multiply multiply) {
  if (bound < 1) throw DomainError("table bound must be >= 1");
  if (bound > limits.max_table_n) {
    throw ResourceLimitError("table bound " + std::to_string(bound) + " exceeds cap " +
                             std::to_string(limits.max_table_n));
  }
  const nt::SpfSieve sieve(bound);
  std::vector<T> values(bound + 1, T{});
  values[1] = T{1};
  // Local values for primes p <= sqrt(bound); larger primes only occur to the first power
  // as the smallest factor of n = p itself.
  std::uint64_t small_limit = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound)));
  while ((small_limit + 1) * (small_limit + 1) <= bound) ++small_limit;
  std::vector<std::vector<T>> small(small_limit + 1);
  for (std::uint64_t n = 2; n <= bound; ++n) {
    const std::uint64_t p = sieve.smallest_factor(n);
    if (p > small_limit) {
      values[n] = local(split_known_prime(field, p), 1);
      continue;
    }
    std::uint64_t rest = n;
    int k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    auto& cache = small[p];
    if (cache.empty()) {
      const SplittingSignature sig = split_known_prime(field, p);
      cache.push_back(T{1});
      std::uint64_t power = 1;
      for (int j = 1; power <= bound / p; ++j) {
        power *= p;
        cache.push_back(local(sig, j));
      }
    }
    values[n] = multiply(cache[static_cast<std::size_t>(k)], values[rest]);
  }
  return values;
}

}  // namespace

std::vector<Int128> multiplicative_table_exact(const NumberField& field, std::uint64_t bound,
                                               const LocalFactorFn<Int128>& local,
                                               const ResourceLimits& limits) {
  return sieve_table<Int128>(field, bound, local, limits,
                             [](Int128 a, Int128 b) { return checked_mul(a, b); });
}

std::vector<double> multiplicative_table_real(const NumberField& field, std::uint64_t bound,
                                              const LocalFactorFn<double>& local,
                                              const ResourceLimits& limits) {
  return sieve_table<double>(field, bound, local, limits,
                             [](double a, double b) { return a * b; });
}

CoefficientTable ideal_count_table(const NumberField& field, std::uint64_t bound,
                                   const ResourceLimits& limits) {
  // Ideals of norm p^k above p: exponent vectors on g primes with f * sum = k.
  auto local = [](const SplittingSignature& sig, int k) -> Int128 {
    if (k % sig.f != 0) return 0;
    return static_cast<Int128>(nt::binomial(static_cast<std::uint64_t>(k / sig.f + sig.g - 1),
                                            static_cast<std::uint64_t>(sig.g - 1)));
  };
  return {field, "ideal_count", bound, multiplicative_table_exact(field, bound, local, limits)};
}

}  // namespace ideal_moments
