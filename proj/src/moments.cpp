#include "ideal_moments/moments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "ideal_moments/errors.hpp"
#include "ideal_moments/numtheory.hpp"
#include "ideal_moments/summation.hpp"

namespace ideal_moments {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Int128 mertens_at(const std::vector<Int128>& mertens, std::uint64_t t) {
  return t == 0 ? Int128{0} : mertens[t];
}

}  // namespace

// ---------------------------------------------------------------------------
// Inner sums

Int128 inner_sum_mertens(const CoefficientTable& mertens, std::uint64_t x, const Ideal& ideal) {
  if (x < 1) throw DomainError("inner_sum: x must be >= 1");
  if (mertens.bound < x) {
    throw DomainError("inner_sum: Mertens table covers " + std::to_string(mertens.bound) +
                      " < x = " + std::to_string(x));
  }
  if (!(mertens.field == ideal.field())) throw FieldMismatchError("inner_sum: table field");
  const auto& m = mertens.exact_values();
  Int128 total = 0;
  for (const Ideal& d : ideal_divisors(ideal)) {
    if (d.norm() > x) continue;
    total = checked_add(total, checked_mul(static_cast<Int128>(d.norm()), mertens_at(m, x / d.norm())));
  }
  return total;
}

Int128 inner_sum(const NumberField& field, std::uint64_t x, const Ideal& ideal,
                 InnerSumMethod method, const ResourceLimits& limits) {
  if (x < 1) throw DomainError("inner_sum: x must be >= 1");
  if (!(field == ideal.field())) throw FieldMismatchError("inner_sum: ideal from another field");
  if (method == InnerSumMethod::Mertens) {
    return inner_sum_mertens(mertens_table(field, x, limits), x, ideal);
  }
  Int128 total = 0;
  for (const Ideal& j : enumerate_ideals(field, x, limits)) {
    total = checked_add(total, ramanujan_sum(j, ideal, RamanujanMethod::DivisorSum));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Moment sums

namespace {

// Divisor-norm profile of one local exponent vector: count[t] = number of divisors of norm q^t.
struct LocalClass {
  Int128 multiplicity;
  std::vector<Int128> count;
};

// All local classes for g primes above p and total exponent T, grouped by identical profile.
class ProfileCache {
 public:
  const std::vector<LocalClass>& get(int g, int total) {
    auto& slot = cache_[{g, total}];
    if (slot.empty()) slot = build(g, total);
    return slot;
  }

 private:
  static std::vector<LocalClass> build(int g, int total) {
    std::map<std::vector<Int128>, Int128> grouped;
    for (const auto& vec : exponent_vectors(g, total)) {
      std::vector<Int128> count{1};
      for (int v : vec) {
        std::vector<Int128> next(count.size() + static_cast<std::size_t>(v), 0);
        for (std::size_t i = 0; i < count.size(); ++i) {
          for (int u = 0; u <= v; ++u) next[i + static_cast<std::size_t>(u)] += count[i];
        }
        count = std::move(next);
      }
      grouped[count] += 1;
    }
    std::vector<LocalClass> out;
    for (auto& [count, mult] : grouped) out.push_back({mult, count});
    return out;
  }

  std::map<std::pair<int, int>, std::vector<LocalClass>> cache_;
};

struct LocalPart {
  std::uint64_t q;  // p^f
  const std::vector<LocalClass>* classes;
};

struct Divisor {
  std::uint64_t norm;
  Int128 count;
};

class MomentWorker {
 public:
  MomentWorker(const NumberField& field, const nt::SpfSieve& sieve,
               const std::vector<Int128>& mertens, std::uint64_t x)
      : field_(field), sieve_(sieve), mertens_(mertens), x_(x) {}

  MomentSums run(std::uint64_t begin, std::uint64_t end) {
    MomentSums sums;
    for (std::uint64_t n = begin; n < end; ++n) {
      if (!collect(n)) continue;
      walk(0, Int128{1}, {{1, 1}}, sums);
    }
    return sums;
  }

 private:
  bool collect(std::uint64_t n) {
    parts_.clear();
    std::uint64_t rest = n;
    while (rest > 1) {
      const std::uint64_t p = sieve_.smallest_factor(rest);
      int k = 0;
      while (rest % p == 0) {
        rest /= p;
        ++k;
      }
      auto it = signatures_.find(p);
      if (it == signatures_.end()) it = signatures_.emplace(p, split_known_prime(field_, p)).first;
      const SplittingSignature& sig = it->second;
      if (k % sig.f != 0) return false;
      std::uint64_t q = 1;
      for (int i = 0; i < sig.f; ++i) q *= p;
      parts_.push_back({q, &profiles_.get(sig.g, k / sig.f)});
    }
    return true;
  }

  // Depth-first over one local class per prime; divisors above x are pruned as they appear.
  void walk(std::size_t depth, Int128 multiplicity, std::vector<Divisor> divisors,
            MomentSums& sums) {
    if (depth == parts_.size()) {
      Int128 s = 0;
      for (const auto& d : divisors) {
        const Int128 term = checked_mul(static_cast<Int128>(d.norm), mertens_at(mertens_, x_ / d.norm));
        s = checked_add(s, checked_mul(d.count, term));
      }
      sums.first = checked_add(sums.first, checked_mul(multiplicity, s));
      sums.second = checked_add(sums.second, checked_mul(multiplicity, checked_mul(s, s)));
      sums.ideals = checked_add(sums.ideals, multiplicity);
      return;
    }
    const LocalPart& part = parts_[depth];
    for (const LocalClass& cls : *part.classes) {
      std::vector<Divisor> next;
      next.reserve(divisors.size() * cls.count.size());
      for (const auto& d : divisors) {
        std::uint64_t norm = d.norm;
        for (std::size_t t = 0; t < cls.count.size(); ++t) {
          if (norm > x_) break;
          next.push_back({norm, checked_mul(d.count, cls.count[t])});
          if (t + 1 < cls.count.size() && norm > x_ / part.q) break;
          norm *= part.q;
        }
      }
      walk(depth + 1, checked_mul(multiplicity, cls.multiplicity), std::move(next), sums);
    }
  }

  const NumberField& field_;
  const nt::SpfSieve& sieve_;
  const std::vector<Int128>& mertens_;
  std::uint64_t x_;
  ProfileCache profiles_;
  std::map<std::uint64_t, SplittingSignature> signatures_;
  std::vector<LocalPart> parts_;
};

void check_bounds(const NumberField& field, std::uint64_t x, std::uint64_t y,
                  const ResourceLimits& limits) {
  if (x < 1 || y < 1) throw DomainError("moments: x and y must be >= 1");
  if (x > limits.max_table_n || y > limits.max_table_n) {
    throw ResourceLimitError("moments: bound exceeds table cap " +
                             std::to_string(limits.max_table_n));
  }
  if (predicted_ideal_count(field, static_cast<std::uint64_t>(y)) >
      static_cast<double>(limits.max_ideals)) {
    throw ResourceLimitError("moments: about " +
                             std::to_string(predicted_ideal_count(field, y)) +
                             " ideals exceed cap " + std::to_string(limits.max_ideals));
  }
}

}  // namespace

MomentSums moment_sums(const NumberField& field, std::uint64_t x, std::uint64_t y,
                       const MomentOptions& options) {
  check_bounds(field, x, y, options.limits);
  CoefficientTable built;
  const CoefficientTable* mertens = options.mertens;
  if (mertens == nullptr) {
    built = mertens_table(field, x, options.limits);
    mertens = &built;
  }
  if (!(mertens->field == field) || mertens->bound < x || !mertens->exact()) {
    throw DomainError("moment_sums: Mertens table does not cover x");
  }
  const nt::SpfSieve sieve(std::max<std::uint64_t>(y, 2));
  const unsigned threads = std::max(1u, options.threads);
  std::vector<MomentSums> partial(threads);
  auto task = [&](unsigned index) {
    const std::uint64_t begin = 1 + y * index / threads;
    const std::uint64_t end = 1 + y * (index + 1) / threads;
    MomentWorker worker(field, sieve, mertens->exact_values(), x);
    partial[index] = worker.run(begin, end);
  };
  if (threads == 1) {
    task(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back([&, i] {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  MomentSums total;
  for (const auto& p : partial) {
    total.first = checked_add(total.first, p.first);
    total.second = checked_add(total.second, p.second);
    total.ideals = checked_add(total.ideals, p.ideals);
  }
  return total;
}

MomentSums moment_sums_brute(const NumberField& field, std::uint64_t x, std::uint64_t y,
                             const ResourceLimits& limits) {
  check_bounds(field, x, y, limits);
  const auto inner = enumerate_ideals(field, x, limits);
  MomentSums total;
  for (const Ideal& ideal : enumerate_ideals(field, y, limits)) {
    Int128 s = 0;
    for (const Ideal& j : inner) {
      s = checked_add(s, ramanujan_sum(j, ideal, RamanujanMethod::DivisorSum));
    }
    total.first = checked_add(total.first, s);
    total.second = checked_add(total.second, checked_mul(s, s));
    total.ideals = checked_add(total.ideals, 1);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Predictions

double first_moment_scale(double x, double y) {
  return x * std::sqrt(y) * std::max(std::log(x), 1.0);
}

double second_moment_scale(double x, double y) { return y * std::pow(x, 1.5); }

namespace {

Prediction make_prediction(std::string label, double empirical, double predicted, double scale) {
  return {std::move(label), predicted, empirical - predicted, (empirical - predicted) / scale};
}

}  // namespace

MomentResult first_moment_from(const NumberField& field, std::uint64_t x, std::uint64_t y,
                               Int128 empirical) {
  MomentResult out;
  out.field = field.descriptor();
  out.kind = "first";
  out.x = x;
  out.y = y;
  out.empirical = empirical;
  out.predicted = main_term_first(field, static_cast<double>(x), static_cast<double>(y));
  out.error_scale = first_moment_scale(static_cast<double>(x), static_cast<double>(y));
  out.residual = to_double(empirical) - out.predicted;
  out.normalized_residual = out.residual / out.error_scale;
  out.c2 = std::numeric_limits<double>::quiet_NaN();
  return out;
}

MomentResult second_moment_from(const NumberField& field, std::uint64_t x, std::uint64_t y,
                                Int128 empirical, double c2) {
  if (c2 != 0.5 && c2 != 1.0) throw DomainError("second_moment: c2 must be 1/2 or 1");
  const double xd = static_cast<double>(x);
  const double yd = static_cast<double>(y);
  const double e = to_double(empirical);
  MomentResult out;
  out.field = field.descriptor();
  out.kind = "second";
  out.x = x;
  out.y = y;
  out.empirical = empirical;
  out.c2 = c2;
  const SecondMomentRegime regime = second_moment_regime(xd, yd);
  out.regime = regime == SecondMomentRegime::Below ? "below" : "above";
  out.error_scale = second_moment_scale(xd, yd);
  out.predicted = main_term_second(field, xd, yd, regime, c2);
  out.residual = e - out.predicted;
  out.normalized_residual = out.residual / out.error_scale;
  for (double c : {0.5, 1.0}) {
    for (auto r : {SecondMomentRegime::Below, SecondMomentRegime::Above}) {
      const std::string label = std::string(c == 0.5 ? "c2=0.5" : "c2=1") +
                                (r == SecondMomentRegime::Below ? ",below" : ",above");
      out.alternatives.push_back(
          make_prediction(label, e, main_term_second(field, xd, yd, r, c), out.error_scale));
    }
  }
  return out;
}

MomentResult first_moment(const NumberField& field, std::uint64_t x, std::uint64_t y,
                          const MomentOptions& options) {
  const auto start = Clock::now();
  const MomentSums sums = moment_sums(field, x, y, options);
  MomentResult out = first_moment_from(field, x, y, sums.first);
  out.runtime_ms = elapsed_ms(start);
  return out;
}

MomentResult second_moment(const NumberField& field, std::uint64_t x, std::uint64_t y,
                           const MomentOptions& options) {
  const auto start = Clock::now();
  const MomentSums sums = moment_sums(field, x, y, options);
  MomentResult out = second_moment_from(field, x, y, sums.second, options.c2);
  out.runtime_ms = elapsed_ms(start);
  return out;
}

// ---------------------------------------------------------------------------
// Divisor averages

double avg_sigma_scale(double x) { return std::sqrt(x); }

double avg_sigma_pair_scale(double x, double a1, double a2, int degree) {
  return std::pow(x, (1.0 + a1 + a2) / 2.0 - 2.0 * a2 * degree);
}

namespace {

void finish_average(AverageResult& out, const CoefficientTable& table, std::uint64_t x) {
  if (x < 1 || table.bound < x) throw DomainError("average: table does not cover x");
  if (table.exact()) {
    Int128 total = 0;
    for (std::uint64_t n = 1; n <= x; ++n) total = checked_add(total, table.exact_values()[n]);
    out.exact = total;
    out.empirical = to_double(total);
  } else {
    CompensatedSum total;
    for (std::uint64_t n = 1; n <= x; ++n) total.add(table.real_values()[n]);
    out.empirical = total.value();
  }
  out.residual = out.empirical - out.predicted;
  out.normalized_residual = out.residual / out.error_scale;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

AverageResult avg_sigma(const CoefficientTable& table, std::uint64_t x, const ZParam& z) {
  const auto start = Clock::now();
  AverageResult out;
  out.field = table.field.descriptor();
  out.kind = "avg-sigma";
  out.x = x;
  out.z = z.text();
  const double zr = z.real();
  out.predicted =
      zr > -0.5 && zr < 0.0 ? avg_sigma_main(table.field, static_cast<double>(x), zr) : nan();
  out.error_scale = avg_sigma_scale(static_cast<double>(x));
  finish_average(out, table, x);
  out.runtime_ms = elapsed_ms(start);
  return out;
}

AverageResult avg_sigma(const NumberField& field, std::uint64_t x, const ZParam& z,
                        const ResourceLimits& limits) {
  const auto start = Clock::now();
  AverageResult out = avg_sigma(divisor_coeff_table(field, x, z, limits), x, z);
  out.runtime_ms = elapsed_ms(start);
  return out;
}

AverageResult avg_sigma_pair(const CoefficientTable& table, std::uint64_t x, const ZParam& z1,
                             const ZParam& z2) {
  const auto start = Clock::now();
  AverageResult out;
  out.field = table.field.descriptor();
  out.kind = "avg-sigma-pair";
  out.x = x;
  out.z = z1.text() + "," + z2.text();
  try {
    out.predicted = r0_main(table.field, static_cast<double>(x), z1.real(), z2.real());
  } catch (const std::domain_error&) {
    out.predicted = nan();
  }
  out.error_scale =
      avg_sigma_pair_scale(static_cast<double>(x), z1.real(), z2.real(), table.field.degree());
  finish_average(out, table, x);
  out.runtime_ms = elapsed_ms(start);
  return out;
}

AverageResult avg_sigma_pair(const NumberField& field, std::uint64_t x, const ZParam& z1,
                             const ZParam& z2, const ResourceLimits& limits) {
  const auto start = Clock::now();
  AverageResult out = avg_sigma_pair(pair_coeff_table(field, x, z1, z2, limits), x, z1, z2);
  out.runtime_ms = elapsed_ms(start);
  return out;
}

// ---------------------------------------------------------------------------
// Exponent fit

FitResult fit_error_exponent(const std::vector<std::pair<double, double>>& points) {
  FitResult out;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [scale, residual] : points) {
    const double r = std::abs(residual);
    if (!(scale > 0.0) || !(r > 0.0) || !std::isfinite(r) || !std::isfinite(scale)) {
      ++out.dropped;
      continue;
    }
    logs.emplace_back(std::log(scale), std::log(r));
  }
  out.used = logs.size();
  if (logs.size() < 3) throw DomainError("fit_error_exponent: fewer than 3 usable points");
  const double n = static_cast<double>(logs.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [lx, ly] : logs) {
    mx += lx;
    my += ly;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
    syy += (ly - my) * (ly - my);
  }
  if (sxx == 0.0) throw DomainError("fit_error_exponent: all scales coincide");
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return out;
}

}  // namespace ideal_moments
