#include "doctest.h"

#include <cmath>
#include <random>

#include "ideal_moments/errors.hpp"
#include "ideal_moments/moments.hpp"
#include "oracles.hpp"

using namespace ideal_moments;

namespace {

const NumberField kQ = NumberField::rational();
const NumberField kQi = NumberField::quadratic(-1);

}  // namespace

TEST_CASE("inner sum examples") {
  const Ideal two = Ideal::from_integer(kQ, 2);
  const Ideal three = Ideal::from_integer(kQ, 3);
  CHECK(inner_sum(kQ, 2, two, InnerSumMethod::Brute) == 2);
  CHECK(inner_sum(kQ, 2, two, InnerSumMethod::Mertens) == 2);
  CHECK(inner_sum(kQ, 2, three, InnerSumMethod::Brute) == 0);
  CHECK(inner_sum(kQ, 2, three, InnerSumMethod::Mertens) == 0);

  const auto mertens = mertens_table(kQi, 200);
  for (std::uint64_t x : {1, 2, 5, 17, 200}) {
    CHECK(inner_sum_mertens(mertens, x, Ideal::unit(kQi)) == mertens.exact_values()[x]);
  }
  CHECK_THROWS_AS(inner_sum_mertens(mertens, 201, Ideal::unit(kQi)), DomainError);
}

TEST_CASE("Mertens and brute inner sums agree on seeded pairs") {
  for (const auto& field : reference_fields()) {
    const auto ideals = enumerate_ideals(field, 1000);
    const auto mertens = mertens_table(field, 500);
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
    std::uniform_int_distribution<std::uint64_t> pick_x(1, 500);
    for (int trial = 0; trial < 100; ++trial) {
      const Ideal& ideal = ideals[pick(rng)];
      const std::uint64_t x = pick_x(rng);
      CHECK(inner_sum(field, x, ideal, InnerSumMethod::Brute) ==
            inner_sum_mertens(mertens, x, ideal));
    }
  }
}

TEST_CASE("moment sums: worked examples") {
  const auto q = moment_sums(kQ, 2, 3);
  CHECK(q.first == 2);
  CHECK(q.second == 4);
  CHECK(q.ideals == 3);
  for (const auto& field : reference_fields()) {
    const auto one = moment_sums(field, 1, 500);
    const auto counts = ideal_count_table(field, 500).exact_values();
    Int128 total = 0;
    for (std::uint64_t n = 1; n <= 500; ++n) total += counts[n];
    CHECK(one.first == total);
    CHECK(one.second == total);
    CHECK(one.ideals == total);
  }
  const auto qi = moment_sums(kQi, 1, 10);
  CHECK(qi.first == 9);
}

TEST_CASE("fast moment sums equal brute force") {
  for (const auto& field : reference_fields()) {
    const auto fast = moment_sums(field, 200, 2000);
    const auto brute = moment_sums_brute(field, 200, 2000);
    CHECK(fast.first == brute.first);
    CHECK(fast.second == brute.second);
    CHECK(fast.ideals == brute.ideals);
  }
  for (std::uint64_t x : {1, 3, 10, 57}) {
    for (std::uint64_t y : {1, 2, 30, 300}) {
      const auto fast = moment_sums(NumberField::cyclotomic(12), x, y);
      const auto brute = moment_sums_brute(NumberField::cyclotomic(12), x, y);
      CHECK(fast.first == brute.first);
      CHECK(fast.second == brute.second);
    }
  }
}

TEST_CASE("rational moments reduce to classical Ramanujan sums") {
  for (std::uint64_t x : {1, 7, 30}) {
    for (std::uint64_t y : {1, 50, 300}) {
      std::int64_t first = 0;
      std::int64_t second = 0;
      for (std::int64_t n = 1; n <= static_cast<std::int64_t>(y); ++n) {
        const std::int64_t s = oracle::classical_inner_sum(static_cast<std::int64_t>(x), n);
        first += s;
        second += s * s;
      }
      const auto sums = moment_sums(kQ, x, y);
      CHECK(sums.first == first);
      CHECK(sums.second == second);
    }
  }
}

TEST_CASE("thread count does not change the sums") {
  MomentOptions one;
  MomentOptions eight;
  eight.threads = 8;
  for (const auto& field : reference_fields()) {
    const auto a = moment_sums(field, 40, 100000, one);
    const auto b = moment_sums(field, 40, 100000, eight);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.ideals == b.ideals);
  }
}

TEST_CASE("moment results carry predictions") {
  const auto first = first_moment(kQi, 10, 1000);
  CHECK(first.kind == "first");
  CHECK(first.predicted == doctest::Approx(250 * std::acos(-1.0)));
  CHECK(first.residual == doctest::Approx(to_double(first.empirical) - first.predicted));
  CHECK(first.error_scale == doctest::Approx(first_moment_scale(10, 1000)));
  CHECK(std::isnan(first.c2));

  const auto second = second_moment_from(kQi, 10, 100, 12345, 0.5);
  CHECK(second.regime == "below");
  CHECK(second.alternatives.size() == 4);
  CHECK(second_moment_from(kQi, 10, 1000, 1, 1.0).regime == "above");
  CHECK_THROWS_AS(second_moment_from(kQi, 10, 100, 1, 0.7), DomainError);
  CHECK(second_moment_scale(4, 9) == doctest::Approx(9 * 8.0));
  CHECK(first_moment_scale(2, 4) == doctest::Approx(2 * 2 * 1.0));
}

TEST_CASE("divisor averages") {
  const auto tau = avg_sigma(kQ, 4, ZParam(0));
  REQUIRE(tau.exact);
  CHECK(*tau.exact == 8);
  CHECK(tau.empirical == 8.0);
  const auto sigma = avg_sigma(kQ, 2, ZParam(1));
  CHECK(*sigma.exact == 4);
  CHECK(avg_sigma(kQi, 1, ZParam(-0.25)).empirical == doctest::Approx(1.0));
  CHECK(std::isnan(avg_sigma(kQ, 100, ZParam(1)).predicted));
  const auto quarter = avg_sigma(kQ, 10000, ZParam(-0.25));
  CHECK_FALSE(quarter.exact);
  CHECK(std::abs(quarter.residual) < 20 * avg_sigma_scale(10000));

  const auto pair = avg_sigma_pair(kQ, 3, ZParam(1), ZParam(1));
  CHECK(*pair.exact == 1 + 9 + 16);
  CHECK(avg_sigma_pair_scale(100, -0.2, -0.1, 2) == doctest::Approx(std::pow(100, 0.35 + 0.4)));
}

TEST_CASE("error exponent fit") {
  std::vector<std::pair<double, double>> points;
  for (double s : {10.0, 100.0, 1000.0, 10000.0}) points.emplace_back(s, 3 * std::pow(s, 0.8));
  const auto fit = fit_error_exponent(points);
  CHECK(fit.slope == doctest::Approx(0.8));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit.r_squared == doctest::Approx(1.0));

  points.emplace_back(5.0, 0.0);
  CHECK(fit_error_exponent(points).dropped == 1);
  CHECK_THROWS_AS(fit_error_exponent({{1.0, 1.0}, {2.0, 0.0}, {3.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(fit_error_exponent({{2.0, 1.0}, {2.0, 2.0}, {2.0, 3.0}}), DomainError);
}

TEST_CASE("resource caps") {
  MomentOptions tight;
  tight.limits.max_table_n = 1000;
  CHECK_THROWS_AS(moment_sums(kQ, 10, 5000, tight), ResourceLimitError);
  tight.limits = {};
  tight.limits.max_ideals = 100;
  CHECK_THROWS_AS(moment_sums(kQi, 10, 5000, tight), ResourceLimitError);
}

TEST_CASE("first moment residual stays within its scale for Q(i)") {
  for (std::uint64_t x : {10, 20, 40}) {
    const auto r = first_moment(kQi, x, x * x * x);
    CHECK(std::abs(r.normalized_residual) < 10.0);
  }
}
