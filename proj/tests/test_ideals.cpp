#include "doctest.h"

#include <cmath>

#include "ideal_moments/errors.hpp"
#include "ideal_moments/ideals.hpp"
#include "oracles.hpp"

using namespace ideal_moments;

namespace {

const NumberField kQ = NumberField::rational();
const NumberField kQi = NumberField::quadratic(-1);
const NumberField kQ5 = NumberField::quadratic(5);
const NumberField kZeta5 = NumberField::cyclotomic(5);

}  // namespace

TEST_CASE("enumeration of small ideals") {
  const auto q = enumerate_ideals(kQ, 4);
  REQUIRE(q.size() == 4);
  for (std::uint64_t n = 1; n <= 4; ++n) CHECK(q[n - 1] == Ideal::from_integer(kQ, n));

  CHECK(enumerate_ideals(kQi, 10).size() == 9);
  const auto unit = enumerate_ideals(kQi, 1);
  REQUIRE(unit.size() == 1);
  CHECK(unit[0].is_unit());
  CHECK(unit[0].to_string() == "O_K");
}

TEST_CASE("enumeration is sorted, unique and agrees with the count table") {
  for (const auto& field : reference_fields()) {
    const auto ideals = enumerate_ideals(field, 10000);
    const auto counts = ideal_count_table(field, 10000);
    for (std::size_t i = 1; i < ideals.size(); ++i) REQUIRE(ideals[i - 1] < ideals[i]);
    std::vector<Int128> seen(10001, 0);
    for (const auto& ideal : ideals) seen[ideal.norm()] += 1;
    for (std::uint64_t n = 1; n <= 10000; ++n) REQUIRE(seen[n] == counts.exact_values()[n]);
  }
}

TEST_CASE("ideal counts against independent oracles") {
  const auto qi = ideal_count_table(kQi, 3000).exact_values();
  const auto q5 = ideal_count_table(kQ5, 3000).exact_values();
  const auto z5 = ideal_count_table(kZeta5, 3000).exact_values();
  const auto q = ideal_count_table(kQ, 100).exact_values();
  const auto cyc = oracle::cyclotomic5_ideal_counts(3000);
  for (std::int64_t n = 1; n <= 3000; ++n) {
    REQUIRE(qi[n] == oracle::gaussian_ideal_count(n));
    REQUIRE(q5[n] == oracle::quadratic_ideal_count(5, n));
    REQUIRE(z5[n] == cyc[n]);
  }
  for (std::size_t n = 1; n <= 100; ++n) CHECK(q[n] == 1);
  CHECK(qi[5] == 2);
  CHECK(qi[3] == 0);
  CHECK(qi[25] == 3);
  CHECK(z5[11] == 4);
}

TEST_CASE("divisors, gcd, product and valuation") {
  const auto above5 = primes_above(kQi, 5);
  REQUIRE(above5.size() == 2);
  const Ideal P = Ideal::prime(kQi, above5[0]);
  const Ideal Q = Ideal::prime(kQi, above5[1]);
  const Ideal O = Ideal::unit(kQi);

  CHECK(ideal_divisors(O).size() == 1);
  const Ideal P2 = ideal_mul(P, P);
  CHECK(P2.norm() == 25);
  const auto chain = ideal_divisors(P2);
  REQUIRE(chain.size() == 3);
  CHECK(chain[0] == O);
  CHECK(chain[1] == P);
  CHECK(chain[2] == P2);
  CHECK(ideal_divisors(ideal_mul(P, Q)).size() == 4);

  CHECK(ideal_gcd(O, P2) == O);
  const Ideal a = ideal_mul(P2, Q);
  const Ideal b = ideal_mul(P, ideal_mul(Q, Q));
  CHECK(ideal_gcd(a, b) == ideal_mul(P, Q));
  CHECK(valuation(a, above5[0]) == 2);
  CHECK(valuation(a, above5[1]) == 1);
  CHECK(ideal_quotient(a, P) == ideal_mul(P, Q));
  CHECK_THROWS(ideal_quotient(P, Q));
  CHECK(Ideal::from_integer(kQi, 5) == ideal_mul(P, Q));
  CHECK(Ideal::from_integer(kQi, 2).norm() == 4);
  CHECK(Ideal::from_integer(kQi, 3).norm() == 9);

  const Ideal other = Ideal::unit(kQ5);
  CHECK_THROWS_AS(ideal_gcd(P, other), FieldMismatchError);
  CHECK_THROWS_AS(ideal_mul(P, other), FieldMismatchError);
}

TEST_CASE("norm is multiplicative and canonical form drops zero exponents") {
  const auto ideals = enumerate_ideals(kZeta5, 400);
  for (const auto& a : ideals) {
    for (const auto& b : ideals) {
      if (a.norm() * b.norm() > 400) break;
      CHECK(ideal_mul(a, b).norm() == a.norm() * b.norm());
    }
  }
  const auto above = primes_above(kQi, 5);
  const Ideal built(kQi, {{above[1], 1}, {above[0], 0}, {above[1], 2}});
  CHECK(built.factors().size() == 1);
  CHECK(built.norm() == 125);
}

TEST_CASE("ideal density approaches the residue") {
  const auto counts = ideal_count_table(kQi, 1000000).exact_values();
  Int128 total = 0;
  for (std::size_t n = 1; n < counts.size(); ++n) total += counts[n];
  CHECK(std::abs(to_double(total) / 1e6 - std::acos(-1.0) / 4) < 1e-2);
}

TEST_CASE("resource caps") {
  ResourceLimits tight{1000, 100};
  CHECK_THROWS_AS(enumerate_ideals(kQi, 5000, tight), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_ideals(kQi, 500, tight), ResourceLimitError);
  CHECK_THROWS_AS(ideal_count_table(kQi, 5000, tight), ResourceLimitError);
  CHECK_NOTHROW(enumerate_ideals(kQi, 100, tight));
}
