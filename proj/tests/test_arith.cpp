#include "doctest.h"

#include <cmath>
#include <random>

#include "ideal_moments/arith.hpp"
#include "ideal_moments/errors.hpp"
#include "oracles.hpp"

using namespace ideal_moments;

namespace {

const NumberField kQ = NumberField::rational();
const NumberField kQi = NumberField::quadratic(-1);

Ideal q_ideal(std::uint64_t n) { return Ideal::from_integer(kQ, n); }

// Swaps the conjugate labels 0 <-> 1 above every split prime.
Ideal relabel(const Ideal& ideal) {
  std::vector<Ideal::Factor> factors;
  for (auto [prime, exponent] : ideal.factors()) {
    const auto above = primes_above(ideal.field(), prime.p);
    if (above.size() == 2) prime = above[1 - prime.index];
    factors.emplace_back(prime, exponent);
  }
  return Ideal(ideal.field(), factors);
}

}  // namespace

TEST_CASE("ZParam exactness") {
  CHECK(ZParam(0).exact());
  CHECK(ZParam(2).exact());
  CHECK(ZParam(3.0).exact());
  CHECK_FALSE(ZParam(-1).exact());
  CHECK_FALSE(ZParam(0.5).exact());
  CHECK_FALSE(ZParam(std::complex<double>(1.0, 2.0)).exact());
  CHECK(ZParam(-0.25).text() == "-0.25");
  CHECK_THROWS_AS(ZParam(0.5).integer(), DomainError);
}

TEST_CASE("moebius and sigma") {
  const auto above = primes_above(kQi, 5);
  const Ideal P = Ideal::prime(kQi, above[0]);
  const Ideal Q = Ideal::prime(kQi, above[1]);
  CHECK(moebius(Ideal::unit(kQi)) == 1);
  CHECK(moebius(P) == -1);
  CHECK(moebius(ideal_mul(P, Q)) == 1);
  CHECK(moebius(ideal_mul(ideal_mul(P, P), Q)) == 0);
  CHECK(sigma_exact(ideal_mul(P, P), 0) == 3);
  CHECK(sigma_exact(P, 1) == 6);
  CHECK(sigma_exact(Ideal::from_integer(kQi, 5), 1) == 36);
  const auto s = std::get<std::complex<double>>(sigma_z(ideal_mul(P, P), ZParam(-1)));
  CHECK(s.real() == doctest::Approx(1 + 0.2 + 0.04).epsilon(1e-14));
  const auto c = sigma_complex(P, {0.0, 1.0});
  CHECK(std::abs(c - (1.0 + std::exp(std::complex<double>(0, std::log(5.0))))) < 1e-14);
  CHECK(std::get<Int128>(sigma_z(P, ZParam(2))) == 26);
}

TEST_CASE("Ramanujan sum examples") {
  CHECK(ramanujan_sum(q_ideal(6), q_ideal(4)) == -1);
  CHECK(ramanujan_sum(q_ideal(6), q_ideal(4), RamanujanMethod::DivisorSum) == -1);
  for (std::uint64_t q = 1; q <= 50; ++q) {
    CHECK(ramanujan_sum(q_ideal(q), q_ideal(1)) == oracle::mobius(static_cast<std::int64_t>(q)));
  }
  const auto ideals = enumerate_ideals(kQi, 50);
  const auto P = Ideal::prime(kQi, primes_above(kQi, 5)[0]);
  for (const auto& i : ideals) {
    CHECK(ramanujan_sum(Ideal::unit(kQi), i) == 1);
    if (!P.divides(i)) CHECK(ramanujan_sum(P, i) == -1);
  }
  CHECK_THROWS_AS(ramanujan_sum(P, q_ideal(2)), FieldMismatchError);
}

TEST_CASE("classical reduction over Q, both oracles") {
  for (std::int64_t q = 1; q <= 300; ++q) {
    for (std::int64_t n = 1; n <= 300; ++n) {
      const Int128 value = ramanujan_sum(q_ideal(q), q_ideal(n));
      REQUIRE(value == oracle::ramanujan_divisor(q, n));
      if (q <= 60 && n <= 60) REQUIRE(value == oracle::ramanujan_exponential(q, n));
    }
  }
}

TEST_CASE("structural properties of C_J(I) over Q(i)") {
  const auto ideals = enumerate_ideals(kQi, 200);
  for (const auto& j : ideals) {
    for (const auto& i : ideals) {
      const Int128 c = ramanujan_sum(j, i);
      const Ideal g = ideal_gcd(i, j);
      CHECK(c <= sigma_exact(g, 1));
      CHECK(-c <= sigma_exact(g, 1));
      if (j.divides(i)) CHECK(c > 0);
      CHECK(ramanujan_sum(relabel(j), relabel(i)) == c);
    }
    CHECK(sigma_exact(relabel(j), 1) == sigma_exact(j, 1));
  }
}

TEST_CASE("coefficient tables") {
  const auto mq = mertens_table(kQ, 10).exact_values();
  CHECK(mq[1] == 1);
  CHECK(mq[10] == -1);
  const auto mi = mertens_table(kQi, 10).exact_values();
  CHECK(mi[1] == 1);
  CHECK(mi[2] == 0);
  for (const auto& field : reference_fields()) {
    CHECK(mertens_table(field, 5).exact_values()[1] == 1);
    CHECK(divisor_coeff_table(field, 5, ZParam(3)).exact_values()[1] == 1);
    CHECK(divisor_coeff_table(field, 5, ZParam(-0.3)).real_values()[1] == 1.0);
  }
  CHECK(divisor_coeff_table(kQi, 10, ZParam(1)).exact_values()[2] == 3);
  CHECK(pair_coeff_table(kQi, 10, ZParam(0), ZParam(0)).exact_values()[5] == 8);
  const auto tau = divisor_coeff_table(kQ, 4, ZParam(0)).exact_values();
  CHECK(tau[1] + tau[2] + tau[3] + tau[4] == 8);
  CHECK_THROWS_AS(divisor_coeff_table(kQ, 10, ZParam(std::complex<double>(0, 1))), DomainError);

  // Real tables against direct sums of sigma over enumerated ideals.
  const auto real = divisor_coeff_table(kQi, 300, ZParam(-0.25)).real_values();
  const auto pair = pair_coeff_table(kQi, 300, ZParam(-0.2), ZParam(-0.1)).real_values();
  std::vector<double> direct(301, 0.0);
  std::vector<double> direct_pair(301, 0.0);
  for (const auto& ideal : enumerate_ideals(kQi, 300)) {
    direct[ideal.norm()] += sigma_complex(ideal, -0.25).real();
    direct_pair[ideal.norm()] +=
        (sigma_complex(ideal, -0.2) * sigma_complex(ideal, -0.1)).real();
  }
  for (std::size_t n = 1; n <= 300; ++n) {
    CHECK(real[n] == doctest::Approx(direct[n]).epsilon(1e-12));
    CHECK(pair[n] == doctest::Approx(direct_pair[n]).epsilon(1e-12));
  }
}

TEST_CASE("Dirichlet series identities") {
  CHECK(verify_ramanujan_series(kQ, q_ideal(4), 12).passed);
  CHECK(verify_ramanujan_series(kQi, Ideal::prime(kQi, primes_above(kQi, 5)[0]), 50).passed);
  const auto unit = verify_ramanujan_series(kQi, Ideal::unit(kQi), 100);
  CHECK(unit.passed);
  CHECK(unit.checked == 100);
  CHECK_THROWS_AS(verify_ramanujan_series(kQ, q_ideal(20), 10), DomainError);

  for (unsigned z = 0; z <= 2; ++z) {
    for (const auto& field : reference_fields()) CHECK(verify_divisor_convolution(field, 2000, z).passed);
  }

  CHECK(verify_sigma_pair_local(kQ, 2, 1).passed);
  CHECK(verify_sigma_pair_local(kQi, 5, 6).passed);
  CHECK(verify_sigma_pair_local(kQi, 2, 6, ZParam(1), ZParam(3)).passed);
  CHECK(verify_sigma_pair_local(kQi, 5, 6, ZParam(-0.2), ZParam(-0.1)).passed);
  CHECK(verify_sigma_pair_local(NumberField::cyclotomic(5), 11, 5, ZParam(-0.3), ZParam(0.7)).passed);
}

TEST_CASE("a corrupted table is caught at the corrupted index") {
  const auto counts = ideal_count_table(kQi, 500);
  auto table = divisor_coeff_table(kQi, 500, ZParam(1));
  table.exact_values()[137] += 1;
  const auto report = verify_divisor_convolution(counts, table, 1);
  CHECK_FALSE(report.passed);
  REQUIRE(report.first_failure.has_value());
  CHECK(*report.first_failure == 137);
}

TEST_CASE("multiplicativity and path equivalence") {
  for (const auto& field : reference_fields()) {
    const auto multiplicative = verify_multiplicativity(field, 200);
    CHECK(multiplicative.passed);
    CHECK(multiplicative.checked > 0);
    const auto paths = verify_ramanujan_paths(field, 10000, 10000, 7);
    CHECK(paths.passed);
    CHECK(paths.checked == 10000);
  }
}
