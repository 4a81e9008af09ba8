// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ideal_moments/analytic.hpp"
#include "ideal_moments/cli.hpp"
#include "ideal_moments/moments.hpp"
#include "ideal_moments/report.hpp"
#include "oracles.hpp"

using namespace ideal_moments;

namespace {

// Tolerances.
constexpr double kConstantTol = 1e-10;
constexpr double kPartialSumTol = 1e-3;
constexpr double kFirstMomentBound = 10.0;
constexpr double kSlopeExcess = 0.15;
constexpr double kSecondMomentRelative = 0.25;
constexpr double kAverageBound = 20.0;
constexpr double kScaleEpsilon = 0.1;
constexpr double kThreadOverhead = 2.0;

const double kPi = std::acos(-1.0);

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<std::string> rows;  // CSV rows and exact integers that must not depend on threads

  void fail(const std::string& why) {
    detail = passed ? why : detail + "; " + why;
    passed = false;
  }
};

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.4g", v);
  return buffer;
}

Outcome identity_suite(unsigned) {
  Outcome o;
  std::uint64_t checked = 0;
  for (const auto& field : reference_fields()) {
    VerifyOptions options;
    options.n = 500;
    for (const auto& report : run_verify_suite(field, options)) {
      checked += report.checked;
      o.rows.push_back(report.name + " " + (report.passed ? "ok" : "bad") + " " +
                       std::to_string(report.checked));
      if (!report.passed) {
        o.fail(report.name + " first failure at " +
               std::to_string(report.first_failure.value_or(0)) + " " + report.detail);
      }
    }
  }
  if (o.passed) o.detail = std::to_string(checked) + " checks, zero failures";
  return o;
}

Outcome classical_reduction(unsigned) {
  Outcome o;
  const NumberField q = NumberField::rational();
  for (std::uint64_t a = 1; a <= 300 && o.passed; ++a) {
    for (std::uint64_t n = 1; n <= 300; ++n) {
      const Int128 got = ramanujan_sum(Ideal::from_integer(q, a), Ideal::from_integer(q, n));
      const std::int64_t want = oracle::ramanujan_divisor(static_cast<std::int64_t>(a),
                                                          static_cast<std::int64_t>(n));
      if (got != want) {
        o.fail("q=" + std::to_string(a) + " n=" + std::to_string(n));
        break;
      }
    }
  }
  if (o.passed) o.detail = "90000 pairs equal";
  return o;
}

Outcome oracle_equivalence(unsigned threads) {
  Outcome o;
  MomentOptions options;
  options.threads = threads;
  for (const auto& field : reference_fields()) {
    const auto ideals = enumerate_ideals(field, 1000);
    const auto mertens = mertens_table(field, 500);
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
    std::uniform_int_distribution<std::uint64_t> pick_x(1, 500);
    for (int trial = 0; trial < 100; ++trial) {
      const Ideal& ideal = ideals[pick(rng)];
      const std::uint64_t x = pick_x(rng);
      if (inner_sum(field, x, ideal, InnerSumMethod::Brute) != inner_sum_mertens(mertens, x, ideal)) {
        o.fail(field.descriptor() + " inner sum at " + ideal.to_string() + " x=" + std::to_string(x));
      }
    }
    const auto fast = moment_sums(field, 200, 2000, options);
    const auto brute = moment_sums_brute(field, 200, 2000);
    if (fast.first != brute.first || fast.second != brute.second) {
      o.fail(field.descriptor() + " moments at (200, 2000)");
    }
    o.rows.push_back(csv_line(to_row(first_moment_from(field, 200, 2000, fast.first), 0, false)));
    o.rows.push_back(csv_line(to_row(second_moment_from(field, 200, 2000, fast.second), 0, false)));
  }
  if (o.passed) o.detail = "400 inner sums and 8 moments equal";
  return o;
}

Outcome analytic_constants(unsigned) {
  Outcome o;
  const NumberField qi = NumberField::quadratic(-1);
  const NumberField q5 = NumberField::quadratic(5);
  const auto check = [&](const std::string& what, double got, double want, double tol) {
    const double err = std::abs(got - want);
    o.rows.push_back(what + " " + fmt(err));
    if (!(err < tol)) o.fail(what + " off by " + fmt(err));
  };
  check("zeta(2)", riemann_zeta(2.0), kPi * kPi / 6, kConstantTol);
  check("L(1,chi_-4)", L_at_one(kronecker_character(-4)).real(), kPi / 4, kConstantTol);
  const auto ci = constants(qi);
  check("rho_Q(i)", ci.rho, kPi / 4, kConstantTol);
  check("zeta_Q(i)(0)", ci.zeta0, -0.25, kConstantTol);
  const auto c5 = constants(q5);
  if (!(c5.zeta0_exact && c5.zeta0_exact->first == 0 && c5.zeta0 == 0.0)) {
    o.fail("zeta_Q(sqrt5)(0) not exactly zero");
  }
  const std::uint64_t bound = 1000000;
  const auto counts = ideal_count_table(qi, bound).exact_values();
  double partial = 0.0;
  for (std::uint64_t n = bound; n >= 1; --n) partial += to_double(counts[n]) / (double(n) * double(n));
  check("partial zeta_Q(i)(2)", partial, dedekind_zeta(qi, 2.0), kPartialSumTol);
  if (o.passed) o.detail = "all within tolerance; zeta_Q(sqrt5)(0) = 0 exactly";
  return o;
}

Outcome first_moment_trend(unsigned threads) {
  Outcome o;
  const NumberField qi = NumberField::quadratic(-1);
  MomentOptions options;
  options.threads = threads;
  std::vector<std::pair<double, double>> points;
  double worst = 0.0;
  for (std::uint64_t x : {10, 20, 40, 80}) {
    const auto r = first_moment(qi, x, x * x * x, options);
    o.rows.push_back(csv_line(to_row(r, 0, false)));
    worst = std::max(worst, std::abs(r.normalized_residual));
    points.emplace_back(r.error_scale, r.residual);
  }
  if (!(worst <= kFirstMomentBound)) o.fail("normalized residual " + fmt(worst));
  double slope = 0.0;
  try {
    slope = fit_error_exponent(points).slope;
    if (!(slope <= 1.0 + kSlopeExcess)) o.fail("residual slope " + fmt(slope) + " vs scale slope 1");
  } catch (const std::exception& e) {
    o.fail(std::string("fit failed: ") + e.what());
  }
  if (o.passed) o.detail = "max normalized residual " + fmt(worst) + ", slope " + fmt(slope);
  return o;
}

Outcome second_moment_trend(unsigned threads) {
  Outcome o;
  MomentOptions options;
  options.threads = threads;
  const NumberField qi = NumberField::quadratic(-1);
  const NumberField q5 = NumberField::quadratic(5);

  // (a) above the crossover
  std::vector<double> relative;
  for (const auto& [x, y] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {20, 10000}, {40, 100000}, {60, 1000000}}) {
    const auto r = second_moment(qi, x, y, options);
    o.rows.push_back(csv_line(to_row(r, 0, false)));
    relative.push_back(std::abs(r.residual / r.predicted));
  }
  for (std::size_t i = 1; i < relative.size(); ++i) {
    if (!(relative[i] < relative[i - 1])) {
      o.fail("relative error rises from " + fmt(relative[i - 1]) + " to " + fmt(relative[i]));
    }
  }
  if (!(relative.back() < kSecondMomentRelative)) o.fail("relative error " + fmt(relative.back()));

  // (b) below the crossover: the x^4 term
  bool x4_ok = true;
  // y = x^(9/4), below the crossover
  std::vector<std::pair<std::uint64_t, std::uint64_t>> below;
  for (std::uint64_t x : {400, 600, 1000}) below.emplace_back(x, std::llround(std::pow(double(x), 2.25)));
  for (const auto& [x, y] : below) {
    for (const auto& field : {qi, q5}) {
      const auto sums = moment_sums(field, x, y, options);
      const auto r = second_moment_from(field, x, y, sums.second);
      o.rows.push_back(csv_line(to_row(r, 0, false)));
      const double empirical = to_double(sums.second);
      const double with_x4 = main_term_second(field, x, y, SecondMomentRegime::Below);
      const double without_x4 = main_term_second(field, x, y, SecondMomentRegime::Above);
      const std::string at = field.descriptor() + " (" + std::to_string(x) + "," + std::to_string(y) + ")";
      if (field == qi && !(std::abs(empirical - with_x4) < std::abs(empirical - without_x4))) {
        o.fail("x^4 term does not help at " + at);
        x4_ok = false;
      }
      if (field == q5 && with_x4 != without_x4) {
        o.fail("x^4 term changes " + at);
        x4_ok = false;
      }
    }
  }
  if (x4_ok) o.rows.push_back("x^4 discrimination holds");
  if (!o.passed && x4_ok) o.detail += "; x^4 discrimination holds below the crossover";
  const std::string trend = "relative errors " + fmt(relative[0]) + ", " + fmt(relative[1]) + ", " + fmt(relative[2]);
  o.detail = o.passed ? trend : trend + "; " + o.detail;
  return o;
}

Outcome average_main_terms(unsigned) {
  Outcome o;
  double worst31 = 0.0;
  double worst32 = 0.0;
  for (const auto& field : {NumberField::rational(), NumberField::quadratic(-1)}) {
    const std::uint64_t top = 1000000;
    const auto single = divisor_coeff_table(field, top, ZParam(-0.25));
    const auto pair = pair_coeff_table(field, top, ZParam(-0.2), ZParam(-0.1));
    for (std::uint64_t x : {10000, 100000, 1000000}) {
      const auto a = avg_sigma(single, x, ZParam(-0.25));
      const double ratio31 = std::abs(a.empirical - avg_sigma_main(field, double(x), -0.25)) /
                             std::pow(double(x), 0.5 + kScaleEpsilon);
      const auto b = avg_sigma_pair(pair, x, ZParam(-0.2), ZParam(-0.1));
      const double exponent = (1.0 - 0.2 - 0.1) / 2.0 + 2.0 * 0.1 * field.degree() + kScaleEpsilon;
      const double ratio32 = std::abs(b.empirical - r0_main(field, double(x), -0.2, -0.1)) /
                             std::pow(double(x), exponent);
      o.rows.push_back(csv_line(to_row(a, 0, false)));
      o.rows.push_back(csv_line(to_row(b, 0, false)));
      worst31 = std::max(worst31, ratio31);
      worst32 = std::max(worst32, ratio32);
    }
  }
  if (!(worst31 <= kAverageBound)) o.fail("single-sigma ratio " + fmt(worst31));
  if (!(worst32 <= kAverageBound)) o.fail("pair ratio " + fmt(worst32));
  if (o.passed) o.detail = "max ratios " + fmt(worst31) + " and " + fmt(worst32);
  return o;
}

using Criterion = std::function<Outcome(unsigned)>;

}  // namespace

// Usage: acceptance [--known-failure N]...
// Known failures still print FAIL; the exit status is 0 when the failing set equals them.
int main(int argc, char** argv) {
  std::set<std::size_t> known;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) != "--known-failure") {
      std::cerr << "unknown argument " << argv[i] << '\n';
      return 64;
    }
    known.insert(std::stoul(argv[i + 1]));
  }
  std::set<std::size_t> failed;
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"exact identity suites", identity_suite},
      {"classical reduction over Q", classical_reduction},
      {"Mertens and brute-force oracle equivalence", oracle_equivalence},
      {"analytic constants", analytic_constants},
      {"first moment trend for Q(i)", first_moment_trend},
      {"second moment trend and x^4 term", second_moment_trend},
      {"divisor-average main terms", average_main_terms},
  };
  using Clock = std::chrono::steady_clock;
  bool all = true;
  std::vector<std::vector<std::string>> serial_rows;
  double serial_ms = 0.0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    const Outcome o = criteria[i].second(1);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    serial_ms += ms;
    serial_rows.push_back(o.rows);
    all = all && o.passed;
    if (!o.passed) failed.insert(i + 1);
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << " (" << o.detail << "; " << fmt(ms / 1000) << " s)" << std::endl;
  }

  Outcome determinism;
  double parallel_ms = 0.0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    const Outcome o = criteria[i].second(8);
    parallel_ms += std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (o.rows != serial_rows[i]) determinism.fail("rows of criterion " + std::to_string(i + 1) + " differ");
  }
  const double overhead = parallel_ms / serial_ms;
  if (!(overhead < kThreadOverhead)) determinism.fail("8-thread rerun took " + fmt(overhead) + "x");
  if (determinism.passed) {
    determinism.detail = "identical rows at 1 and 8 threads, time ratio " + fmt(overhead);
  }
  all = all && determinism.passed;
  if (!determinism.passed) failed.insert(8);
  std::cout << (determinism.passed ? "PASS" : "FAIL") << " criterion 8: determinism across thread counts ("
            << determinism.detail << ")" << std::endl;
  if (all) return 0;
  if (!known.empty() && failed == known) {
    std::cout << "only known failures" << std::endl;
    return 0;
  }
  return 1;
}
