#include "ideal_moments/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "ideal_moments/errors.hpp"
#include "ideal_moments/numtheory.hpp"
#include "ideal_moments/summation.hpp"

namespace ideal_moments {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2j} / (2j)! for j = 1..20.
const std::vector<double>& bernoulli_over_factorial() {
  static const std::vector<double> table = [] {
    // Even Bernoulli numbers B_2 .. B_40 as numerator / denominator.
    static constexpr double kNumerators[] = {1.0,
                                             -1.0,
                                             1.0,
                                             -1.0,
                                             5.0,
                                             -691.0,
                                             7.0,
                                             -3617.0,
                                             43867.0,
                                             -174611.0,
                                             854513.0,
                                             -236364091.0,
                                             8553103.0,
                                             -23749461029.0,
                                             8615841276005.0,
                                             -7709321041217.0,
                                             2577687858367.0,
                                             -26315271553053477373.0,
                                             2929993913841559.0,
                                             -261082718496449122051.0};
    static constexpr double kDenominators[] = {6.0,   30.0,  42.0,  30.0,      66.0,
                                               2730.0, 6.0,  510.0, 798.0,     330.0,
                                               138.0,  2730.0, 6.0, 870.0,     14322.0,
                                               510.0,  6.0,  1919190.0, 6.0,   13530.0};
    std::vector<double> out;
    double factorial = 1.0;
    for (int j = 1; j <= 20; ++j) {
      factorial *= static_cast<double>((2 * j - 1) * (2 * j));
      out.push_back(kNumerators[j - 1] / kDenominators[j - 1] / factorial);
    }
    return out;
  }();
  return table;
}

}  // namespace

// ---------------------------------------------------------------------------
// Special functions

double hurwitz_zeta(double s, double a) {
  if (std::abs(s - 1.0) < 1e-6) throw PoleError("hurwitz_zeta: s too close to the pole at 1");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: a must lie in (0, 1]");
  const int shift = 15 + static_cast<int>(std::ceil(std::abs(s)));
  CompensatedSum sum;
  for (int n = 0; n < shift; ++n) sum.add(std::pow(n + a, -s));
  const double w = shift + a;
  sum.add(std::pow(w, 1.0 - s) / (s - 1.0));
  sum.add(0.5 * std::pow(w, -s));
  // Correction terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) * w^(-s-2j+1).
  const auto& coeffs = bernoulli_over_factorial();
  double rising = s;
  double power = std::pow(w, -s - 1.0);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double term = coeffs[j] * rising * power;
    if (std::abs(term) > previous) break;  // asymptotic series started to diverge
    sum.add(term);
    if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum.value())) break;
    previous = std::abs(term);
    const double k = static_cast<double>(2 * j + 1);
    rising *= (s + k) * (s + k + 1.0);
    power /= w * w;
  }
  return sum.value();
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double shift = 0.0;
  while (x < 8.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum_k B_{2k} / (2k x^{2k})
  static constexpr double kB[] = {1.0 / 6,      -1.0 / 30,     1.0 / 42,    -1.0 / 30,
                                  5.0 / 66,     -691.0 / 2730, 7.0 / 6,     -3617.0 / 510,
                                  43867.0 / 798, -174611.0 / 330};
  const double inv2 = 1.0 / (x * x);
  double power = inv2;
  double series = 0.0;
  for (int k = 1; k <= 10; ++k) {
    series += kB[k - 1] / (2.0 * k) * power;
    power *= inv2;
  }
  return shift + std::log(x) - 0.5 / x - series;
}

// ---------------------------------------------------------------------------
// Characters

DirichletCharacter::DirichletCharacter(std::uint64_t modulus, std::uint64_t root_order,
                                       std::vector<int> exponents)
    : modulus_(modulus), root_order_(root_order), exponents_(std::move(exponents)) {
  if (modulus_ == 0 || exponents_.size() != modulus_) {
    throw DomainError("DirichletCharacter: value table must cover every residue");
  }
}

std::complex<double> DirichletCharacter::value(std::uint64_t n) const {
  const int k = exponent(n);
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  // Exact values at the quarter points keep the real characters exact.
  const std::uint64_t scaled = 4 * static_cast<std::uint64_t>(k);
  if (scaled % root_order_ == 0) {
    switch ((scaled / root_order_) % 4) {
      case 1:
        return {0.0, 1.0};
      case 2:
        return -1.0;
      case 3:
        return {0.0, -1.0};
      default:
        return 1.0;
    }
  }
  const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(root_order_);
  return {std::cos(angle), std::sin(angle)};
}

bool DirichletCharacter::is_principal() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int k) { return k <= 0; });
}

bool DirichletCharacter::is_even() const {
  if (modulus_ <= 2) return true;
  return exponent(modulus_ - 1) == 0;
}

std::uint64_t DirichletCharacter::order() const {
  std::uint64_t order = 1;
  for (int k : exponents_) {
    if (k <= 0) continue;
    const std::uint64_t g = nt::gcd(static_cast<std::uint64_t>(k), root_order_);
    const std::uint64_t element_order = root_order_ / g;
    order = order / nt::gcd(order, element_order) * element_order;
  }
  return order;
}

std::uint64_t DirichletCharacter::conductor() const {
  for (std::uint64_t d = 1; d <= modulus_; ++d) {
    if (modulus_ % d != 0) continue;
    bool trivial = true;
    for (std::uint64_t n = 1; n < modulus_ && trivial; n += d) {
      if (nt::gcd(n, modulus_) == 1 && exponent(n) != 0) trivial = false;
    }
    if (trivial) return d;
  }
  return modulus_;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  std::vector<int> out(exponents_);
  for (int& k : out) {
    if (k > 0) k = static_cast<int>(root_order_) - k;
  }
  return DirichletCharacter(modulus_, root_order_, std::move(out));
}

namespace {

struct CyclicComponent {
  std::uint64_t modulus;    // prime power p^a
  std::uint64_t generator;  // generator of the cyclic factor
  std::uint64_t order;
};

std::uint64_t primitive_root_prime_power(std::uint64_t p, int a) {
  const std::uint64_t phi_p = p - 1;
  const auto factors = nt::factor(phi_p);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool primitive = true;
    for (const auto& [q, k] : factors) {
      if (nt::powmod(g, phi_p / q, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  if (a >= 2 && nt::powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

std::vector<CyclicComponent> unit_group_components(std::uint64_t m) {
  std::vector<CyclicComponent> out;
  for (const auto& [p, a] : nt::factor(m)) {
    std::uint64_t pa = 1;
    for (int i = 0; i < a; ++i) pa *= p;
    if (p == 2) {
      if (a == 2) out.push_back({4, 3, 2});
      if (a >= 3) {
        out.push_back({pa, pa - 1, 2});
        out.push_back({pa, 5, pa / 4});
      }
      continue;
    }
    out.push_back({pa, primitive_root_prime_power(p, a), pa / p * (p - 1)});
  }
  return out;
}

}  // namespace

std::vector<DirichletCharacter> dirichlet_characters(std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("dirichlet_characters: modulus must be >= 1");
  const auto components = unit_group_components(modulus);
  std::uint64_t root_order = 1;
  for (const auto& c : components) root_order = root_order / nt::gcd(root_order, c.order) * c.order;

  // Discrete logs of every unit on every component. The 2^a (a >= 3) case uses the pair of
  // components (-1, 5) on the same modulus: n = (-1)^e0 5^e1.
  std::vector<std::vector<int>> logs(modulus, std::vector<int>(components.size(), -1));
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    const bool two_adic_pair = c + 1 < components.size() &&
                               components[c + 1].modulus == comp.modulus;
    if (two_adic_pair) {
      std::vector<std::pair<int, int>> table(comp.modulus, {-1, -1});
      const auto& next = components[c + 1];
      std::uint64_t sign = 1;
      for (std::uint64_t e0 = 0; e0 < 2; ++e0) {
        std::uint64_t value = sign;
        for (std::uint64_t e1 = 0; e1 < next.order; ++e1) {
          table[value] = {static_cast<int>(e0), static_cast<int>(e1)};
          value = value * next.generator % comp.modulus;
        }
        sign = comp.modulus - 1;
      }
      for (std::uint64_t n = 0; n < modulus; ++n) {
        if (nt::gcd(n, modulus) != 1) continue;
        logs[n][c] = table[n % comp.modulus].first;
        logs[n][c + 1] = table[n % comp.modulus].second;
      }
      ++c;
      continue;
    }
    std::vector<int> table(comp.modulus, -1);
    std::uint64_t value = 1;
    for (std::uint64_t e = 0; e < comp.order; ++e) {
      table[value] = static_cast<int>(e);
      value = value * comp.generator % comp.modulus;
    }
    for (std::uint64_t n = 0; n < modulus; ++n) {
      if (nt::gcd(n, modulus) != 1) continue;
      logs[n][c] = table[n % comp.modulus];
    }
  }

  std::vector<DirichletCharacter> out;
  std::vector<std::uint64_t> index(components.size(), 0);
  for (;;) {
    std::vector<int> exponents(modulus, -1);
    for (std::uint64_t n = 0; n < modulus; ++n) {
      if (nt::gcd(n, modulus) != 1) continue;
      std::uint64_t k = 0;
      for (std::size_t c = 0; c < components.size(); ++c) {
        k += index[c] * static_cast<std::uint64_t>(logs[n][c]) * (root_order / components[c].order);
      }
      exponents[n] = static_cast<int>(k % root_order);
    }
    out.emplace_back(modulus, root_order, std::move(exponents));
    // Odometer increment, last component fastest.
    std::size_t c = components.size();
    while (c > 0) {
      --c;
      if (++index[c] < components[c].order) break;
      index[c] = 0;
      if (c == 0) return out;
    }
    if (components.empty()) return out;
  }
}

DirichletCharacter kronecker_character(std::int64_t discriminant) {
  const std::uint64_t modulus =
      static_cast<std::uint64_t>(discriminant < 0 ? -discriminant : discriminant);
  std::vector<int> exponents(modulus, -1);
  for (std::uint64_t n = 0; n < modulus; ++n) {
    const int symbol = n == 0 ? (modulus == 1 ? 1 : 0) : nt::kronecker(discriminant, n);
    exponents[n] = symbol == 0 ? -1 : (symbol == 1 ? 0 : 1);
  }
  return DirichletCharacter(modulus, 2, std::move(exponents));
}

std::complex<double> dirichlet_L(double s, const DirichletCharacter& chi) {
  if (s == 1.0) {
    if (chi.is_principal()) throw PoleError("dirichlet_L: principal character at s = 1");
    return L_at_one(chi);
  }
  if (std::abs(s - 1.0) < 1e-6) throw PoleError("dirichlet_L: s too close to 1");
  const std::uint64_t m = chi.modulus();
  const double md = static_cast<double>(m);
  CompensatedSum re;
  CompensatedSum im;
  for (std::uint64_t a = 1; a <= m; ++a) {
    const auto c = chi.value(a);
    if (c == 0.0) continue;
    const double h = hurwitz_zeta(s, static_cast<double>(a) / md);
    re.add(c.real() * h);
    im.add(c.imag() * h);
  }
  const double scale = std::pow(md, -s);
  return {scale * re.value(), scale * im.value()};
}

std::complex<double> L_at_one(const DirichletCharacter& chi) {
  if (chi.is_principal()) throw PoleError("L_at_one: principal character has a pole at 1");
  const std::uint64_t m = chi.modulus();
  const double md = static_cast<double>(m);
  CompensatedSum re;
  CompensatedSum im;
  for (std::uint64_t a = 1; a < m; ++a) {
    const auto c = chi.value(a);
    if (c == 0.0) continue;
    const double psi = digamma(static_cast<double>(a) / md);
    re.add(c.real() * psi);
    im.add(c.imag() * psi);
  }
  return {-re.value() / md, -im.value() / md};
}

// ---------------------------------------------------------------------------
// Exact cyclotomic arithmetic

namespace {

using Poly = std::vector<Int128>;

// Integer coefficients of the r-th cyclotomic polynomial, low degree first.
const Poly& cyclotomic_polynomial(std::uint64_t r) {
  static std::mutex mutex;
  static std::map<std::uint64_t, Poly> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(r); it != cache.end()) return it->second;
  Poly numerator(r + 1, 0);  // x^r - 1
  numerator[0] = -1;
  numerator[r] = 1;
  for (std::uint64_t d = 1; d < r; ++d) {
    if (r % d != 0) continue;
    Poly divisor;
    if (auto it = cache.find(d); it != cache.end()) {
      divisor = it->second;
    } else {
      // Recursion outside the lock is not needed: r is small and we fill ascending.
      mutex.unlock();
      divisor = cyclotomic_polynomial(d);
      mutex.lock();
    }
    // Exact division by a monic polynomial.
    Poly quotient(numerator.size() - divisor.size() + 1, 0);
    for (std::size_t i = quotient.size(); i-- > 0;) {
      const Int128 lead = numerator[i + divisor.size() - 1];
      quotient[i] = lead;
      for (std::size_t j = 0; j < divisor.size(); ++j) {
        numerator[i + j] = checked_add(numerator[i + j], checked_mul(-lead, divisor[j]));
      }
    }
    numerator = std::move(quotient);
  }
  return cache.emplace(r, std::move(numerator)).first->second;
}

Poly reduce_mod_cyclotomic(Poly coeffs, std::uint64_t r) {
  const Poly& phi = cyclotomic_polynomial(r);
  const std::size_t degree = phi.size() - 1;
  for (std::size_t i = coeffs.size(); i-- > degree;) {
    const Int128 lead = coeffs[i];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= degree; ++j) {
      coeffs[i - degree + j] = checked_add(coeffs[i - degree + j], checked_mul(-lead, phi[j]));
    }
  }
  coeffs.resize(degree, 0);
  return coeffs;
}

Int128 gcd128(Int128 a, Int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void normalize(CyclotomicRational& value) {
  Int128 g = value.denominator;
  for (Int128 c : value.coefficients) g = gcd128(g, c);
  if (g > 1) {
    for (Int128& c : value.coefficients) c /= g;
    value.denominator /= g;
  }
  if (value.denominator < 0) {
    value.denominator = -value.denominator;
    for (Int128& c : value.coefficients) c = -c;
  }
}

CyclotomicRational lift(const CyclotomicRational& value, std::uint64_t root_order) {
  const std::uint64_t step = root_order / value.root_order;
  Poly coeffs(root_order, 0);
  for (std::size_t k = 0; k < value.coefficients.size(); ++k) {
    coeffs[k * step] = value.coefficients[k];
  }
  CyclotomicRational out{root_order, reduce_mod_cyclotomic(std::move(coeffs), root_order),
                         value.denominator};
  normalize(out);
  return out;
}

}  // namespace

bool CyclotomicRational::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](Int128 c) { return c == 0; });
}

std::complex<double> CyclotomicRational::value() const {
  std::complex<double> out = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(root_order);
    out += to_double(coefficients[k]) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return out / to_double(denominator);
}

std::optional<std::pair<Int128, Int128>> CyclotomicRational::as_rational() const {
  for (std::size_t k = 1; k < coefficients.size(); ++k) {
    if (coefficients[k] != 0) return std::nullopt;
  }
  const Int128 numerator = coefficients.empty() ? 0 : coefficients[0];
  if (numerator == 0) return std::make_pair(Int128{0}, Int128{1});
  const Int128 g = gcd128(numerator, denominator);
  return std::make_pair(numerator / g, denominator / g);
}

CyclotomicRational cyclotomic_product(const CyclotomicRational& a, const CyclotomicRational& b) {
  const std::uint64_t r = a.root_order / nt::gcd(a.root_order, b.root_order) * b.root_order;
  const CyclotomicRational la = lift(a, r);
  const CyclotomicRational lb = lift(b, r);
  Poly product(la.coefficients.size() + lb.coefficients.size(), 0);
  for (std::size_t i = 0; i < la.coefficients.size(); ++i) {
    for (std::size_t j = 0; j < lb.coefficients.size(); ++j) {
      product[i + j] =
          checked_add(product[i + j], checked_mul(la.coefficients[i], lb.coefficients[j]));
    }
  }
  CyclotomicRational out{r, reduce_mod_cyclotomic(std::move(product), r),
                         checked_mul(la.denominator, lb.denominator)};
  normalize(out);
  return out;
}

CyclotomicRational l_at_zero_via_bernoulli(const DirichletCharacter& chi) {
  if (chi.is_principal()) throw DomainError("l_at_zero_via_bernoulli: principal character");
  const std::uint64_t m = chi.modulus();
  const std::uint64_t r = chi.root_order();
  Poly coeffs(r, 0);
  for (std::uint64_t a = 1; a <= m; ++a) {
    const int k = chi.exponent(a);
    if (k < 0) continue;
    coeffs[static_cast<std::size_t>(k)] -= static_cast<Int128>(a);  // L(0) = -B_{1,chi}
  }
  CyclotomicRational out{r, reduce_mod_cyclotomic(std::move(coeffs), r), static_cast<Int128>(m)};
  normalize(out);
  return out;
}

// ---------------------------------------------------------------------------
// Dedekind zeta

std::vector<DirichletCharacter> field_characters(const NumberField& field) {
  switch (field.kind()) {
    case FieldKind::Rational:
      return {};
    case FieldKind::Quadratic:
      return {kronecker_character(field.conductor_discriminant())};
    case FieldKind::Cyclotomic: {
      auto all = dirichlet_characters(static_cast<std::uint64_t>(field.parameter()));
      all.erase(all.begin());  // principal first
      return all;
    }
  }
  return {};
}

namespace {

// prod_{p | m} (1 - p^-s) (1 - p^-fs)^-g: the Euler factors at p | m that the characters mod m
// do not supply. Equals 1 for prime-power m.
double cyclotomic_correction(const NumberField& field, double s) {
  if (field.kind() != FieldKind::Cyclotomic) return 1.0;
  double correction = 1.0;
  for (std::uint64_t p : ramified_primes(field)) {
    const SplittingSignature sig = split_known_prime(field, p);
    const double log_p = std::log(static_cast<double>(p));
    const double missing = -std::expm1(-s * log_p);
    const double wanted = -std::expm1(-s * sig.f * log_p);
    correction *= missing / std::pow(wanted, sig.g);
  }
  return correction;
}

}  // namespace

double dedekind_zeta(const NumberField& field, double s) {
  if (std::abs(s - 1.0) < 1e-6) throw PoleError("dedekind_zeta: pole at s = 1");
  if (s == 0.0) return constants(field).zeta0;
  std::complex<double> product = riemann_zeta(s);
  for (const auto& chi : field_characters(field)) product *= dirichlet_L(s, chi);
  return product.real() * cyclotomic_correction(field, s);
}

namespace {

AnalyticConstants compute_constants(const NumberField& field) {
  AnalyticConstants out;
  out.field = field.descriptor();
  const auto characters = field_characters(field);

  std::complex<double> rho = 1.0;
  for (const auto& chi : characters) rho *= L_at_one(chi);
  if (field.kind() == FieldKind::Cyclotomic) {
    // Residue of the restored Euler factors: same correction evaluated at s = 1.
    rho *= cyclotomic_correction(field, 1.0);
  }
  out.rho = rho.real();

  // zeta_K(0) = zeta(0) prod L(0, chi) = (-1/2) prod (-B_{1,chi}).
  bool exact_zero = false;
  for (const auto& chi : characters) {
    if (l_at_zero_via_bernoulli(chi).is_zero()) exact_zero = true;
  }
  if (exact_zero) {
    out.zeta0 = 0.0;
    out.zeta0_exact = std::make_pair(Int128{0}, Int128{1});
  } else {
    try {
      CyclotomicRational product{1, {Int128{-1}}, 2};
      for (const auto& chi : characters) {
        product = cyclotomic_product(product, l_at_zero_via_bernoulli(chi));
      }
      out.zeta0_exact = product.as_rational();
      out.zeta0 = product.value().real();
      if (out.zeta0_exact) {
        out.zeta0 = to_double(out.zeta0_exact->first) / to_double(out.zeta0_exact->second);
      }
    } catch (const OverflowError&) {
      std::complex<double> product = -0.5;
      for (const auto& chi : characters) product *= l_at_zero_via_bernoulli(chi).value();
      out.zeta0 = product.real();
    }
  }

  out.zeta2 = dedekind_zeta(field, 2.0);
  out.digits = 15;
  switch (field.kind()) {
    case FieldKind::Rational:
      out.provenance = "rho=1; zeta(0)=-1/2; zeta(2) by Euler-Maclaurin Hurwitz zeta";
      break;
    case FieldKind::Quadratic:
      out.provenance =
          "rho=L(1,chi_D) by digamma; zeta_K(0)=zeta(0)(-B_{1,chi_D}) exact; "
          "zeta_K(2)=zeta(2)L(2,chi_D) by Hurwitz zeta";
      break;
    case FieldKind::Cyclotomic:
      out.provenance =
          "rho=prod L(1,chi) over nonprincipal chi mod m by digamma with restored Euler "
          "factors at p|m; zeta_K(0)=zeta(0)prod(-B_{1,chi}) exact; zeta_K(2) by Hurwitz zeta";
      break;
  }
  return out;
}

}  // namespace

AnalyticConstants constants(const NumberField& field) {
  static std::mutex mutex;
  static std::map<std::string, AnalyticConstants> cache;
  const std::string key = field.descriptor();
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  AnalyticConstants computed = compute_constants(field);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(computed)).first->second;
}

// ---------------------------------------------------------------------------
// Main terms

double main_term_first(const NumberField& field, double /*x*/, double y) {
  return constants(field).rho * y;
}

SecondMomentRegime second_moment_regime(double x, double y) {
  return y < std::pow(x, 2.5) ? SecondMomentRegime::Below : SecondMomentRegime::Above;
}

double main_term_second(const NumberField& field, double x, double y, SecondMomentRegime regime,
                        double c2) {
  const auto c = constants(field);
  const double rho2 = c.rho * c.rho;
  double value = c2 * rho2 / c.zeta2 * y * x * x;
  if (regime == SecondMomentRegime::Below) {
    value += rho2 * c.zeta0 / (4.0 * c.zeta2 * c.zeta2) * std::pow(x, 4.0);
  }
  return value;
}

double avg_sigma_main(const NumberField& field, double x, double z) {
  if (z == 0.0) throw PoleError("avg_sigma_main: z = 0 puts both terms on the pole");
  if (!(z > -0.5 && z < 0.0)) throw DomainError("avg_sigma_main: z must lie in (-1/2, 0)");
  const double rho = constants(field).rho;
  return rho * dedekind_zeta(field, 1.0 - z) * x +
         rho * dedekind_zeta(field, 1.0 + z) * std::pow(x, 1.0 + z) / (1.0 + z);
}

double r0_main(const NumberField& field, double x, double z1, double z2) {
  if (std::abs(z1 - z2) < 1e-6) throw PoleError("r0_main: z1 = z2 puts zeta_K(1) in the residues");
  if (!(z1 > -0.5 && z1 < 0.0 && z2 > -0.5 && z2 < 0.0 && z1 + z2 > -0.5)) {
    throw DomainError("r0_main: need z1, z2 in (-1/2, 0) and z1 + z2 > -1/2");
  }
  const double rho = constants(field).rho;
  auto zeta = [&](double s) { return dedekind_zeta(field, s); };
  const double t0 = zeta(1 - z1) * zeta(1 - z2) * zeta(1 - z1 - z2) / zeta(2 - z1 - z2) * x;
  const double t1 = zeta(1 + z1) * zeta(1 + z1 - z2) * zeta(1 - z2) / zeta(2 + z1 - z2) *
                    std::pow(x, 1 + z1) / (1 + z1);
  const double t2 = zeta(1 + z2) * zeta(1 + z2 - z1) * zeta(1 - z1) / zeta(2 - z1 + z2) *
                    std::pow(x, 1 + z2) / (1 + z2);
  const double t3 = zeta(1 + z1 + z2) * zeta(1 + z2) * zeta(1 + z1) / zeta(2 + z1 + z2) *
                    std::pow(x, 1 + z1 + z2) / (1 + z1 + z2);
  return rho * (t0 + t1 + t2 + t3);
}

}  // namespace ideal_moments
