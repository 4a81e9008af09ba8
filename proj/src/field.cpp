#include "ideal_moments/field.hpp"

#include <charconv>

#include "ideal_moments/errors.hpp"
#include "ideal_moments/numtheory.hpp"

namespace ideal_moments {

NumberField NumberField::rational() { return NumberField(FieldKind::Rational, 1, 1, 1); }

NumberField NumberField::quadratic(std::int64_t d) {
  if (d == 0 || d == 1) throw FieldError("quadratic field needs d != 0, 1");
  if (!nt::is_squarefree(d)) {
    throw FieldError("quadratic field parameter " + std::to_string(d) + " is not squarefree");
  }
  const std::int64_t mod4 = ((d % 4) + 4) % 4;
  const std::int64_t disc = mod4 == 1 ? d : 4 * d;
  return NumberField(FieldKind::Quadratic, d, 2, disc);
}

NumberField NumberField::cyclotomic(std::int64_t m) {
  if (m < 3) throw FieldError("cyclotomic modulus must be >= 3");
  if (m % 4 == 2) {
    throw FieldError("cyclotomic modulus " + std::to_string(m) +
                     " is 2 mod 4; use m/2 for the same field");
  }
  const auto phi = nt::euler_phi(static_cast<std::uint64_t>(m));
  return NumberField(FieldKind::Cyclotomic, m, static_cast<int>(phi), m);
}

namespace {

std::int64_t parse_signed(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw FieldError("unknown field descriptor '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

NumberField NumberField::parse(std::string_view descriptor) {
  if (descriptor == "Q") return rational();
  constexpr std::string_view kSqrt = "Q(sqrt{";
  constexpr std::string_view kZeta = "Q(zeta{";
  constexpr std::string_view kClose = "})";
  const bool closed = descriptor.size() > kClose.size() &&
                      descriptor.substr(descriptor.size() - kClose.size()) == kClose;
  if (closed && descriptor.starts_with(kSqrt)) {
    const auto body =
        descriptor.substr(kSqrt.size(), descriptor.size() - kSqrt.size() - kClose.size());
    return quadratic(parse_signed(body, descriptor));
  }
  if (closed && descriptor.starts_with(kZeta)) {
    const auto body =
        descriptor.substr(kZeta.size(), descriptor.size() - kZeta.size() - kClose.size());
    if (body.starts_with('-') || body.starts_with('+')) {
      throw FieldError("unknown field descriptor '" + std::string(descriptor) + "'");
    }
    return cyclotomic(parse_signed(body, descriptor));
  }
  throw FieldError("unknown field descriptor '" + std::string(descriptor) + "'");
}

std::string NumberField::descriptor() const {
  switch (kind_) {
    case FieldKind::Rational:
      return "Q";
    case FieldKind::Quadratic:
      return "Q(sqrt{" + std::to_string(parameter_) + "})";
    case FieldKind::Cyclotomic:
      return "Q(zeta{" + std::to_string(parameter_) + "})";
  }
  return {};
}

int degree(const NumberField& field) { return field.degree(); }

std::vector<std::uint64_t> ramified_primes(const NumberField& field) {
  std::vector<std::uint64_t> out;
  if (field.kind() == FieldKind::Rational) return out;
  const std::int64_t d = field.conductor_discriminant();
  for (const auto& [p, k] : nt::factor(static_cast<std::uint64_t>(d < 0 ? -d : d))) {
    out.push_back(p);
  }
  return out;
}

SplittingSignature split_known_prime(const NumberField& field, std::uint64_t p) {
  switch (field.kind()) {
    case FieldKind::Rational:
      return {p, 1, 1, 1};
    case FieldKind::Quadratic: {
      const std::int64_t disc = field.conductor_discriminant();
      const int symbol = nt::kronecker(disc, p);
      if (symbol == 0) return {p, 2, 1, 1};
      if (symbol == 1) return {p, 1, 1, 2};
      return {p, 1, 2, 1};
    }
    case FieldKind::Cyclotomic: {
      std::uint64_t rest = static_cast<std::uint64_t>(field.parameter());
      std::uint64_t prime_power = 1;
      while (rest % p == 0) {
        rest /= p;
        prime_power *= p;
      }
      const auto e = prime_power == 1 ? 1 : prime_power / p * (p - 1);
      const auto f = nt::multiplicative_order(p % rest, rest);
      const auto g = nt::euler_phi(rest) / f;
      return {p, static_cast<int>(e), static_cast<int>(f), static_cast<int>(g)};
    }
  }
  return {p, 1, 1, 1};
}

SplittingSignature split_prime(const NumberField& field, std::uint64_t p) {
  if (!nt::is_prime(p)) throw DomainError("split_prime: " + std::to_string(p) + " is not prime");
  return split_known_prime(field, p);
}

std::vector<NumberField> reference_fields() {
  return {NumberField::rational(), NumberField::quadratic(-1), NumberField::quadratic(5),
          NumberField::cyclotomic(5)};
}

}  // namespace ideal_moments
