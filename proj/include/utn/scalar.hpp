#ifndef UTN_SCALAR_HPP
#define UTN_SCALAR_HPP

// Exact field arithmetic over Q and over prime fields F_p (p < 2^31).

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include <gmpxx.h>

#include "errors.hpp"

namespace utn {

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace detail

/// Either the rationals or a prime field F_p with 2 <= p < 2^31.
class FieldSpec {
 public:
  static constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 31;

  static FieldSpec rationals() { return FieldSpec(0); }

  static FieldSpec prime(std::uint64_t p) {
    if (p >= kModulusLimit)
      throw UsageError("prime field modulus " + std::to_string(p) + " must be < 2^31");
    if (!detail::is_prime(p))
      throw UsageError("field modulus " + std::to_string(p) + " is not prime");
    return FieldSpec(static_cast<std::uint32_t>(p));
  }

  /// Accepts "Q" or "Fp:<p>".
  static FieldSpec parse(std::string_view text) {
    if (text == "Q") return rationals();
    if (text.substr(0, 3) == "Fp:" && text.size() > 3) {
      std::uint64_t p = 0;
      for (char c : text.substr(3)) {
        if (c < '0' || c > '9' || p >= kModulusLimit)
          throw ParseError("malformed field '" + std::string(text) + "'");
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
      }
      try {
        return prime(p);
      } catch (const UsageError& e) {
        throw ParseError(e.what());
      }
    }
    throw ParseError("malformed field '" + std::string(text) + "' (expected Q or Fp:<p>)");
  }

  bool is_rational() const { return modulus_ == 0; }
  bool is_prime() const { return modulus_ != 0; }
  /// 0 for Q.
  std::uint32_t modulus() const { return modulus_; }

  std::string to_string() const {
    return is_rational() ? std::string("Q") : "Fp:" + std::to_string(modulus_);
  }

  friend bool operator==(FieldSpec, FieldSpec) = default;

 private:
  explicit FieldSpec(std::uint32_t modulus) : modulus_(modulus) {}
  std::uint32_t modulus_;
};

/// An exact field element. Rationals are always in lowest terms with a positive
/// denominator; prime-field residues lie in [0, p).
class Scalar {
 public:
  Scalar() : field_(FieldSpec::rationals()), value_(mpq_class(0)) {}

  static Scalar zero(FieldSpec field) { return from_int(field, 0); }
  static Scalar one(FieldSpec field) { return from_int(field, 1); }

  static Scalar from_int(FieldSpec field, long value) {
    if (field.is_rational()) return Scalar(field, mpq_class(value));
    long p = static_cast<long>(field.modulus());
    long r = value % p;
    if (r < 0) r += p;
    return Scalar(field, static_cast<std::uint32_t>(r));
  }

  static Scalar from_ratio(FieldSpec field, long num, long den) {
    if (den == 0) throw DivisionByZero();
    return from_int(field, num) / from_int(field, den);
  }

  static Scalar from_mpq(mpq_class value) {
    value.canonicalize();
    return Scalar(FieldSpec::rationals(), std::move(value));
  }

  FieldSpec field() const { return field_; }

  bool is_zero() const {
    if (auto* r = std::get_if<std::uint32_t>(&value_)) return *r == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }
  bool is_one() const {
    if (auto* r = std::get_if<std::uint32_t>(&value_)) return *r == 1;
    return std::get<mpq_class>(value_) == 1;
  }

  /// Residue of a prime-field element.
  std::uint32_t residue() const {
    if (auto* r = std::get_if<std::uint32_t>(&value_)) return *r;
    throw UsageError("residue() called on a rational scalar");
  }

  const mpq_class& rational() const {
    if (auto* q = std::get_if<mpq_class>(&value_)) return *q;
    throw UsageError("rational() called on a prime-field scalar");
  }

  Scalar operator-() const {
    if (auto* r = std::get_if<std::uint32_t>(&value_))
      return Scalar(field_, *r == 0 ? 0u : field_.modulus() - *r);
    return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    x.require_same_field(y);
    if (x.field_.is_prime()) {
      std::uint64_t s = std::uint64_t{x.prime_value()} + y.prime_value();
      return Scalar(x.field_, static_cast<std::uint32_t>(s % x.field_.modulus()));
    }
    return Scalar(x.field_, mpq_class(x.rational() + y.rational()));
  }

  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    x.require_same_field(y);
    if (x.field_.is_prime()) {
      std::uint64_t s = std::uint64_t{x.prime_value()} * y.prime_value();
      return Scalar(x.field_, static_cast<std::uint32_t>(s % x.field_.modulus()));
    }
    return Scalar(x.field_, mpq_class(x.rational() * y.rational()));
  }

  Scalar inv() const {
    if (is_zero()) throw DivisionByZero();
    if (field_.is_prime()) return Scalar(field_, detail::inverse_mod(prime_value(), field_.modulus()));
    return Scalar(field_, mpq_class(1 / rational()));
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    x.require_same_field(y);
    return x * y.inv();
  }

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.field_ == y.field_ && x.value_ == y.value_;
  }

  /// "p/q", or "p" when q = 1; prime-field elements print their residue.
  std::string to_string() const {
    if (field_.is_prime()) return std::to_string(prime_value());
    const mpq_class& q = rational();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }

 private:
  Scalar(FieldSpec field, std::uint32_t residue) : field_(field), value_(residue) {}
  Scalar(FieldSpec field, mpq_class value) : field_(field), value_(std::move(value)) {}

  std::uint32_t prime_value() const { return std::get<std::uint32_t>(value_); }

  void require_same_field(const Scalar& y) const {
    if (field_ != y.field_)
      throw UsageError("field mismatch: " + field_.to_string() + " vs " + y.field_.to_string());
  }

  FieldSpec field_;
  std::variant<mpq_class, std::uint32_t> value_;
};

inline std::string format_scalar(const Scalar& x) { return x.to_string(); }

/// Grammar: [+-]?[0-9]+(/[0-9]+)?. Over F_p a fraction a/b denotes a * b^{-1}
/// and is rejected when b vanishes mod p.
inline Scalar parse_scalar(std::string_view text, FieldSpec field) {
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("malformed scalar '" + std::string(text) + "': " + why);
  };
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  auto slash = rest.find('/');
  std::string_view num = rest.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (!all_digits(num)) throw fail("expected a decimal integer");
  if (slash != std::string_view::npos && !all_digits(den)) throw fail("expected a decimal denominator");

  if (field.is_rational()) {
    mpz_class n(std::string(num), 10);
    mpz_class d = den.empty() ? mpz_class(1) : mpz_class(std::string(den), 10);
    if (d == 0) throw fail("zero denominator");
    mpq_class q(negative ? mpz_class(-n) : n, d);
    return Scalar::from_mpq(std::move(q));
  }

  auto reduce = [&](std::string_view digits) {
    std::uint64_t r = 0;
    for (char c : digits) r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % field.modulus();
    return static_cast<long>(r);
  };
  bool zero_den = !den.empty() && all_digits(den) && den.find_first_not_of('0') == std::string_view::npos;
  if (zero_den) throw fail("zero denominator");
  long n = reduce(num);
  long d = den.empty() ? 1 : reduce(den);
  if (d == 0) throw fail("denominator vanishes in " + field.to_string());
  Scalar value = Scalar::from_ratio(field, n, d);
  return negative ? -value : value;
}

/// Small random scalars: numerators in [-9, 9] and denominators in [1, 5] over Q,
/// uniform residues over F_p.
inline Scalar random_scalar(std::mt19937_64& rng, FieldSpec field) {
  if (field.is_prime()) {
    std::uniform_int_distribution<long> dist(0, static_cast<long>(field.modulus()) - 1);
    return Scalar::from_int(field, dist(rng));
  }
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  long n = num(rng);
  return Scalar::from_ratio(field, n, den(rng));
}

inline Scalar random_nonzero_scalar(std::mt19937_64& rng, FieldSpec field) {
  for (;;) {
    Scalar x = random_scalar(rng, field);
    if (!x.is_zero()) return x;
  }
}

}  // namespace utn

#endif  // UTN_SCALAR_HPP
