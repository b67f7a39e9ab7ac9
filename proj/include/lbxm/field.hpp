/**
 * @file field.hpp
 * @brief Exact scalar fields: arbitrary-precision rationals and small prime fields.
 *
 * Every algorithm in lbxm is a template over a type satisfying the Field
 * concept. Two models are provided:
 *
 * - Rational: elements of ℚ, always in lowest terms with a positive denominator.
 * - Fp<P>: residues modulo a small prime P, stored in [0, P).
 *
 * Distinct fields are distinct types, so a computation can never mix them.
 */
#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "lbxm/error.hpp"

namespace lbxm {

template <class F>
concept Field = std::regular<F> && requires(const F a, const F b, std::string_view s, long long n) {
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a / b } -> std::same_as<F>;
  { -a } -> std::same_as<F>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { F::parse(s) } -> std::same_as<F>;
  { F::from_int(n) } -> std::same_as<F>;
  { F::tag() } -> std::convertible_to<std::string>;
};

class Rational {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(value_type v) : v_(std::move(v)) {}

  static Rational from_int(long long v) { return Rational(v); }
  static std::string tag() { return "Q"; }

  /// Parses "a", "-a" or "a/b"; the result is normalized.
  static Rational parse(std::string_view text) {
    using boost::multiprecision::cpp_int;
    auto parse_int = [&](std::string_view s) {
      std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (s.size() == start) throw ParseError("malformed rational '" + std::string(text) + "'");
      for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw ParseError("malformed rational '" + std::string(text) + "'");
      return cpp_int(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(value_type(parse_int(text)));
    cpp_int num = parse_int(text.substr(0, slash));
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text[0] == '-') throw ParseError("negative denominator in '" + std::string(text) + "'");
    cpp_int den = parse_int(den_text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(value_type(num, den));
  }

  bool is_zero() const { return v_.is_zero(); }
  const value_type& value() const { return v_; }

  std::string numerator_string() const { return boost::multiprecision::numerator(v_).str(); }
  std::string denominator_string() const { return boost::multiprecision::denominator(v_).str(); }

  /// "a/b" with b > 0 and gcd(a,b) = 1; "/1" is omitted.
  std::string to_string() const {
    auto den = boost::multiprecision::denominator(v_);
    if (den == 1) return boost::multiprecision::numerator(v_).str();
    return boost::multiprecision::numerator(v_).str() + "/" + den.str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero in Q");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(value_type(-a.v_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

 private:
  value_type v_{0};
};

namespace detail {
constexpr bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
}  // namespace detail

/// Prime field 𝔽_P with residues in [0, P).
template <std::uint32_t P>
class Fp {
  static_assert(detail::is_prime(P), "Fp requires a prime modulus");
  static_assert(P < (1u << 16), "Fp is meant for small primes");

 public:
  static constexpr std::uint32_t modulus = P;

  constexpr Fp() = default;
  constexpr Fp(long long v) : v_(reduce(v)) {}  // NOLINT(google-explicit-constructor)

  static Fp from_int(long long v) { return Fp(v); }
  static std::string tag() { return "F" + std::to_string(P); }

  /// Accepts the same "a/b" syntax as Rational and maps it into 𝔽_P.
  static Fp parse(std::string_view text) {
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view s) -> Fp {
      bool neg = !s.empty() && s[0] == '-';
      std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (s.size() == start) throw ParseError("malformed scalar '" + std::string(text) + "'");
      std::uint64_t acc = 0;
      for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ParseError("malformed scalar '" + std::string(text) + "'");
        acc = (acc * 10 + static_cast<std::uint64_t>(s[i] - '0')) % P;
      }
      Fp r(static_cast<long long>(acc));
      return neg ? -r : r;
    };
    if (slash == std::string_view::npos) return parse_int(text);
    Fp num = parse_int(text.substr(0, slash));
    Fp den = parse_int(text.substr(slash + 1));
    if (den.is_zero())
      throw ParseError("denominator of '" + std::string(text) + "' vanishes in " + tag());
    return num / den;
  }

  constexpr std::uint32_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }
  std::string to_string() const { return std::to_string(v_); }

  Fp inverse() const {
    if (v_ == 0) throw DomainError("division by zero in " + tag());
    // Fermat: a^(P-2)
    std::uint64_t result = 1, base = v_;
    for (std::uint32_t e = P - 2; e > 0; e >>= 1) {
      if (e & 1u) result = result * base % P;
      base = base * base % P;
    }
    Fp r;
    r.v_ = static_cast<std::uint32_t>(result);
    return r;
  }

  constexpr Fp& operator+=(const Fp& o) { v_ = (v_ + o.v_) % P; return *this; }
  constexpr Fp& operator-=(const Fp& o) { v_ = (v_ + P - o.v_) % P; return *this; }
  constexpr Fp& operator*=(const Fp& o) {
    v_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % P);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend constexpr Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend constexpr Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend constexpr Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend constexpr Fp operator-(const Fp& a) { return Fp() - a; }
  friend constexpr bool operator==(const Fp&, const Fp&) = default;

 private:
  static constexpr std::uint32_t reduce(long long v) {
    long long r = v % static_cast<long long>(P);
    return static_cast<std::uint32_t>(r < 0 ? r + P : r);
  }
  std::uint32_t v_ = 0;
};

using F2 = Fp<2>;
using F3 = Fp<3>;

static_assert(Field<Rational>);
static_assert(Field<F2>);
static_assert(Field<F3>);

}  // namespace lbxm
