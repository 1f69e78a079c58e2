#pragma once

// Scalar backends: exact GMP rationals for verification, doubles for
// large simulations. Every model is instantiated for both.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace juggling {

using Rational = mpq_class;

enum class Backend { exact, floating };

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Backend backend = Backend::exact;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational ratio(std::int64_t num, std::int64_t den) {
    Rational r(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    r.canonicalize();
    return r;
  }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static double to_double(const Rational& a) { return a.get_d(); }
  // "p/q", or "p" when the denominator is 1.
  static std::string to_string(const Rational& a) { return a.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr Backend backend = Backend::floating;
  static constexpr double default_tolerance = 1e-12;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double ratio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static bool is_zero(double a) { return std::abs(a) <= default_tolerance; }
  // Relative comparison with an absolute floor at the tolerance.
  static bool equal(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= default_tolerance * scale;
  }
  static double to_double(double a) { return a; }
  static std::string to_string(double a);
};

// GMP does not canonicalize values built from (num, den) pairs.
inline void canonicalize(Rational& r) { r.canonicalize(); }
inline void canonicalize(double&) {}

template <class S>
bool scalar_equal(const S& a, const S& b) {
  return ScalarTraits<S>::equal(a, b);
}

template <class S>
bool scalar_is_zero(const S& a) {
  return ScalarTraits<S>::is_zero(a);
}

template <class S>
std::string scalar_to_string(const S& a) {
  return ScalarTraits<S>::to_string(a);
}

// Parses "p/q", an integer, or a decimal ("0.25", "1e-3") into an exact
// rational. Decimals are converted exactly, never through binary floats.
// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

template <class S>
S parse_scalar(std::string_view text);

template <class S>
S power(const S& base, int exponent) {
  S result = ScalarTraits<S>::one();
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace juggling
