#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace lattrace {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

inline Rational floor(const Rational& r) { return Rational(floor_div(numerator(r), denominator(r))); }

// Representative of r modulo 1 in [0, 1).
inline Rational frac(const Rational& r) { return r - floor(r); }

// e^{2πi r}, reduced mod 1 first so large arguments keep full precision.
inline Complex unit_phase(const Rational& r) {
  const double t = to_double(frac(r));
  return std::polar(1.0, 2.0 * kPi * t);
}

std::string to_string(const Rational& r);

// Parses "p", "p/q" (optionally signed).
Rational parse_rational(const std::string& text);

}  // namespace lattrace
