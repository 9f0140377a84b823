#ifndef QHFPT_RATIONAL_HPP
#define QHFPT_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qhfpt {

// Arbitrary-precision integers and rationals. cpp_rational keeps values
// reduced with a positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

// Always "num/den", also for integers ("1/1"), so every rational output has one shape.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

// Parses "a/b" or "a".
Rational parse_rational(const std::string& text);

// ceil(a / b) for b > 0.
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b < a) ++q;
  return q;
}

} // namespace qhfpt

#endif
