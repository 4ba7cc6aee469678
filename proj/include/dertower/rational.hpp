#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dertower {

// Arbitrary precision rational; GMP keeps mpq_class canonical after every
// arithmetic operation (lowest terms, positive denominator).
using Rational = mpq_class;

inline Rational parse_rational(const std::string& text)
{
  Rational q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational number: " + text);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline int sign_of_parity(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace dertower
