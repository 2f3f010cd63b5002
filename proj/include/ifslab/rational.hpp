#ifndef IFSLAB_RATIONAL_HPP
#define IFSLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace ifslab {

  // Arbitrary-precision rational. gmpxx keeps results of arithmetic in
  // canonical form (den > 0, gcd(num, den) = 1); values built from a
  // numerator/denominator pair go through make_rational, which canonicalizes.
  using Rational = mpq_class;
  using Integer  = mpz_class;

  Rational make_rational(long num, long den = 1);
  Rational make_rational(Integer const& num, Integer const& den);

  // Accepts "p/q", "p", and decimals such as "-2.9" or "1.5e-6". Decimals are
  // converted exactly; nothing goes through binary floating point.
  Rational parse_rational(std::string_view text);

  // Always "p/q", including "n/1" for integers.
  std::string to_string(Rational const& x);

  double to_double(Rational const& x);

  // Natural log of a positive rational, accurate even when the value is
  // outside the double range.
  double log_of(Rational const& x);

  Integer floor_of(Rational const& x);

  Rational abs_of(Rational const& x);

  Rational pow_of(Rational const& base, unsigned long exponent);

  // 64-bit hash of the canonical representation.
  std::size_t hash_of(Rational const& x);

}  // namespace ifslab

#endif  // IFSLAB_RATIONAL_HPP
