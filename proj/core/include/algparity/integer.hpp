#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace algparity {

using Integer = mpz_class;
using Rational = mpq_class;

// p-adic valuation of a nonzero integer. ord_p(0) is undefined and throws.
long ord_p(const Integer& value, const Integer& p);
long ord_p(const Rational& value, const Integer& p);

Integer abs(const Integer& value);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned long exponent);

// Least nonnegative residue.
Integer mod(const Integer& value, const Integer& modulus);

bool is_probable_prime(const Integer& value);

Integer parse_integer(std::string_view text);
Rational parse_rational(std::string_view num, std::string_view den);
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

// Inline for |value| <= 10^12, otherwise "123456...789 (N digits)".
std::string abbreviate(const Integer& value);
std::string abbreviate(const Rational& value);

// Element of Q^x / (Q^x)^2, stored through any representative. Equality is
// tested by asking whether the quotient of representatives is a square.
class SquareClass {
 public:
  SquareClass() : value_(1) {}
  explicit SquareClass(Rational value);

  const Rational& value() const { return value_; }

  // Sign times the squarefree part of num*den. Uses trial division up to
  // 10^6 and throws TooLarge if an unfactored cofactor could still hide a
  // square.
  Integer squarefree_representative() const;

  long ord_p_parity(const Integer& p) const;

  SquareClass operator*(const SquareClass& other) const;
  SquareClass inverse() const;
  bool operator==(const SquareClass& other) const;

 private:
  Rational value_;
};

}  // namespace algparity
