#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace resolvent {

/// Exact rational number; GMP keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "a" or "a/b" with optional leading sign.
Rational parse_rational(std::string_view text);

}  // namespace resolvent
