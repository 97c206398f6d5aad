#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "k3lat/errors.hpp"

namespace k3lat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Floor division and the matching nonnegative remainder.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

inline Integer ipow(Integer base, unsigned exp) {
  Integer r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline std::int64_t to_int64(const Integer& a) {
  if (a > std::numeric_limits<std::int64_t>::max() ||
      a < std::numeric_limits<std::int64_t>::min())
    throw DomainError("integer " + a.str() + " does not fit in 64 bits");
  return a.convert_to<std::int64_t>();
}

// Prime factorisation by trial division. Anything left above `limit`
// after dividing out small primes is reported as a single (possibly
// composite) factor.
inline std::map<Integer, unsigned> factorize(Integer n,
                                             std::uint64_t limit = 1000000) {
  std::map<Integer, unsigned> out;
  n = abs(n);
  if (n <= 1) return out;
  for (std::uint64_t p = 2; p <= limit && Integer(p) * p <= n; ++p) {
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

// "-2^9*3^3" style rendering; 0 and +-1 print as plain numbers.
inline std::string factored(const Integer& n) {
  if (n == 0) return "0";
  if (abs(n) == 1) return n.str();
  std::string s = n < 0 ? "-" : "";
  bool first = true;
  for (const auto& [p, e] : factorize(n)) {
    if (!first) s += "*";
    first = false;
    s += p.str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

// Prime divisors of a small positive integer.
inline std::map<std::int64_t, unsigned> small_factorize(std::int64_t n) {
  std::map<std::int64_t, unsigned> out;
  for (std::int64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

}  // namespace k3lat
