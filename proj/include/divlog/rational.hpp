// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact arbitrary-precision rational arithmetic used throughout the
// library. All probability weights, costs and exactly-computable
// divergence values are rationals; floating point is confined to the
// entropic quantities (see extended.hpp).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace divlog {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Builds the rational n/d. Throws on a zero denominator.
inline Rat rat(std::int64_t n, std::int64_t d = 1) {
  if (d == 0) throw std::invalid_argument("rat: zero denominator");
  return Rat(BigInt(n), BigInt(d));
}

/// Parses "n", "n/d" or "-n/d" into an exact rational.
inline Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(BigInt(s));
  BigInt num(s.substr(0, slash));
  BigInt den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rat_parse: zero denominator");
  return Rat(num, den);
}

/// Renders a rational as "n" or "n/d" in lowest terms.
inline std::string rat_str(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// q^k for integer k (k may be negative when q != 0).
inline Rat rat_pow(const Rat& q, long k) {
  if (k < 0) {
    if (q == 0) throw std::invalid_argument("rat_pow: 0 to negative power");
    return Rat(1) / rat_pow(q, -k);
  }
  Rat acc(1), base(q);
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

/// Binomial coefficient C(n, k) as an exact big integer.
inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= BigInt(n - i);
    r /= BigInt(i + 1);
  }
  return r;
}

}  // namespace divlog
