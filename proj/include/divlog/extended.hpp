// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Extended values: elements of divergence domains. A value is either
// -inf, an exact rational, a double (for entropic quantities such as
// KL or Renyi divergences), or +inf. Comparisons between two rationals
// are exact; any comparison that touches a double uses a tolerance.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "divlog/rational.hpp"

namespace divlog {

enum class ExtKind { NegInf, Rational, Real, PosInf };

struct Ext {
  ExtKind kind{ExtKind::Rational};
  Rat q{};       // meaningful when kind == Rational
  double x{0.0}; // meaningful when kind == Real

  static Ext neg_inf() { return Ext{ExtKind::NegInf, Rat(0), 0.0}; }
  static Ext pos_inf() { return Ext{ExtKind::PosInf, Rat(0), 0.0}; }
  static Ext rational(Rat v) { return Ext{ExtKind::Rational, std::move(v), 0.0}; }
  static Ext integer(std::int64_t v) { return rational(Rat(v)); }
  static Ext real(double v) { return Ext{ExtKind::Real, Rat(0), v}; }

  bool is_rational() const { return kind == ExtKind::Rational; }
  bool is_finite() const {
    return kind == ExtKind::Rational || kind == ExtKind::Real;
  }

  /// Double approximation (infinities map to +-HUGE_VAL).
  double approx() const {
    switch (kind) {
      case ExtKind::NegInf: return -HUGE_VAL;
      case ExtKind::PosInf: return HUGE_VAL;
      case ExtKind::Rational: return static_cast<double>(q);
      default: return x;
    }
  }
};

/// Three-way comparison: -1, 0, +1. Exact on rationals; uses `tol`
/// whenever a Real participates.
inline int ext_compare(const Ext& a, const Ext& b, double tol = 1e-9) {
  auto rank = [](ExtKind k) { return k == ExtKind::NegInf ? -1 : k == ExtKind::PosInf ? 1 : 0; };
  int ra = rank(a.kind), rb = rank(b.kind);
  if (ra != 0 || rb != 0) return ra < rb ? -1 : ra > rb ? 1 : 0;
  if (a.kind == ExtKind::Rational && b.kind == ExtKind::Rational)
    return a.q < b.q ? -1 : a.q > b.q ? 1 : 0;
  double da = a.approx(), db = b.approx();
  if (std::fabs(da - db) <= tol) return 0;
  return da < db ? -1 : 1;
}

inline bool ext_leq(const Ext& a, const Ext& b, double tol = 1e-9) {
  return ext_compare(a, b, tol) <= 0;
}
inline bool ext_eq(const Ext& a, const Ext& b, double tol = 1e-9) {
  return ext_compare(a, b, tol) == 0;
}
/// Exact structural equality (no tolerance); used for determinism checks.
inline bool ext_identical(const Ext& a, const Ext& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == ExtKind::Rational) return a.q == b.q;
  if (a.kind == ExtKind::Real) return a.x == b.x;
  return true;
}

/// Extended addition with the convention r + (-inf) = -inf for every r,
/// including +inf. This is the completion used by the additive domains.
inline Ext ext_add(const Ext& a, const Ext& b) {
  if (a.kind == ExtKind::NegInf || b.kind == ExtKind::NegInf) return Ext::neg_inf();
  if (a.kind == ExtKind::PosInf || b.kind == ExtKind::PosInf) return Ext::pos_inf();
  if (a.kind == ExtKind::Rational && b.kind == ExtKind::Rational)
    return Ext::rational(a.q + b.q);
  return Ext::real(a.approx() + b.approx());
}

/// Extended multiplication on [0, inf] with 0 * inf = 0 (the convention
/// matching sup-of-ratio divergences, where an empty ratio counts as 1
/// and a vanishing factor annihilates).
inline Ext ext_mul(const Ext& a, const Ext& b) {
  auto is_zero = [](const Ext& e) {
    return (e.kind == ExtKind::Rational && e.q == 0) ||
           (e.kind == ExtKind::Real && e.x == 0.0);
  };
  if (is_zero(a) || is_zero(b)) return Ext::rational(Rat(0));
  if (a.kind == ExtKind::PosInf || b.kind == ExtKind::PosInf) return Ext::pos_inf();
  if (a.kind == ExtKind::NegInf || b.kind == ExtKind::NegInf) return Ext::neg_inf();
  if (a.kind == ExtKind::Rational && b.kind == ExtKind::Rational)
    return Ext::rational(a.q * b.q);
  return Ext::real(a.approx() * b.approx());
}

inline Ext ext_max(const Ext& a, const Ext& b, double tol = 1e-9) {
  return ext_compare(a, b, tol) >= 0 ? a : b;
}
inline Ext ext_min(const Ext& a, const Ext& b, double tol = 1e-9) {
  return ext_compare(a, b, tol) <= 0 ? a : b;
}

inline std::string ext_str(const Ext& e) {
  switch (e.kind) {
    case ExtKind::NegInf: return "-inf";
    case ExtKind::PosInf: return "inf";
    case ExtKind::Rational: return rat_str(e.q);
    default: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", e.x);
      return buf;
    }
  }
}

}  // namespace divlog
