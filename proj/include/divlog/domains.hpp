// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Divergence domains (partially ordered commutative monoids whose
// poset part is a complete lattice, restricted to representable
// values) and grading monoids.
//
// Shipped domains:
//   N      : natural numbers with infinity, (+, 0)
//   Rplus  : [0, inf], (+, 0)
//   Rtimes : [0, inf], (*, 1), with 0 * inf = 0
//   Rgamma : [0, inf], ((p,q) |-> p + q + gamma*p*q, 0)
//   Z      : integers with +-inf, (+, 0), r + (-inf) = -inf for all r
//   R      : [-inf, inf], (+, 0), same -inf convention
//   Bool   : {0, 1} with 0 >= 1, (*, 1); encodes preorders (1 = related)

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "divlog/extended.hpp"

namespace divlog {

struct DomainMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceDomain {
  std::string name;
  Ext zero;    // monoid unit
  Ext top;     // greatest element
  Ext bottom;  // least element
  double tol{1e-9};
  std::function<Ext(const Ext&, const Ext&)> add;
  std::function<bool(const Ext&, const Ext&)> leq;
  // Membership of the carrier; used to reject out-of-range values.
  std::function<bool(const Ext&)> carrier;

  bool contains(const Ext& v) const { return carrier(v); }
};

/// Monoid sum in the domain; rejects values outside the carrier.
inline Ext domain_add(const DivergenceDomain& d, const Ext& a, const Ext& b) {
  if (!d.contains(a) || !d.contains(b))
    throw DomainMismatch(d.name + ": value outside carrier");
  return d.add(a, b);
}

/// Least upper bound of a finite list; empty list yields the bottom.
inline Ext domain_sup(const DivergenceDomain& d, const std::vector<Ext>& vs) {
  Ext acc = d.bottom;
  for (const auto& v : vs)
    if (!d.leq(v, acc)) acc = v;
  return acc;
}

/// Greatest lower bound of a finite list; empty list yields the top.
inline Ext domain_inf(const DivergenceDomain& d, const std::vector<Ext>& vs) {
  Ext acc = d.top;
  for (const auto& v : vs)
    if (!d.leq(acc, v)) acc = v;
  return acc;
}

namespace detail {
inline bool nonneg(const Ext& v) {
  return v.kind == ExtKind::PosInf ||
         (v.kind == ExtKind::Rational && v.q >= 0) ||
         (v.kind == ExtKind::Real && v.x >= 0.0);
}
inline bool is_integral(const Ext& v) {
  return v.kind == ExtKind::Rational && denominator(v.q) == 1;
}
}  // namespace detail

inline DivergenceDomain domain_N() {
  DivergenceDomain d;
  d.name = "N";
  d.zero = Ext::integer(0);
  d.top = Ext::pos_inf();
  d.bottom = Ext::integer(0);
  d.add = [](const Ext& a, const Ext& b) { return ext_add(a, b); };
  d.leq = [](const Ext& a, const Ext& b) { return ext_leq(a, b, 0.0); };
  d.carrier = [](const Ext& v) {
    return v.kind == ExtKind::PosInf || (detail::is_integral(v) && v.q >= 0);
  };
  return d;
}

inline DivergenceDomain domain_Rplus(double tol = 1e-9) {
  DivergenceDomain d;
  d.name = "Rplus";
  d.tol = tol;
  d.zero = Ext::integer(0);
  d.top = Ext::pos_inf();
  d.bottom = Ext::integer(0);
  d.add = [](const Ext& a, const Ext& b) { return ext_add(a, b); };
  d.leq = [tol](const Ext& a, const Ext& b) { return ext_leq(a, b, tol); };
  d.carrier = [](const Ext& v) {
    return v.kind != ExtKind::NegInf && detail::nonneg(v);
  };
  return d;
}

inline DivergenceDomain domain_Rtimes(double tol = 1e-9) {
  DivergenceDomain d;
  d.name = "Rtimes";
  d.tol = tol;
  d.zero = Ext::integer(1);  // multiplicative unit
  d.top = Ext::pos_inf();
  d.bottom = Ext::integer(0);
  d.add = [](const Ext& a, const Ext& b) { return ext_mul(a, b); };
  d.leq = [tol](const Ext& a, const Ext& b) { return ext_leq(a, b, tol); };
  d.carrier = [](const Ext& v) {
    return v.kind != ExtKind::NegInf && detail::nonneg(v);
  };
  return d;
}

/// [0, inf] with (p,q) |-> p + q + gamma*p*q.
inline DivergenceDomain domain_Rgamma(const Rat& gamma, double tol = 1e-9) {
  DivergenceDomain d;
  d.name = "Rgamma(" + rat_str(gamma) + ")";
  d.tol = tol;
  d.zero = Ext::integer(0);
  d.top = Ext::pos_inf();
  d.bottom = Ext::integer(0);
  Ext g = Ext::rational(gamma);
  d.add = [g](const Ext& a, const Ext& b) {
    return ext_add(ext_add(a, b), ext_mul(g, ext_mul(a, b)));
  };
  d.leq = [tol](const Ext& a, const Ext& b) { return ext_leq(a, b, tol); };
  d.carrier = [](const Ext& v) {
    return v.kind != ExtKind::NegInf && detail::nonneg(v);
  };
  return d;
}

inline DivergenceDomain domain_Z() {
  DivergenceDomain d;
  d.name = "Z";
  d.zero = Ext::integer(0);
  d.top = Ext::pos_inf();
  d.bottom = Ext::neg_inf();
  d.add = [](const Ext& a, const Ext& b) { return ext_add(a, b); };
  d.leq = [](const Ext& a, const Ext& b) { return ext_leq(a, b, 0.0); };
  d.carrier = [](const Ext& v) {
    return v.kind == ExtKind::PosInf || v.kind == ExtKind::NegInf ||
           detail::is_integral(v);
  };
  return d;
}

inline DivergenceDomain domain_R(double tol = 1e-9) {
  DivergenceDomain d;
  d.name = "R";
  d.tol = tol;
  d.zero = Ext::integer(0);
  d.top = Ext::pos_inf();
  d.bottom = Ext::neg_inf();
  d.add = [](const Ext& a, const Ext& b) { return ext_add(a, b); };
  d.leq = [tol](const Ext& a, const Ext& b) { return ext_leq(a, b, tol); };
  d.carrier = [](const Ext&) { return true; };
  return d;
}

/// Two-point domain {0, 1} ordered by 0 >= 1, monoid (*, 1). A value of
/// 1 means "related"; the order is reversed so that "<= 1" picks out
/// exactly the related pairs, matching the preorder encoding.
inline DivergenceDomain domain_Bool() {
  DivergenceDomain d;
  d.name = "Bool";
  d.zero = Ext::integer(1);
  d.top = Ext::integer(0);
  d.bottom = Ext::integer(1);
  d.add = [](const Ext& a, const Ext& b) { return ext_mul(a, b); };
  // 1 <= 1, 1 <= 0, 0 <= 0; not 0 <= 1.
  d.leq = [](const Ext& a, const Ext& b) {
    bool a1 = a.kind == ExtKind::Rational && a.q == 1;
    bool b1 = b.kind == ExtKind::Rational && b.q == 1;
    return a1 || !b1;
  };
  d.carrier = [](const Ext& v) {
    return v.kind == ExtKind::Rational && (v.q == 0 || v.q == 1);
  };
  return d;
}

/// Looks up a domain by its CLI identifier, e.g. "Rplus" or "Rgamma(1)".
inline DivergenceDomain domain_by_name(const std::string& name, double tol = 1e-9) {
  if (name == "N") return domain_N();
  if (name == "Rplus") return domain_Rplus(tol);
  if (name == "Rtimes") return domain_Rtimes(tol);
  if (name == "Z") return domain_Z();
  if (name == "R") return domain_R(tol);
  if (name == "Bool") return domain_Bool();
  if (name.rfind("Rgamma(", 0) == 0 && name.back() == ')')
    return domain_Rgamma(rat_parse(name.substr(7, name.size() - 8)), tol);
  throw std::invalid_argument("unknown domain: " + name);
}

// ---------------------------------------------------------------------------
// Grading monoids

struct GradingMonoid {
  std::string name;
  Ext unit;
  std::function<Ext(const Ext&, const Ext&)> mul;
  std::function<bool(const Ext&, const Ext&)> leq;
};

/// The one-element grading monoid (ungraded divergences).
inline GradingMonoid grading_trivial() {
  return {"1", Ext::integer(1),
          [](const Ext&, const Ext&) { return Ext::integer(1); },
          [](const Ext&, const Ext&) { return true; }};
}

/// Additive grades over [0, inf] (e.g. budgets m for concentrated DP).
inline GradingMonoid grading_additive() {
  return {"Rplus", Ext::integer(0),
          [](const Ext& a, const Ext& b) { return ext_add(a, b); },
          [](const Ext& a, const Ext& b) { return ext_leq(a, b, 0.0); }};
}

/// Multiplicative grades over [1, inf). A grade alpha stands for the
/// privacy budget epsilon = log(alpha); grade composition alpha1*alpha2
/// is exactly budget addition epsilon1+epsilon2, kept rational-exact.
inline GradingMonoid grading_multiplicative() {
  return {"Rmult", Ext::integer(1),
          [](const Ext& a, const Ext& b) { return ext_mul(a, b); },
          [](const Ext& a, const Ext& b) { return ext_leq(a, b, 0.0); }};
}

}  // namespace divlog
