// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Finite discrete (sub)probability distributions with exact rational
// weights, and the corresponding monad instance. Carriers are sizes;
// elements are 0..n-1.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "divlog/rational.hpp"

namespace divlog {

struct Dist {
  std::vector<Rat> w;  // one weight per carrier element

  bool operator==(const Dist& o) const { return w == o.w; }
  Rat total() const {
    Rat s(0);
    for (const auto& x : w) s += x;
    return s;
  }
};

inline Dist dist_unit(int n, int x) {
  Dist d;
  d.w.assign(n, Rat(0));
  d.w[x] = 1;
  return d;
}

/// Kleisli extension: the weighted mixture sum_x c(x) * f(x).
inline Dist dist_bind(int nJ, const std::vector<Dist>& f, const Dist& c) {
  Dist r;
  r.w.assign(nJ, Rat(0));
  for (std::size_t x = 0; x < c.w.size(); ++x) {
    if (c.w[x] == 0) continue;
    for (int j = 0; j < nJ; ++j) r.w[j] += c.w[x] * f[x].w[j];
  }
  return r;
}

/// All distributions over n elements with weights k/denom; total weight
/// exactly 1 (sub = false) or at most 1 (sub = true).
inline std::vector<Dist> dist_enumerate(int n, int denom, bool sub) {
  std::vector<Dist> out;
  std::vector<Rat> cur(n);
  std::function<void(int, int)> go = [&](int i, int left) {
    if (i == n) {
      if (sub || left == 0) out.push_back(Dist{cur});
      return;
    }
    for (int k = (i == n - 1 && !sub) ? left : 0; k <= left; ++k) {
      cur[i] = Rat(k, denom);
      go(i + 1, left - k);
      if (i == n - 1 && !sub) break;
    }
  };
  go(0, denom);
  return out;
}

inline std::string dist_str(const Dist& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.w.size(); ++i) {
    if (d.w[i] == 0) continue;
    if (s.size() > 1) s += ", ";
    s += std::to_string(i) + ": " + rat_str(d.w[i]);
  }
  return s + "}";
}

/// Monad-instance wrapper usable by the generic law/axiom checkers.
struct DistMonad {
  using Val = Dist;
  int denom = 4;     // weight grid denominator for enumeration
  bool sub = false;  // subprobability variant

  std::string name() const { return sub ? "subdist" : "dist"; }
  Val unit(int n, int x) const { return dist_unit(n, x); }
  Val bind(int /*nI*/, int nJ, const std::vector<Val>& f, const Val& c) const {
    return dist_bind(nJ, f, c);
  }
  std::vector<Val> enumerate(int n) const { return dist_enumerate(n, denom, sub); }
  bool equal(const Val& a, const Val& b) const { return a == b; }
  std::string show(const Val& v) const { return dist_str(v); }
};

}  // namespace divlog
