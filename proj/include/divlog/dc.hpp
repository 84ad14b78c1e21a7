// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// The composite monad D(Q x (-)): finite distributions over pairs of a
// rational cost and a carrier value. This is the semantic monad of the
// metalanguage interpreter: it simultaneously covers pure probabilistic
// programs (all costs zero), pure cost counting (Dirac distributions),
// and cost-and-probability programs.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "divlog/dist.hpp"
#include "divlog/rational.hpp"

namespace divlog {

struct DC {
  // (cost, value) -> weight; zero weights are never stored.
  std::map<std::pair<Rat, int>, Rat> w;

  bool operator==(const DC& o) const { return w == o.w; }

  void add(const Rat& cost, int value, const Rat& weight) {
    if (weight == 0) return;
    auto key = std::make_pair(cost, value);
    auto it = w.find(key);
    if (it == w.end())
      w.emplace(key, weight);
    else if ((it->second += weight) == 0)
      w.erase(it);
  }
  Rat total() const {
    Rat s(0);
    for (const auto& [k, v] : w) s += v;
    return s;
  }
};

inline DC dc_unit(int x) {
  DC d;
  d.add(Rat(0), x, Rat(1));
  return d;
}

/// Kleisli extension: mix the continuation's distributions, adding costs.
inline DC dc_bind(const std::function<DC(int)>& f, const DC& c) {
  DC r;
  for (const auto& [k, p] : c.w) {
    DC d = f(k.second);
    for (const auto& [k2, p2] : d.w) r.add(k.first + k2.first, k2.second, p * p2);
  }
  return r;
}

/// Marginal distribution of the value component over carrier size n.
inline Dist dc_value_marginal(const DC& c, int n) {
  Dist d;
  d.w.assign(n, Rat(0));
  for (const auto& [k, p] : c.w) d.w[k.second] += p;
  return d;
}

/// Marginal over costs, as a sparse cost -> mass map.
inline std::map<Rat, Rat> dc_cost_marginal(const DC& c) {
  std::map<Rat, Rat> m;
  for (const auto& [k, p] : c.w) m[k.first] += p;
  return m;
}

/// Pushes a value bijection g through the distribution (T g).
inline DC dc_map_values(const DC& c, const std::function<int(int)>& g) {
  DC r;
  for (const auto& [k, p] : c.w) r.add(k.first, g(k.second), p);
  return r;
}

inline std::string dc_str(const DC& c) {
  std::string s = "{";
  for (const auto& [k, p] : c.w) {
    if (s.size() > 1) s += ", ";
    s += "(" + rat_str(k.first) + "," + std::to_string(k.second) +
         "): " + rat_str(p);
  }
  return s + "}";
}

/// Monad-instance wrapper. Enumeration produces grid distributions over
/// (cost, value) pairs with costs 0..cost_bound, used by law checks.
struct DCMonad {
  using Val = DC;
  int denom = 2;
  int cost_bound = 1;

  std::string name() const { return "dist-cost"; }
  Val unit(int /*n*/, int x) const { return dc_unit(x); }
  Val bind(int, int, const std::vector<Val>& f, const Val& c) const {
    return dc_bind([&](int x) { return f[x]; }, c);
  }
  std::vector<Val> enumerate(int n) const {
    std::vector<std::pair<Rat, int>> atoms;
    for (int i = 0; i <= cost_bound; ++i)
      for (int x = 0; x < n; ++x) atoms.emplace_back(Rat(i), x);
    std::vector<Val> out;
    std::vector<int> cur(atoms.size(), 0);
    std::function<void(std::size_t, int)> go = [&](std::size_t i, int left) {
      if (i == atoms.size()) {
        if (left == 0) {
          DC d;
          for (std::size_t j = 0; j < atoms.size(); ++j)
            d.add(atoms[j].first, atoms[j].second, Rat(cur[j], denom));
          out.push_back(d);
        }
        return;
      }
      for (int k = 0; k <= left; ++k) {
        cur[i] = k;
        go(i + 1, left - k);
      }
    };
    go(0, denom);
    return out;
  }
  bool equal(const Val& a, const Val& b) const { return a == b; }
  std::string show(const Val& v) const { return dc_str(v); }
};

}  // namespace divlog
