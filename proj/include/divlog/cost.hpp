// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// The cost-count monad N x (-) and its powerset variant P(N x (-)).
// Costs are stored as exact rationals so the same types also serve the
// rational-cost variants; enumeration uses natural costs 0..K.

#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divlog/rational.hpp"

namespace divlog {

struct CostComp {
  Rat cost;
  int value = 0;

  bool operator==(const CostComp& o) const {
    return cost == o.cost && value == o.value;
  }
  bool operator<(const CostComp& o) const {
    if (cost != o.cost) return cost < o.cost;
    return value < o.value;
  }
};

inline CostComp cost_unit(int x) { return CostComp{Rat(0), x}; }

/// Kleisli extension: f#(i, x) = (i + cost(f(x)), value(f(x))).
inline CostComp cost_bind(const std::vector<CostComp>& f, const CostComp& c) {
  CostComp r = f[c.value];
  r.cost += c.cost;
  return r;
}

inline std::string cost_str(const CostComp& c) {
  return "(" + rat_str(c.cost) + ", " + std::to_string(c.value) + ")";
}

struct CostMonad {
  using Val = CostComp;
  int cost_bound = 3;  // enumerated costs are 0..cost_bound

  std::string name() const { return "cost"; }
  Val unit(int /*n*/, int x) const { return cost_unit(x); }
  Val bind(int, int, const std::vector<Val>& f, const Val& c) const {
    return cost_bind(f, c);
  }
  std::vector<Val> enumerate(int n) const {
    std::vector<Val> out;
    for (int i = 0; i <= cost_bound; ++i)
      for (int x = 0; x < n; ++x) out.push_back(CostComp{Rat(i), x});
    return out;
  }
  bool equal(const Val& a, const Val& b) const { return a == b; }
  std::string show(const Val& v) const { return cost_str(v); }
};

// ---------------------------------------------------------------------------

struct CostSet {
  std::set<CostComp> entries;

  bool operator==(const CostSet& o) const { return entries == o.entries; }
};

inline CostSet costset_unit(int x) { return CostSet{{cost_unit(x)}}; }

/// Union of the per-entry results with costs shifted by the entry cost.
inline CostSet costset_bind(const std::vector<CostSet>& f, const CostSet& c) {
  CostSet r;
  for (const auto& e : c.entries)
    for (const auto& d : f[e.value].entries)
      r.entries.insert(CostComp{e.cost + d.cost, d.value});
  return r;
}

inline std::string costset_str(const CostSet& s) {
  std::string out = "{";
  for (const auto& e : s.entries) {
    if (out.size() > 1) out += ", ";
    out += cost_str(e);
  }
  return out + "}";
}

struct CostSetMonad {
  using Val = CostSet;
  int cost_bound = 3;   // enumerated costs are 0..cost_bound
  int max_size = 2;     // enumerated sets have at most this many entries

  std::string name() const { return "pcost"; }
  Val unit(int /*n*/, int x) const { return costset_unit(x); }
  Val bind(int, int, const std::vector<Val>& f, const Val& c) const {
    return costset_bind(f, c);
  }
  std::vector<Val> enumerate(int n) const {
    std::vector<CostComp> atoms;
    for (int i = 0; i <= cost_bound; ++i)
      for (int x = 0; x < n; ++x) atoms.push_back(CostComp{Rat(i), x});
    std::vector<Val> out;
    std::vector<CostComp> cur;
    // Emits each subset of size <= max_size exactly once (incl. empty).
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      out.push_back(Val{{cur.begin(), cur.end()}});
      if (static_cast<int>(cur.size()) == max_size) return;
      for (std::size_t j = i; j < atoms.size(); ++j) {
        cur.push_back(atoms[j]);
        go(j + 1);
        cur.pop_back();
      }
    };
    go(0);
    return out;
  }
  bool equal(const Val& a, const Val& b) const { return a == b; }
  std::string show(const Val& v) const { return costset_str(v); }
};

}  // namespace divlog
