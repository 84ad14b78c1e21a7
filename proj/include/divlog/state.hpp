// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// The state monad S => ((-) x S) over a finite state space, as a total
// transition table. Entry s of the table is the (value, next state)
// pair produced from initial state s.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace divlog {

struct StateFn {
  // table[s] = (value, next state)
  std::vector<std::pair<int, int>> table;

  bool operator==(const StateFn& o) const { return table == o.table; }
};

inline StateFn state_unit(int nS, int x) {
  StateFn f;
  f.table.resize(nS);
  for (int s = 0; s < nS; ++s) f.table[s] = {x, s};
  return f;
}

/// Kleisli extension: run c, then run f(value) from the reached state.
inline StateFn state_bind(const std::vector<StateFn>& f, const StateFn& c) {
  StateFn r;
  r.table.resize(c.table.size());
  for (std::size_t s = 0; s < c.table.size(); ++s) {
    auto [x, s1] = c.table[s];
    r.table[s] = f[x].table[s1];
  }
  return r;
}

struct StateMonad {
  using Val = StateFn;
  int nS = 2;  // size of the state space

  std::string name() const { return "state"; }
  Val unit(int /*n*/, int x) const { return state_unit(nS, x); }
  Val bind(int, int, const std::vector<Val>& f, const Val& c) const {
    return state_bind(f, c);
  }
  /// All total maps S -> I x S.
  std::vector<Val> enumerate(int n) const {
    std::vector<Val> out;
    StateFn cur;
    cur.table.resize(nS);
    std::function<void(int)> go = [&](int s) {
      if (s == nS) {
        out.push_back(cur);
        return;
      }
      for (int x = 0; x < n; ++x)
        for (int s1 = 0; s1 < nS; ++s1) {
          cur.table[s] = {x, s1};
          go(s + 1);
        }
    };
    go(0);
    return out;
  }
  bool equal(const Val& a, const Val& b) const { return a == b; }
  std::string show(const Val& v) const {
    std::string s = "[";
    for (std::size_t i = 0; i < v.table.size(); ++i) {
      if (i) s += ", ";
      s += std::to_string(i) + "->(" + std::to_string(v.table[i].first) + "," +
           std::to_string(v.table[i].second) + ")";
    }
    return s + "]";
  }
};

}  // namespace divlog
