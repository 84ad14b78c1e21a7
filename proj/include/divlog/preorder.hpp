// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Correspondence between preorders and boolean-valued divergences: a
// divergence into the two-point lattice whose adjacency is reflexive
// and transitive determines a preorder, and conversely. Both round
// trips are identities on finite instances.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "divlog/domains.hpp"

namespace divlog {

/// Finite preorder on {0..n-1} as an explicit relation matrix.
struct Preorder {
  int n = 0;
  std::vector<std::vector<bool>> le;

  bool reflexive() const {
    for (int i = 0; i < n; ++i)
      if (!le[i][i]) return false;
    return true;
  }
  bool transitive() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (le[i][j] && le[j][k] && !le[i][k]) return false;
    return true;
  }
};

/// Boolean-valued divergence on a finite carrier: Delta(x, y) is 1
/// (related, the lattice bottom) or 0 (unrelated, the lattice top).
struct BoolDivergence {
  int n = 0;
  std::function<Ext(int, int)> delta;
};

struct NotAPreorder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adjacency of a boolean divergence at bound 1: the pairs whose value
/// is at most 1 in the {0 >= 1} order, i.e. exactly the pairs mapped
/// to 1.
inline Preorder preorder_of_divergence(const BoolDivergence& d) {
  Preorder p;
  p.n = d.n;
  p.le.assign(d.n, std::vector<bool>(d.n, false));
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      p.le[i][j] = ext_identical(d.delta(i, j), Ext::integer(1));
  if (!p.reflexive()) throw NotAPreorder("adjacency is not reflexive");
  if (!p.transitive()) throw NotAPreorder("adjacency is not transitive");
  return p;
}

inline BoolDivergence divergence_of_preorder(const Preorder& p) {
  BoolDivergence d;
  d.n = p.n;
  d.delta = [p](int i, int j) {
    return Ext::integer(p.le[i][j] ? 1 : 0);
  };
  return d;
}

/// Checks both round trips on a preorder instance: preorder -> boolean
/// divergence -> preorder is the identity, and re-deriving the
/// divergence gives identical values everywhere.
inline bool preorder_roundtrip(const Preorder& p) {
  if (!p.reflexive() || !p.transitive()) throw NotAPreorder("input relation");
  BoolDivergence d = divergence_of_preorder(p);
  Preorder back = preorder_of_divergence(d);
  if (back.n != p.n || back.le != p.le) return false;
  BoolDivergence d2 = divergence_of_preorder(back);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (!ext_identical(d.delta(i, j), d2.delta(i, j))) return false;
  return true;
}

}  // namespace divlog
