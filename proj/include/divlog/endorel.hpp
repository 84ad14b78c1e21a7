// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Basic endorelations: a choice of an endorelation E I on every
// carrier. Shipped kinds are equality (Eq), the total relation (Top),
// and Custom (a caller-supplied membership predicate; its shape is not
// verified beyond being an endorelation per carrier).

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace divlog {

enum class EndorelKind { Eq, Top, Custom };

struct Endorel {
  EndorelKind kind = EndorelKind::Eq;
  std::string name = "eq";
  // For Custom: membership on carrier n.
  std::function<bool(int n, int x1, int x2)> custom;

  bool mem(int n, int x1, int x2) const {
    switch (kind) {
      case EndorelKind::Eq: return x1 == x2;
      case EndorelKind::Top: return true;
      default: return custom(n, x1, x2);
    }
  }
  std::vector<std::pair<int, int>> pairs(int n) const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (mem(n, a, b)) out.emplace_back(a, b);
    return out;
  }
};

inline Endorel endorel_eq() { return Endorel{EndorelKind::Eq, "eq", nullptr}; }
inline Endorel endorel_top() { return Endorel{EndorelKind::Top, "top", nullptr}; }
inline Endorel endorel_custom(std::string name,
                              std::function<bool(int, int, int)> mem) {
  return Endorel{EndorelKind::Custom, std::move(name), std::move(mem)};
}

/// E I x E J <= E(I x J) under the product-carrier pair encoding; holds
/// definitionally for Eq and Top and is checked for Custom relations.
inline bool endorel_product_closed(const Endorel& e, int nI, int nJ) {
  if (e.kind != EndorelKind::Custom) return true;
  for (auto [x1, x2] : e.pairs(nI))
    for (auto [y1, y2] : e.pairs(nJ))
      if (!e.mem(nI * nJ, x1 * nJ + y1, x2 * nJ + y2)) return false;
  return true;
}

}  // namespace divlog
