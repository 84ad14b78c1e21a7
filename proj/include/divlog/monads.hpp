// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Generic utilities over monad instances: Kleisli-map enumeration (with
// deterministic seeded sampling when the space is too large), derived
// strength, monad-law checking, and transfer of a divergence along a
// monad opfunctor.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "divlog/extended.hpp"

namespace divlog {

/// splitmix64: small deterministic PRNG for reproducible sampling.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform value in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

/// Visits Kleisli maps f : I -> T J, i.e. vectors of |I| monadic values
/// drawn from `codomain`. If the full space has at most `cap` maps it is
/// visited exhaustively (in lexicographic order); otherwise `cap` maps
/// are sampled with the seeded generator. Returns true when the visit
/// was exhaustive. The visitor may return false to stop early.
template <class Val>
bool for_each_kleisli(int nI, const std::vector<Val>& codomain,
                      std::uint64_t cap, std::uint64_t seed,
                      const std::function<bool(const std::vector<Val>&)>& visit) {
  std::uint64_t total = 1;
  bool exhaustive = true;
  for (int i = 0; i < nI && exhaustive; ++i) {
    total *= codomain.size();
    if (total > cap) exhaustive = false;
  }
  std::vector<Val> f(nI, codomain.empty() ? Val{} : codomain[0]);
  if (exhaustive) {
    std::vector<std::size_t> idx(nI, 0);
    while (true) {
      for (int i = 0; i < nI; ++i) f[i] = codomain[idx[i]];
      if (!visit(f)) return exhaustive;
      int i = nI - 1;
      while (i >= 0 && ++idx[i] == codomain.size()) idx[i--] = 0;
      if (i < 0) break;
    }
    return true;
  }
  Rng rng(seed);
  for (std::uint64_t k = 0; k < cap; ++k) {
    for (int i = 0; i < nI; ++i) f[i] = codomain[rng.below(codomain.size())];
    if (!visit(f)) return false;
  }
  return false;
}

/// Product-carrier encoding: (i, j) in I x J is i * |J| + j.
inline int pair_encode(int /*nI*/, int nJ, int i, int j) { return i * nJ + j; }
inline std::pair<int, int> pair_decode(int nJ, int p) { return {p / nJ, p % nJ}; }

/// Strength applied to a global element: theta(i, c) is the Kleisli
/// extension of j |-> unit((i, j)) applied to c. This is the definition
/// used everywhere; strength is never stored separately.
template <class M>
typename M::Val strength(const M& m, int nI, int i, int nJ,
                         const typename M::Val& c) {
  std::vector<typename M::Val> f;
  f.reserve(nJ);
  for (int j = 0; j < nJ; ++j)
    f.push_back(m.unit(nI * nJ, pair_encode(nI, nJ, i, j)));
  return m.bind(nJ, nI * nJ, f, c);
}

struct LawReport {
  bool passed = true;
  std::uint64_t cases = 0;
  bool exhaustive = true;
  std::string failure;  // description of the first counterexample
};

/// Checks left unit, right unit and associativity on enumerated values
/// and (possibly sampled) Kleisli maps between carriers of size up to
/// `max_carrier`.
template <class M>
LawReport check_monad_laws(const M& m, int max_carrier, std::uint64_t cap = 2000,
                           std::uint64_t seed = 0) {
  LawReport rep;
  using Val = typename M::Val;
  for (int nI = 1; nI <= max_carrier && rep.passed; ++nI) {
    for (int nJ = 1; nJ <= max_carrier && rep.passed; ++nJ) {
      auto valsI = m.enumerate(nI);
      auto valsJ = m.enumerate(nJ);
      bool ex = for_each_kleisli<Val>(nI, valsJ, cap, seed, [&](const std::vector<Val>& f) {
        // Left unit: f#(unit x) = f(x).
        for (int x = 0; x < nI; ++x) {
          ++rep.cases;
          if (!m.equal(m.bind(nI, nJ, f, m.unit(nI, x)), f[x])) {
            rep.passed = false;
            rep.failure = "left unit at carrier " + std::to_string(nI);
            return false;
          }
        }
        // Right unit: unit#(c) = c.
        std::vector<Val> eta;
        for (int x = 0; x < nI; ++x) eta.push_back(m.unit(nI, x));
        for (const auto& c : valsI) {
          ++rep.cases;
          if (!m.equal(m.bind(nI, nI, eta, c), c)) {
            rep.passed = false;
            rep.failure = "right unit at carrier " + std::to_string(nI);
            return false;
          }
        }
        // Associativity: g#(f#(c)) = (g# . f)#(c), for sampled g : J -> T I.
        Rng rng(seed ^ 0x5bd1e995);
        std::vector<Val> g;
        for (int j = 0; j < nJ; ++j) g.push_back(valsI[rng.below(valsI.size())]);
        std::vector<Val> gf;  // g# . f
        for (int x = 0; x < nI; ++x) gf.push_back(m.bind(nJ, nI, g, f[x]));
        for (const auto& c : valsI) {
          ++rep.cases;
          auto lhs = m.bind(nJ, nI, g, m.bind(nI, nJ, f, c));
          auto rhs = m.bind(nI, nI, gf, c);
          if (!m.equal(lhs, rhs)) {
            rep.passed = false;
            rep.failure = "associativity at carriers " + std::to_string(nI) +
                          "," + std::to_string(nJ);
            return false;
          }
        }
        return true;
      });
      rep.exhaustive = rep.exhaustive && ex;
    }
  }
  return rep;
}

/// Checks the two opfunctor laws for a carrier map p (here: identity on
/// sizes) and a family lambda : S I -> T(p I) on enumerated samples:
/// lambda(unit_S x) = unit_T x, and for Kleisli maps f : I -> S J,
/// lambda(f#_S c) = (lambda . f)#_T (lambda c).
template <class S, class T>
LawReport check_opfunctor_laws(const S& s, const T& t,
                               const std::function<typename T::Val(int, const typename S::Val&)>& lambda,
                               int max_carrier, std::uint64_t cap = 500,
                               std::uint64_t seed = 0) {
  LawReport rep;
  using SV = typename S::Val;
  for (int nI = 1; nI <= max_carrier && rep.passed; ++nI) {
    for (int x = 0; x < nI; ++x) {
      ++rep.cases;
      if (!t.equal(lambda(nI, s.unit(nI, x)), t.unit(nI, x))) {
        rep.passed = false;
        rep.failure = "unit law at carrier " + std::to_string(nI);
        return rep;
      }
    }
    for (int nJ = 1; nJ <= max_carrier && rep.passed; ++nJ) {
      auto valsI = s.enumerate(nI);
      auto valsJ = s.enumerate(nJ);
      bool ex = for_each_kleisli<SV>(nI, valsJ, cap, seed, [&](const std::vector<SV>& f) {
        std::vector<typename T::Val> lf;
        for (int x = 0; x < nI; ++x) lf.push_back(lambda(nJ, f[x]));
        for (const auto& c : valsI) {
          ++rep.cases;
          auto lhs = lambda(nJ, s.bind(nI, nJ, f, c));
          auto rhs = t.bind(nI, nJ, lf, lambda(nI, c));
          if (!t.equal(lhs, rhs)) {
            rep.passed = false;
            rep.failure = "multiplication law at carriers " +
                          std::to_string(nI) + "," + std::to_string(nJ);
            return false;
          }
        }
        return true;
      });
      rep.exhaustive = rep.exhaustive && ex;
    }
  }
  return rep;
}

}  // namespace divlog
