// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Codensity-style relational lifting tools: adjacency relations, test
// arrows, refutation of lifting membership, exact witness arrows for
// the dp and tv divergences, and checkers for the fundamental property,
// the strength law, and the enrichment inequalities.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divlog/divergence.hpp"

namespace divlog {

/// Relation object: a binary relation between two carriers given by a
/// membership test plus an exhaustive pair enumerator.
struct RelObject {
  int nLeft = 1, nRight = 1;
  std::function<bool(int, int)> mem;

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < nLeft; ++a)
      for (int b = 0; b < nRight; ++b)
        if (mem(a, b)) out.emplace_back(a, b);
    return out;
  }
};

inline RelObject rel_from_endorel(const Endorel& e, int n) {
  return RelObject{n, n, [e, n](int a, int b) { return e.mem(n, a, b); }};
}

/// Adjacency relation of a divergence: pairs whose divergence at grade
/// m is bounded by v.
template <class M>
struct AdjacencyRel {
  const DivSpec<M>* spec;
  Ext m, v;
  int nI;

  bool mem(const typename M::Val& c1, const typename M::Val& c2) const {
    return spec->domain.leq(spec->evaluate(m, nI, c1, c2), v);
  }
};

/// A pair of Kleisli maps (k1, k2) : X -> T J together with the grade
/// and budget (n, w) at which the pair respects adjacency.
template <class M>
struct TestArrow {
  int nJ = 1;
  Ext n, w;
  std::vector<typename M::Val> k1, k2;
};

struct InvalidTestArrow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Side condition: (k1 x1, k2 x2) lies in the adjacency at (n, w) for
/// every pair of X.
template <class M>
bool arrow_respects(const DivSpec<M>& spec, const RelObject& X,
                    const TestArrow<M>& a) {
  for (auto [x1, x2] : X.pairs())
    if (!spec.domain.leq(spec.evaluate(a.n, a.nJ, a.k1[x1], a.k2[x2]), a.w))
      return false;
  return true;
}

template <class M>
struct RefuteResult {
  bool refuted = false;
  std::uint64_t cases = 0;
  std::optional<TestArrow<M>> witness;
  Ext lhs, rhs;  // both sides of the violated inequality, when refuted
};

/// Tries to refute membership of (c1, c2) in the lifted relation at
/// (m, v) over X by streaming test arrows. Arrows violating their side
/// condition are rejected with InvalidTestArrow when `strict`, and
/// skipped otherwise. A non-refutation is one-sided: finite families
/// only over-approximate the lifting.
template <class M>
RefuteResult<M> codensity_refute(
    const DivSpec<M>& spec, const Ext& m, const Ext& v, const RelObject& X,
    const typename M::Val& c1, const typename M::Val& c2,
    const std::vector<TestArrow<M>>& family, bool strict = false) {
  RefuteResult<M> res;
  for (const auto& a : family) {
    if (!arrow_respects(spec, X, a)) {
      if (strict) throw InvalidTestArrow("test arrow violates its side condition");
      continue;
    }
    ++res.cases;
    const M& mon = spec.monad;
    Ext lhs = spec.evaluate(spec.grading.mul(m, a.n), a.nJ,
                            mon.bind(X.nLeft, a.nJ, a.k1, c1),
                            mon.bind(X.nRight, a.nJ, a.k2, c2));
    Ext rhs = spec.domain.add(v, a.w);
    if (!spec.domain.leq(lhs, rhs)) {
      res.refuted = true;
      res.witness = a;
      res.lhs = lhs;
      res.rhs = rhs;
      return res;
    }
  }
  return res;
}

/// Generates all test arrows into the fixed target carrier `omega` with
/// Kleisli components drawn from the monad's enumeration, grades from
/// the divergence's grade schedule, and budgets from a small rational grid.
/// Suitable for divergences generated over omega.
template <class M>
std::vector<TestArrow<M>> omega_test_family(const DivSpec<M>& spec, int nX,
                                            int omega,
                                            std::uint64_t cap = 4000,
                                            std::uint64_t seed = 0,
                                            bool* exhaustive = nullptr) {
  std::vector<TestArrow<M>> out;
  auto codomain = spec.monad.enumerate(omega);
  std::vector<Ext> grades = {spec.grading.unit};
  for (const auto& g : spec.grade_samples) grades.push_back(g);
  std::vector<Ext> budgets = {Ext::integer(0), Ext::rational(rat(1, 2)),
                              Ext::integer(1), Ext::integer(2)};
  // Pairs (k1, k2) enumerated jointly.
  std::vector<std::pair<typename M::Val, typename M::Val>> cod2;
  for (const auto& a : codomain)
    for (const auto& b : codomain) cod2.emplace_back(a, b);
  bool ex = for_each_kleisli<std::pair<typename M::Val, typename M::Val>>(
      nX, cod2, cap, seed,
      [&](const std::vector<std::pair<typename M::Val, typename M::Val>>& f) {
        TestArrow<M> a;
        a.nJ = omega;
        for (auto& [p, q] : f) {
          a.k1.push_back(p);
          a.k2.push_back(q);
        }
        for (const auto& n : grades)
          for (const auto& w : budgets) {
            a.n = n;
            a.w = w;
            out.push_back(a);
          }
        return true;
      });
  if (exhaustive) *exhaustive = ex;
  return out;
}

/// Exact witness arrow for dp: the indicator of the optimal event set,
/// as a subdistribution-valued map into the one-point carrier. Applying
/// it preserves the dp value exactly.
inline TestArrow<DistMonad> exact_witness_dp(const Rat& alpha, const Dist& mu1,
                                             const Dist& mu2) {
  TestArrow<DistMonad> a;
  a.nJ = 1;
  a.n = Ext::rational(alpha);
  a.w = Ext::integer(0);
  auto s = dp_optimal_set(alpha, mu1, mu2);
  std::vector<bool> in(mu1.w.size(), false);
  for (int x : s) in[x] = true;
  for (std::size_t x = 0; x < mu1.w.size(); ++x) {
    Dist d;
    d.w.assign(1, in[x] ? Rat(1) : Rat(0));
    a.k1.push_back(d);
    a.k2.push_back(d);
  }
  return a;
}

/// Exact witness arrow for tv: the two-block indicator partition of the
/// density comparison set A = { x : mu1(x) >= mu2(x) }, into the
/// two-point carrier. Applying it preserves the tv value exactly.
inline TestArrow<DistMonad> exact_witness_tv(const Dist& mu1, const Dist& mu2) {
  TestArrow<DistMonad> a;
  a.nJ = 2;
  a.n = Ext::integer(1);
  a.w = Ext::integer(0);
  for (std::size_t x = 0; x < mu1.w.size(); ++x) {
    int block = mu1.w[x] >= mu2.w[x] ? 1 : 0;
    a.k1.push_back(dist_unit(2, block));
    a.k2.push_back(dist_unit(2, block));
  }
  return a;
}

// ---------------------------------------------------------------------------

struct PropertyReport {
  bool passed = true;
  bool exhaustive = true;
  std::uint64_t cases = 0;
  std::string detail;
};

/// Fundamental-property check, direction (C): every pair inside the
/// adjacency stays inside after postprocessing with any test arrow
/// respecting E I. Exact; exhaustive when the arrow stream is.
/// `max_omega` bounds the target carrier of the test arrows and
/// defaults to `max_carrier`.
template <class M>
PropertyReport check_fundamental_c(const DivSpec<M>& spec, const Endorel& E,
                                   int max_carrier, std::uint64_t cap = 2000,
                                   std::uint64_t seed = 0, int max_omega = 0) {
  PropertyReport rep;
  if (max_omega <= 0) max_omega = max_carrier;
  std::vector<Ext> budgets = {Ext::integer(0), Ext::integer(1), Ext::integer(2)};
  const M& m = spec.monad;
  const std::size_t ng = spec.grade_samples.size();
  for (int nI = 1; nI <= max_carrier && rep.passed; ++nI) {
    auto valsI = m.enumerate(nI);
    const std::size_t nv = valsI.size();
    RelObject X = rel_from_endorel(E, nI);
    // Pairs inside the adjacency on the source carrier, indexed by
    // (grade, budget).
    std::vector<std::vector<std::uint32_t>> inside(ng * budgets.size());
    for (std::size_t gi = 0; gi < ng; ++gi)
      for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
          Ext d = spec.evaluate(spec.grade_samples[gi], nI, valsI[i], valsI[j]);
          for (std::size_t vi = 0; vi < budgets.size(); ++vi)
            if (spec.domain.leq(d, budgets[vi]))
              inside[gi * budgets.size() + vi].push_back(
                  static_cast<std::uint32_t>(i * nv + j));
        }
    for (int nJ = 1; nJ <= max_omega; ++nJ) {
      bool ex = true;
      auto family = omega_test_family(spec, nI, nJ, cap, seed, &ex);
      rep.exhaustive = rep.exhaustive && ex;
      // Arrows sharing a Kleisli pair arrive consecutively, and maps
      // into a small target carrier produce few distinct pushforwards,
      // so pushforwards are interned by their printed form and the
      // post-divergence values memoized across map groups, per grade
      // product.
      std::unordered_map<std::string, std::uint32_t> intern;
      std::vector<typename M::Val> pooled;
      auto intern_id = [&](const typename M::Val& v) {
        auto [it, fresh] = intern.emplace(
            m.show(v), static_cast<std::uint32_t>(pooled.size()));
        if (fresh) pooled.push_back(v);
        return it->second;
      };
      std::vector<std::uint32_t> id1(nv), id2(nv);
      std::vector<Ext> lhs_grades;
      std::vector<std::unordered_map<std::uint64_t, Ext>> lhs_vals;
      // Worst (largest) post-divergence value over each inside list,
      // with its pair index; domains are totally ordered, so comparing
      // the worst value against the bound decides the whole list.
      using Worst = std::optional<std::pair<Ext, std::uint32_t>>;
      std::vector<std::vector<Worst>> lhs_worst;
      const TestArrow<M>* group = nullptr;
      for (const auto& a : family) {
        if (!arrow_respects(spec, X, a)) continue;
        bool same = group != nullptr;
        if (same)
          for (std::size_t x = 0; x < group->k1.size() && same; ++x)
            same = m.equal(group->k1[x], a.k1[x]) &&
                   m.equal(group->k2[x], a.k2[x]);
        if (!same) {
          for (std::size_t i = 0; i < nv; ++i) {
            id1[i] = intern_id(m.bind(nI, a.nJ, a.k1, valsI[i]));
            id2[i] = intern_id(m.bind(nI, a.nJ, a.k2, valsI[i]));
          }
          for (auto& w : lhs_worst)
            w.assign(ng * budgets.size(), std::nullopt);
        }
        group = &a;
        for (std::size_t gi = 0; gi < ng; ++gi) {
          Ext gp = spec.grading.mul(spec.grade_samples[gi], a.n);
          std::size_t slot = 0;
          while (slot < lhs_grades.size() && !ext_identical(lhs_grades[slot], gp))
            ++slot;
          if (slot == lhs_grades.size()) {
            lhs_grades.push_back(gp);
            lhs_vals.emplace_back();
            lhs_worst.emplace_back(ng * budgets.size());
          }
          auto& cached = lhs_vals[slot];
          for (std::size_t vi = 0; vi < budgets.size(); ++vi) {
            const auto& ins = inside[gi * budgets.size() + vi];
            if (ins.empty()) continue;
            rep.cases += ins.size();
            Worst& worst = lhs_worst[slot][gi * budgets.size() + vi];
            if (!worst) {
              for (std::uint32_t pi : ins) {
                std::uint64_t key =
                    (static_cast<std::uint64_t>(id1[pi / nv]) << 32) |
                    id2[pi % nv];
                auto it = cached.find(key);
                if (it == cached.end())
                  it = cached
                           .emplace(key, spec.evaluate(gp, a.nJ,
                                                       pooled[id1[pi / nv]],
                                                       pooled[id2[pi % nv]]))
                           .first;
                if (!worst || !spec.domain.leq(it->second, worst->first))
                  worst = std::make_pair(it->second, pi);
              }
            }
            Ext rhs = spec.domain.add(budgets[vi], a.w);
            if (!spec.domain.leq(worst->first, rhs)) {
              std::uint32_t pi = worst->second;
              rep.passed = false;
              rep.detail =
                  "adjacent pair escapes the lifting: carriers " +
                  std::to_string(nI) + "->" + std::to_string(nJ) +
                  ", c1=" + m.show(valsI[pi / nv]) + ", c2=" +
                  m.show(valsI[pi % nv]) + ", " + ext_str(worst->first) +
                  " > " + ext_str(rhs);
              return rep;
            }
          }
        }
      }
    }
  }
  return rep;
}

/// Fundamental-property check, direction (S), for dp and tv: every pair
/// outside the adjacency is excluded by the exact witness arrow.
inline PropertyReport check_fundamental_s_dist(
    const DivSpec<DistMonad>& spec, int max_carrier,
    const std::vector<Ext>& budgets) {
  PropertyReport rep;
  bool is_dp = spec.name == "dp";
  for (int nI = 1; nI <= max_carrier && rep.passed; ++nI) {
    auto valsI = spec.monad.enumerate(nI);
    for (const auto& gm : spec.grade_samples) {
      for (const auto& v : budgets) {
        for (const auto& c1 : valsI) {
          for (const auto& c2 : valsI) {
            Ext val = spec.evaluate(gm, nI, c1, c2);
            if (spec.domain.leq(val, v)) continue;  // inside: not this direction
            ++rep.cases;
            TestArrow<DistMonad> a = is_dp ? exact_witness_dp(gm.q, c1, c2)
                                           : exact_witness_tv(c1, c2);
            a.n = spec.grading.unit;
            const auto& m = spec.monad;
            Ext pushed = spec.evaluate(gm, a.nJ, m.bind(nI, a.nJ, a.k1, c1),
                                       m.bind(nI, a.nJ, a.k2, c2));
            if (!ext_identical(pushed, val) || spec.domain.leq(pushed, v)) {
              rep.passed = false;
              rep.detail = "witness fails to exclude: c1=" + m.show(c1) +
                           ", c2=" + m.show(c2) + ", value " + ext_str(val) +
                           ", pushed " + ext_str(pushed);
              return rep;
            }
          }
        }
      }
    }
  }
  return rep;
}

struct FundamentalReport {
  PropertyReport closure;     // inside pairs stay inside (direction C)
  PropertyReport separation;  // outside pairs are excluded (direction S)
  bool separation_exact = false;
};

/// Both directions of the fundamental property. Direction (S) is exact
/// for dp and tv via their witness arrows; for other specs the verdict
/// stays inconclusive (sampled arrows only over-approximate).
template <class M>
FundamentalReport check_fundamental_property(const DivSpec<M>& spec,
                                             const Endorel& E, int max_carrier,
                                             std::uint64_t cap = 2000,
                                             std::uint64_t seed = 0) {
  FundamentalReport rep;
  rep.closure = check_fundamental_c(spec, E, max_carrier, cap, seed);
  if constexpr (std::is_same_v<M, DistMonad>) {
    if (spec.name == "dp" || spec.name == "tv") {
      std::vector<Ext> budgets = {Ext::integer(0), Ext::rational(rat(1, 2)),
                                  Ext::integer(1)};
      rep.separation = check_fundamental_s_dist(spec, max_carrier, budgets);
      rep.separation_exact = true;
      return rep;
    }
  }
  rep.separation.exhaustive = false;
  rep.separation.detail = "inconclusive (sampled)";
  return rep;
}

/// Strength law: for (x1, x2) in E I and monadic c1, c2 over J,
/// eval(m, theta(x1, c1), theta(x2, c2)) <= eval(m, c1, c2).
/// Requires E I x E J <= E (I x J); guaranteed for Eq and Top, verified
/// for Custom relations.
template <class M>
PropertyReport check_strength_law(const DivSpec<M>& spec, const Endorel& E,
                                  int max_carrier) {
  PropertyReport rep;
  for (int nI = 1; nI <= max_carrier; ++nI)
    for (int nJ = 1; nJ <= max_carrier; ++nJ)
      if (!endorel_product_closed(E, nI, nJ)) {
        rep.passed = false;
        rep.detail = "precondition failed: E is not closed under products";
        return rep;
      }
  for (int nI = 1; nI <= max_carrier && rep.passed; ++nI) {
    for (int nJ = 1; nJ <= max_carrier && rep.passed; ++nJ) {
      auto valsJ = spec.monad.enumerate(nJ);
      for (auto [x1, x2] : E.pairs(nI)) {
        for (const auto& gm : spec.grade_samples) {
          for (const auto& c1 : valsJ) {
            for (const auto& c2 : valsJ) {
              ++rep.cases;
              Ext lhs = spec.evaluate(gm, nI * nJ,
                                      strength(spec.monad, nI, x1, nJ, c1),
                                      strength(spec.monad, nI, x2, nJ, c2));
              Ext rhs = spec.evaluate(gm, nJ, c1, c2);
              if (!spec.domain.leq(lhs, rhs)) {
                rep.passed = false;
                rep.detail = "strength law violated at carriers " +
                             std::to_string(nI) + "x" + std::to_string(nJ) +
                             ": " + ext_str(lhs) + " > " + ext_str(rhs);
                return rep;
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

/// Enrichment distance between Kleisli maps: sup over E I of the
/// divergence of the outputs.
template <class M>
Ext enrichment_distance(const DivSpec<M>& spec, const Endorel& E, int nI,
                        int nJ, const std::vector<typename M::Val>& f1,
                        const std::vector<typename M::Val>& f2) {
  std::vector<Ext> vals;
  for (auto [x1, x2] : E.pairs(nI))
    vals.push_back(spec.evaluate(spec.grading.unit, nJ, f1[x1], f2[x2]));
  return domain_sup(spec.domain, vals);
}

/// Enrichment inequalities for an ungraded divergence: the identity law
/// d(eta, eta) <= 0 and the composition law
/// d(g1# . f1, g2# . f2) <= d(g1, g2) + d(f1, f2), on seeded samples.
template <class M>
PropertyReport check_enrichment(const DivSpec<M>& spec, const Endorel& E,
                                int max_carrier, std::uint64_t samples = 200,
                                std::uint64_t seed = 0) {
  PropertyReport rep;
  rep.exhaustive = false;
  const M& m = spec.monad;
  // Identity law, exhaustive over carriers.
  for (int nI = 1; nI <= max_carrier; ++nI) {
    std::vector<typename M::Val> eta;
    for (int x = 0; x < nI; ++x) eta.push_back(m.unit(nI, x));
    ++rep.cases;
    Ext d = enrichment_distance(spec, E, nI, nI, eta, eta);
    if (!spec.domain.leq(d, spec.domain.zero)) {
      rep.passed = false;
      rep.detail = "identity law violated at carrier " + std::to_string(nI) +
                   ": d(eta, eta) = " + ext_str(d);
      return rep;
    }
  }
  // Composition law on sampled quadruples (f1, f2, g1, g2).
  Rng rng(seed);
  for (std::uint64_t k = 0; k < samples; ++k) {
    int nI = 1 + (int)rng.below(max_carrier);
    int nJ = 1 + (int)rng.below(max_carrier);
    int nK = 1 + (int)rng.below(max_carrier);
    auto valsJ = m.enumerate(nJ);
    auto valsK = m.enumerate(nK);
    auto sample = [&](int n, const auto& vals) {
      std::vector<typename M::Val> f;
      for (int x = 0; x < n; ++x) f.push_back(vals[rng.below(vals.size())]);
      return f;
    };
    auto f1 = sample(nI, valsJ), f2 = sample(nI, valsJ);
    auto g1 = sample(nJ, valsK), g2 = sample(nJ, valsK);
    std::vector<typename M::Val> h1, h2;  // g# . f
    for (int x = 0; x < nI; ++x) {
      h1.push_back(m.bind(nJ, nK, g1, f1[x]));
      h2.push_back(m.bind(nJ, nK, g2, f2[x]));
    }
    ++rep.cases;
    Ext lhs = enrichment_distance(spec, E, nI, nK, h1, h2);
    Ext rhs = spec.domain.add(enrichment_distance(spec, E, nJ, nK, g1, g2),
                              enrichment_distance(spec, E, nI, nJ, f1, f2));
    if (!spec.domain.leq(lhs, rhs)) {
      rep.passed = false;
      rep.detail = "composition law violated: " + ext_str(lhs) + " > " +
                   ext_str(rhs);
      return rep;
    }
  }
  return rep;
}

}  // namespace divlog
