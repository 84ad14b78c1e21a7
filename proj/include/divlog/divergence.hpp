// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// The divergence catalogue: exact evaluators for the shipped
// divergences on the finite monad instances, a generic DivSpec bundle,
// and the checker for the three divergence axioms (monotonicity,
// E-unit reflexivity, E-composability).

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divlog/cost.hpp"
#include "divlog/dc.hpp"
#include "divlog/dist.hpp"
#include "divlog/domains.hpp"
#include "divlog/endorel.hpp"
#include "divlog/fdiv.hpp"
#include "divlog/monads.hpp"
#include "divlog/state.hpp"

namespace divlog {

// ---------------------------------------------------------------------------
// Distribution divergences.
//
// The multiplicative grade `alpha` stands for exp(epsilon); composing
// grades multiplies the alphas, i.e. adds the epsilon budgets, and all
// arithmetic stays rational-exact.

/// sup_S (mu1(S) - alpha * mu2(S)), realized exactly by the set
/// S* = { x : mu1(x) > alpha * mu2(x) }.
inline Ext eval_dp(const Rat& alpha, const Dist& mu1, const Dist& mu2) {
  Rat acc(0);
  for (std::size_t i = 0; i < mu1.w.size(); ++i) {
    Rat d = mu1.w[i] - alpha * mu2.w[i];
    if (d > 0) acc += d;
  }
  return Ext::rational(acc);
}

/// The optimal event set S* above.
inline std::vector<int> dp_optimal_set(const Rat& alpha, const Dist& mu1,
                                       const Dist& mu2) {
  std::vector<int> s;
  for (std::size_t i = 0; i < mu1.w.size(); ++i)
    if (mu1.w[i] > alpha * mu2.w[i]) s.push_back((int)i);
  return s;
}

/// Brute force over all 2^n subsets; oracle for eval_dp.
inline Ext eval_dp_bruteforce(const Rat& alpha, const Dist& mu1, const Dist& mu2) {
  int n = (int)mu1.w.size();
  Rat best(0);
  for (int mask = 0; mask < (1 << n); ++mask) {
    Rat v(0);
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) v += mu1.w[i] - alpha * mu2.w[i];
    if (v > best) best = v;
  }
  return Ext::rational(best);
}

/// Pointwise variant: inf { mu1(J \ A) | forall S <= A. mu1(S) <= alpha*mu2(S) },
/// realized exactly by A* = { x : mu1(x) <= alpha * mu2(x) }.
inline Ext eval_pw(const Rat& alpha, const Dist& mu1, const Dist& mu2) {
  Rat acc(0);
  for (std::size_t i = 0; i < mu1.w.size(); ++i)
    if (mu1.w[i] > alpha * mu2.w[i]) acc += mu1.w[i];
  return Ext::rational(acc);
}

inline std::vector<int> pw_optimal_set(const Rat& alpha, const Dist& mu1,
                                       const Dist& mu2) {
  std::vector<int> a;
  for (std::size_t i = 0; i < mu1.w.size(); ++i)
    if (mu1.w[i] <= alpha * mu2.w[i]) a.push_back((int)i);
  return a;
}

inline Ext eval_tv(const Dist& mu1, const Dist& mu2) {
  return eval_fdiv(weight_tv(), mu1, mu2);
}

/// Closed-form evaluators for the entropic divergences (doubles).
inline Ext eval_kl(const Dist& mu1, const Dist& mu2) {
  return eval_fdiv(weight_kl(), mu1, mu2);
}
inline Ext eval_hd(const Dist& mu1, const Dist& mu2) {
  return eval_fdiv(weight_hd(), mu1, mu2);
}
inline Ext eval_chi2(const Dist& mu1, const Dist& mu2) {
  return eval_fdiv(weight_chi2(), mu1, mu2);
}

/// Renyi divergence of order a > 1:
/// 1/(a-1) * log sum_x mu2(x) (mu1(x)/mu2(x))^a.
inline Ext eval_renyi(double a, const Dist& mu1, const Dist& mu2) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu1.w.size(); ++i) {
    double p = static_cast<double>(mu1.w[i]);
    double q = static_cast<double>(mu2.w[i]);
    if (p == 0.0) continue;
    if (q == 0.0) return Ext::pos_inf();
    s += q * std::pow(p / q, a);
  }
  if (s <= 0.0) return Ext::pos_inf();
  return Ext::real(std::log(s) / (a - 1.0));
}

/// The default alpha grid {1 + 1/8, 1 + 2/8, ..., 16} for the
/// concentrated-DP suprema; results are grid lower bounds.
inline std::vector<double> default_alpha_grid() {
  std::vector<double> g;
  for (int k = 1; 1.0 + k / 8.0 <= 16.0; ++k) g.push_back(1.0 + k / 8.0);
  return g;
}

/// Zero-concentrated variant: sup_{a>1} (Renyi_a - m)/a, on a grid
/// (grid lower bound of the true supremum).
inline Ext eval_zcdp(double m, const Dist& mu1, const Dist& mu2,
                     const std::vector<double>& grid) {
  Ext best = Ext::integer(0);
  for (double a : grid) {
    Ext r = eval_renyi(a, mu1, mu2);
    if (r.kind == ExtKind::PosInf) return Ext::pos_inf();
    best = ext_max(best, Ext::real((r.approx() - m) / a), 0.0);
  }
  return best;
}

/// Truncated variant: sup_{1<a<w} Renyi_a / a on the grid.
inline Ext eval_tcdp(double wbound, const Dist& mu1, const Dist& mu2,
                     const std::vector<double>& grid) {
  Ext best = Ext::integer(0);
  for (double a : grid) {
    if (!(a < wbound)) continue;
    Ext r = eval_renyi(a, mu1, mu2);
    if (r.kind == ExtKind::PosInf) return Ext::pos_inf();
    best = ext_max(best, Ext::real(r.approx() / a), 0.0);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Cost divergences.

/// C((i,x),(j,y)) = |i - j| (cost difference, values ignored).
inline Ext eval_cost_c(const CostComp& a, const CostComp& b) {
  Rat d = a.cost - b.cost;
  if (d < 0) d = -d;
  return Ext::rational(d);
}

/// C'((i,x),(j,y)) = |i - j| if x = y, infinity otherwise.
inline Ext eval_cost_cprime(const CostComp& a, const CostComp& b) {
  if (a.value != b.value) return Ext::pos_inf();
  return eval_cost_c(a, b);
}

/// NC(A,B) = sup over pairs of entries of the cost difference
/// (0 when either side is empty, since the sup is over an empty set).
inline Ext eval_nc(const CostSet& A, const CostSet& B) {
  if (A.entries.empty() || B.entries.empty()) return Ext::integer(0);
  Rat best(0);
  for (const auto& a : A.entries)
    for (const auto& b : B.entries) {
      Rat d = a.cost - b.cost;
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
  return Ext::rational(best);
}

/// NCI(A,B) = sup_{(i,x) in A, (j,y) in B} i - j; -inf on empty inputs,
/// and h_A - l_B (highest cost of A minus lowest of B) otherwise.
inline Ext eval_nci(const CostSet& A, const CostSet& B) {
  if (A.entries.empty() || B.entries.empty()) return Ext::neg_inf();
  Rat hA = A.entries.begin()->cost, lB = B.entries.begin()->cost;
  for (const auto& a : A.entries) hA = std::max(hA, a.cost);
  for (const auto& b : B.entries) lB = std::min(lB, b.cost);
  return Ext::rational(hA - lB);
}

// ---------------------------------------------------------------------------
// State-transformer divergences. d_S is a rational metric table on the
// state space.

using StateMetric = std::vector<std::vector<Rat>>;  // d_S[s1][s2]

/// Lipschitz bound sup_{s1,s2} d(out1, out2) / d(s1, s2), with the
/// convention 0/0 = 1 (so identical behaviour on identical states has
/// divergence 1, the unit of the multiplicative domain).
inline Ext eval_lip(const StateMetric& dS, const StateFn& f1, const StateFn& f2) {
  Ext best = Ext::rational(Rat(0));
  int nS = (int)f1.table.size();
  for (int s1 = 0; s1 < nS; ++s1)
    for (int s2 = 0; s2 < nS; ++s2) {
      const Rat& num = dS[f1.table[s1].second][f2.table[s2].second];
      const Rat& den = dS[s1][s2];
      Ext ratio;
      if (den == 0)
        ratio = (num == 0) ? Ext::integer(1) : Ext::pos_inf();
      else
        ratio = Ext::rational(num / den);
      best = ext_max(best, ratio, 0.0);
    }
  return best;
}

/// Metric divergence: sup_s d(out-state1, out-state2) provided the two
/// transformers return equal values and are nonexpansive on states;
/// infinity otherwise.
inline Ext eval_met(const StateMetric& dS, const StateFn& f1, const StateFn& f2) {
  int nS = (int)f1.table.size();
  for (int s = 0; s < nS; ++s)
    if (f1.table[s].first != f2.table[s].first) return Ext::pos_inf();
  auto nonexpansive = [&](const StateFn& f) {
    for (int s1 = 0; s1 < nS; ++s1)
      for (int s2 = 0; s2 < nS; ++s2)
        if (dS[f.table[s1].second][f.table[s2].second] > dS[s1][s2]) return false;
    return true;
  };
  if (!nonexpansive(f1) || !nonexpansive(f2)) return Ext::pos_inf();
  Rat best(0);
  for (int s = 0; s < nS; ++s)
    best = std::max(best, dS[f1.table[s].second][f2.table[s].second]);
  return Ext::rational(best);
}

// ---------------------------------------------------------------------------
// Divergences on the cost-and-distribution monad D(Q x (-)).

/// Joint total variation over (cost, value) pairs.
inline Ext eval_dc_tv(const DC& c1, const DC& c2) {
  Rat acc(0);
  auto it1 = c1.w.begin();
  auto it2 = c2.w.begin();
  while (it1 != c1.w.end() || it2 != c2.w.end()) {
    if (it2 == c2.w.end() || (it1 != c1.w.end() && it1->first < it2->first)) {
      acc += it1->second;
      ++it1;
    } else if (it1 == c1.w.end() || it2->first < it1->first) {
      acc += it2->second;
      ++it2;
    } else {
      Rat d = it1->second - it2->second;
      acc += d < 0 ? -d : d;
      ++it1;
      ++it2;
    }
  }
  return Ext::rational(acc / 2);
}

/// DP divergence on the value-and-cost joint distribution.
inline Ext eval_dc_dp(const Rat& alpha, const DC& c1, const DC& c2) {
  Rat acc(0);
  for (const auto& [k, p] : c1.w) {
    auto it = c2.w.find(k);
    Rat q = it == c2.w.end() ? Rat(0) : it->second;
    Rat d = p - alpha * q;
    if (d > 0) acc += d;
  }
  return Ext::rational(acc);
}

/// Total variation between the cost marginals.
inline Ext eval_cost_marginal_tv(const DC& c1, const DC& c2) {
  auto m1 = dc_cost_marginal(c1);
  auto m2 = dc_cost_marginal(c2);
  Rat acc(0);
  for (const auto& [k, p] : m1) {
    auto it = m2.find(k);
    Rat q = it == m2.end() ? Rat(0) : it->second;
    Rat d = p - q;
    acc += d < 0 ? -d : d;
  }
  for (const auto& [k, q] : m2)
    if (m1.find(k) == m1.end()) acc += q;
  return Ext::rational(acc / 2);
}

/// Cost-combined divergence: the inner divergence (here TV) of the cost
/// marginals, provided the joint divergence is bounded by it; otherwise
/// the top of the divergence domain.
inline Ext eval_costtv(const DC& c1, const DC& c2) {
  Ext marg = eval_cost_marginal_tv(c1, c2);
  Ext joint = eval_dc_tv(c1, c2);
  if (!ext_leq(joint, marg, 0.0)) return Ext::pos_inf();
  return marg;
}

// ---------------------------------------------------------------------------
// DivSpec: a catalogue entry bundling a monad instance with grading,
// domain, endorelation and evaluator.

struct GradeOutsideMonoid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class M>
struct DivSpec {
  std::string name;
  M monad;
  GradingMonoid grading;
  DivergenceDomain domain;
  Endorel endorel;  // the relation the divergence is relative to
  // evaluate(grade, carrier size, c1, c2)
  std::function<Ext(const Ext&, int, const typename M::Val&,
                    const typename M::Val&)>
      evaluate;
  std::vector<Ext> grade_samples;  // schedule for axiom checks
};

inline DivSpec<DistMonad> spec_dp(int denom = 4, bool sub = false) {
  DivSpec<DistMonad> s;
  s.name = "dp";
  s.monad = DistMonad{denom, sub};
  s.grading = grading_multiplicative();
  s.domain = domain_Rplus();
  s.endorel = endorel_eq();
  s.evaluate = [](const Ext& m, int, const Dist& a, const Dist& b) {
    if (!m.is_rational() || m.q < 1)
      throw GradeOutsideMonoid("dp grade must be a rational alpha >= 1");
    return eval_dp(m.q, a, b);
  };
  s.grade_samples = {Ext::integer(1), Ext::integer(2)};
  return s;
}

inline DivSpec<DistMonad> spec_pw(int denom = 4, bool sub = false) {
  DivSpec<DistMonad> s = spec_dp(denom, sub);
  s.name = "pw";
  s.evaluate = [](const Ext& m, int, const Dist& a, const Dist& b) {
    if (!m.is_rational() || m.q < 1)
      throw GradeOutsideMonoid("pw grade must be a rational alpha >= 1");
    return eval_pw(m.q, a, b);
  };
  return s;
}

inline DivSpec<DistMonad> spec_fdiv(const WeightFunction& w, int denom = 4,
                                    bool sub = false) {
  DivSpec<DistMonad> s;
  s.name = w.name;
  s.monad = DistMonad{denom, sub};
  s.grading = grading_trivial();
  s.domain = w.gamma == 0 ? domain_Rplus() : domain_Rgamma(w.gamma);
  s.endorel = endorel_eq();
  s.evaluate = [w](const Ext&, int, const Dist& a, const Dist& b) {
    return eval_fdiv(w, a, b);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

inline DivSpec<DistMonad> spec_tv(int denom = 4, bool sub = false) {
  return spec_fdiv(weight_tv(), denom, sub);
}

inline DivSpec<DistMonad> spec_renyi(double a, int denom = 4) {
  DivSpec<DistMonad> s;
  s.name = "renyi";
  s.monad = DistMonad{denom, false};
  s.grading = grading_trivial();
  s.domain = domain_Rplus();
  s.endorel = endorel_eq();
  s.evaluate = [a](const Ext&, int, const Dist& x, const Dist& y) {
    return eval_renyi(a, x, y);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

inline DivSpec<DistMonad> spec_zcdp(int denom = 4) {
  DivSpec<DistMonad> s;
  s.name = "zcdp";
  s.monad = DistMonad{denom, false};
  s.grading = grading_additive();
  s.domain = domain_Rplus();
  s.endorel = endorel_eq();
  auto grid = default_alpha_grid();
  s.evaluate = [grid](const Ext& m, int, const Dist& x, const Dist& y) {
    return eval_zcdp(m.approx(), x, y, grid);
  };
  s.grade_samples = {Ext::integer(0), Ext::rational(rat(1, 2))};
  return s;
}

inline DivSpec<DistMonad> spec_tcdp(double wbound, int denom = 4) {
  DivSpec<DistMonad> s;
  s.name = "tcdp";
  s.monad = DistMonad{denom, false};
  s.grading = grading_trivial();
  s.domain = domain_Rplus();
  s.endorel = endorel_eq();
  auto grid = default_alpha_grid();
  s.evaluate = [wbound, grid](const Ext&, int, const Dist& x, const Dist& y) {
    return eval_tcdp(wbound, x, y, grid);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

inline DivSpec<CostMonad> spec_c(int cost_bound = 3) {
  DivSpec<CostMonad> s;
  s.name = "c";
  s.monad = CostMonad{cost_bound};
  s.grading = grading_trivial();
  s.domain = domain_N();
  s.endorel = endorel_top();
  s.evaluate = [](const Ext&, int, const CostComp& a, const CostComp& b) {
    return eval_cost_c(a, b);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

inline DivSpec<CostMonad> spec_cprime(int cost_bound = 3) {
  DivSpec<CostMonad> s = spec_c(cost_bound);
  s.name = "cprime";
  s.endorel = endorel_eq();
  s.evaluate = [](const Ext&, int, const CostComp& a, const CostComp& b) {
    return eval_cost_cprime(a, b);
  };
  return s;
}

inline DivSpec<CostSetMonad> spec_nc(int cost_bound = 3, int max_size = 2) {
  DivSpec<CostSetMonad> s;
  s.name = "nc";
  s.monad = CostSetMonad{cost_bound, max_size};
  s.grading = grading_trivial();
  s.domain = domain_N();
  s.endorel = endorel_top();
  s.evaluate = [](const Ext&, int, const CostSet& a, const CostSet& b) {
    return eval_nc(a, b);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

inline DivSpec<CostSetMonad> spec_nci(int cost_bound = 3, int max_size = 2) {
  DivSpec<CostSetMonad> s;
  s.name = "nci";
  s.monad = CostSetMonad{cost_bound, max_size};
  s.grading = grading_trivial();
  s.domain = domain_Z();
  s.endorel = endorel_top();
  s.evaluate = [](const Ext&, int, const CostSet& a, const CostSet& b) {
    return eval_nci(a, b);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

inline DivSpec<StateMonad> spec_lip(const StateMetric& dS) {
  DivSpec<StateMonad> s;
  s.name = "lip";
  s.monad = StateMonad{(int)dS.size()};
  s.grading = grading_trivial();
  s.domain = domain_Rtimes();
  s.endorel = endorel_top();
  s.evaluate = [dS](const Ext&, int, const StateFn& a, const StateFn& b) {
    return eval_lip(dS, a, b);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

inline DivSpec<StateMonad> spec_met(const StateMetric& dS) {
  DivSpec<StateMonad> s;
  s.name = "met";
  s.monad = StateMonad{(int)dS.size()};
  s.grading = grading_trivial();
  s.domain = domain_Rplus();
  s.endorel = endorel_eq();
  s.evaluate = [dS](const Ext&, int, const StateFn& a, const StateFn& b) {
    return eval_met(dS, a, b);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

inline DivSpec<DCMonad> spec_costtv(int denom = 2, int cost_bound = 1) {
  DivSpec<DCMonad> s;
  s.name = "costtv";
  s.monad = DCMonad{denom, cost_bound};
  s.grading = grading_trivial();
  s.domain = domain_Rplus();
  s.endorel = endorel_eq();
  s.evaluate = [](const Ext&, int, const DC& a, const DC& b) {
    return eval_costtv(a, b);
  };
  s.grade_samples = {Ext::integer(1)};
  return s;
}

// ---------------------------------------------------------------------------
// Axiom checking.

struct AxiomReport {
  std::string axiom;
  bool passed = true;
  bool exhaustive = true;
  std::uint64_t cases = 0;
  std::string witness;  // human-readable description of the refutation
  // Replayable witness payload: both sides of the failed inequality.
  std::optional<Ext> lhs, rhs;
};

struct CheckConfig {
  int max_carrier = 3;
  std::uint64_t kleisli_cap = 300;  // per-carrier cap on Kleisli maps
  std::uint64_t pair_cap = 100000;  // cap on checked tuples per axiom
  std::uint64_t seed = 0;
};

/// Checks Monotonicity, E-unit reflexivity and E-composability of the
/// spec against endorelation E. Unit reflexivity is exact and
/// exhaustive; the other two enumerate values and Kleisli maps,
/// exhaustively when the space fits under the caps, otherwise with
/// deterministic seeded sampling (which can refute but not prove).
template <class M>
std::vector<AxiomReport> check_axioms(const DivSpec<M>& spec, const Endorel& E,
                                      const CheckConfig& cfg = {}) {
  using Val = typename M::Val;
  const M& m = spec.monad;
  std::vector<AxiomReport> out;

  // --- Monotonicity: m1 <= m2 implies eval(m2) <= eval(m1).
  {
    AxiomReport rep;
    rep.axiom = "monotonicity";
    for (int nI = 1; nI <= cfg.max_carrier && rep.passed; ++nI) {
      auto vals = m.enumerate(nI);
      for (const auto& g1 : spec.grade_samples) {
        for (const auto& g2 : spec.grade_samples) {
          if (!spec.grading.leq(g1, g2)) continue;
          for (const auto& c1 : vals) {
            for (const auto& c2 : vals) {
              if (rep.cases >= cfg.pair_cap) { rep.exhaustive = false; break; }
              ++rep.cases;
              Ext hi = spec.evaluate(g1, nI, c1, c2);
              Ext lo = spec.evaluate(g2, nI, c1, c2);
              if (!spec.domain.leq(lo, hi)) {
                rep.passed = false;
                rep.lhs = lo;
                rep.rhs = hi;
                rep.witness = "grades " + ext_str(g1) + " <= " + ext_str(g2) +
                              " but values " + ext_str(lo) + " > " + ext_str(hi);
                break;
              }
            }
            if (!rep.passed) break;
          }
          if (!rep.passed) break;
        }
        if (!rep.passed) break;
      }
    }
    out.push_back(rep);
  }

  // --- E-unit reflexivity: eval(unit grade, eta x1, eta x2) <= 0 on E I.
  {
    AxiomReport rep;
    rep.axiom = "unit-reflexivity";
    for (int nI = 1; nI <= cfg.max_carrier && rep.passed; ++nI) {
      for (auto [x1, x2] : E.pairs(nI)) {
        ++rep.cases;
        Ext v = spec.evaluate(spec.grading.unit, nI, m.unit(nI, x1),
                              m.unit(nI, x2));
        if (!spec.domain.leq(v, spec.domain.zero)) {
          rep.passed = false;
          rep.lhs = v;
          rep.rhs = spec.domain.zero;
          rep.witness = "carrier " + std::to_string(nI) + ", pair (" +
                        std::to_string(x1) + "," + std::to_string(x2) +
                        "): unit divergence " + ext_str(v);
          break;
        }
      }
    }
    out.push_back(rep);
  }

  // --- E-composability.
  {
    AxiomReport rep;
    rep.axiom = "composability";
    for (int nI = 1; nI <= cfg.max_carrier && rep.passed; ++nI) {
      for (int nJ = 1; nJ <= cfg.max_carrier && rep.passed; ++nJ) {
        auto valsI = m.enumerate(nI);
        auto valsJ = m.enumerate(nJ);
        auto epairs = E.pairs(nI);
        // Enumerate (or sample) pairs of Kleisli maps jointly: a single
        // map into T J x T J per element doubles as the pair (f1, f2).
        std::vector<std::pair<Val, Val>> codomain;
        for (const auto& a : valsJ)
          for (const auto& b : valsJ) codomain.emplace_back(a, b);
        // Quantities that do not depend on the Kleisli pair are hoisted
        // out of the (large) map enumeration: the first-stage
        // divergences per grade and the grade products.
        const std::size_t nv = valsI.size();
        const std::size_t ng = spec.grade_samples.size();
        std::vector<std::vector<Ext>> base(ng);
        for (std::size_t gi = 0; gi < ng; ++gi) {
          base[gi].reserve(nv * nv);
          for (const auto& c1 : valsI)
            for (const auto& c2 : valsI)
              base[gi].push_back(
                  spec.evaluate(spec.grade_samples[gi], nI, c1, c2));
        }
        std::vector<Ext> gprod(ng * ng);
        for (std::size_t gi = 0; gi < ng; ++gi)
          for (std::size_t gj = 0; gj < ng; ++gj)
            gprod[gi * ng + gj] =
                spec.grading.mul(spec.grade_samples[gi], spec.grade_samples[gj]);
        std::vector<Val> f1(nI), f2(nI), push1(nv), push2(nv);
        std::vector<Ext> sup_by_gn(ng);
        bool ex = for_each_kleisli<std::pair<Val, Val>>(
            nI, codomain, cfg.kleisli_cap, cfg.seed,
            [&](const std::vector<std::pair<Val, Val>>& fpair) {
              for (int x = 0; x < nI; ++x) {
                f1[x] = fpair[x].first;
                f2[x] = fpair[x].second;
              }
              // Pushforwards of every first-stage computation, and the
              // sup over E I per second grade, computed once per map.
              for (std::size_t ci = 0; ci < nv; ++ci) {
                push1[ci] = m.bind(nI, nJ, f1, valsI[ci]);
                push2[ci] = m.bind(nI, nJ, f2, valsI[ci]);
              }
              for (std::size_t gj = 0; gj < ng; ++gj) {
                std::vector<Ext> sups;
                for (auto [x1, x2] : epairs)
                  sups.push_back(
                      spec.evaluate(spec.grade_samples[gj], nJ, f1[x1], f2[x2]));
                sup_by_gn[gj] = domain_sup(spec.domain, sups);
              }
              for (std::size_t gi = 0; gi < ng; ++gi) {
                for (std::size_t gj = 0; gj < ng; ++gj) {
                  const Ext& sup = sup_by_gn[gj];
                  for (std::size_t c1i = 0; c1i < nv; ++c1i) {
                    for (std::size_t c2i = 0; c2i < nv; ++c2i) {
                      if (rep.cases >= cfg.pair_cap) {
                        rep.exhaustive = false;
                        return false;
                      }
                      ++rep.cases;
                      Ext lhs = spec.evaluate(gprod[gi * ng + gj], nJ,
                                              push1[c1i], push2[c2i]);
                      Ext rhs =
                          spec.domain.add(base[gi][c1i * nv + c2i], sup);
                      if (!spec.domain.leq(lhs, rhs)) {
                        rep.passed = false;
                        rep.lhs = lhs;
                        rep.rhs = rhs;
                        rep.witness =
                            "carriers " + std::to_string(nI) + "->" +
                            std::to_string(nJ) + ", c1=" + m.show(valsI[c1i]) +
                            ", c2=" + m.show(valsI[c2i]) + ", f1=[" +
                            [&] {
                              std::string s;
                              for (int x = 0; x < nI; ++x)
                                s += (x ? "; " : "") + m.show(f1[x]);
                              return s;
                            }() +
                            "], f2=[" +
                            [&] {
                              std::string s;
                              for (int x = 0; x < nI; ++x)
                                s += (x ? "; " : "") + m.show(f2[x]);
                              return s;
                            }() +
                            "]: " + ext_str(lhs) + " > " + ext_str(rhs);
                        return false;
                      }
                    }
                  }
                }
              }
              return true;
            });
        rep.exhaustive = rep.exhaustive && ex;
      }
    }
    out.push_back(rep);
  }
  return out;
}

}  // namespace divlog
