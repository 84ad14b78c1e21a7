// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Congruent substitutive pseudometrics on free-term carriers and their
// correspondence with generated divergences on the term monad, at
// bounded term depth. All suprema range over depth-bounded term spaces,
// so every reported value is exact under the bound and a lower bound of
// the unbounded supremum.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "divlog/divergence.hpp"
#include "divlog/term.hpp"

namespace divlog {

/// Pseudometric candidate on terms over a fixed variable set, together
/// with the data needed to enumerate its domain.
struct CSEPMet {
  std::string name;
  TermSig sig;
  int nvars = 1;
  std::function<Ext(const Term&, const Term&)> d;
};

/// Discrete metric: 0 on equal terms, 1 otherwise. Congruent and
/// substitutive for every signature.
inline CSEPMet csepmet_discrete(const TermSig& sig, int nvars) {
  CSEPMet m;
  m.name = "discrete";
  m.sig = sig;
  m.nvars = nvars;
  m.d = [](const Term& a, const Term& b) {
    return Ext::integer(a == b ? 0 : 1);
  };
  return m;
}

/// Depth-weighted mutant: 0 on equal terms, otherwise 1 plus the larger
/// depth. Still reflexive and symmetric but not congruent: substituting
/// into a deep context inflates the distance past the per-variable sup.
inline CSEPMet csepmet_depth_weighted(const TermSig& sig, int nvars) {
  CSEPMet m;
  m.name = "depth-weighted";
  m.sig = sig;
  m.nvars = nvars;
  m.d = [](const Term& a, const Term& b) {
    if (a == b) return Ext::integer(0);
    return Ext::integer(1 + std::max(term_depth(a), term_depth(b)));
  };
  return m;
}

/// Component at the variable carrier of a divergence on the term monad.
inline CSEPMet metric_of_divergence(const DivSpec<TermMonad>& spec,
                                    const TermSig& sig, int nvars) {
  CSEPMet m;
  m.name = spec.name + "-component";
  m.sig = sig;
  m.nvars = nvars;
  m.d = [spec, nvars](const Term& a, const Term& b) {
    return spec.evaluate(spec.grading.unit, nvars, a, b);
  };
  return m;
}

/// Kleisli extension on terms is substitution of variables.
inline Term term_bind(const std::vector<Term>& subst, const Term& t) {
  return term_subst(subst, t);
}

struct GenResult {
  Ext value;
  bool exhaustive = true;
  std::uint64_t cases = 0;
};

/// Generated divergence component: sup over maps k from the carrier
/// into depth-bounded terms over the metric's variables of
/// d(k# t1, k# t2). Exhaustive when the map space fits under the cap;
/// otherwise a seeded sample, still a valid lower bound.
inline GenResult gen(const CSEPMet& m, int nI, const Term& t1, const Term& t2,
                     int depth, std::uint64_t cap = 20000,
                     std::uint64_t seed = 0) {
  GenResult res;
  res.value = Ext::integer(0);
  auto targets = term_enumerate(m.sig, m.nvars, depth);
  res.exhaustive = for_each_kleisli<Term>(
      nI, targets, cap, seed, [&](const std::vector<Term>& k) {
        ++res.cases;
        Ext v = m.d(term_bind(k, t1), term_bind(k, t2));
        res.value = ext_max(res.value, v);
        return true;
      });
  return res;
}

/// Pseudometric axioms plus the substitutivity and congruence clauses,
/// checked over depth-bounded enumerations. Each clause yields one
/// report; refutations carry an exact witness.
inline std::vector<AxiomReport> check_csepmet(const CSEPMet& m, int depth = 2,
                                              std::uint64_t cap = 2000,
                                              std::uint64_t seed = 0) {
  std::vector<AxiomReport> out;
  auto terms = term_enumerate(m.sig, m.nvars, depth);
  const auto n = terms.size();

  AxiomReport refl{"reflexivity", true, true, 0, "", {}, {}};
  for (const auto& t : terms) {
    ++refl.cases;
    Ext v = m.d(t, t);
    if (!ext_identical(v, Ext::integer(0))) {
      refl.passed = false;
      refl.witness = "d(t, t) = " + ext_str(v) + " at t = " + term_str(m.sig, t);
      break;
    }
  }
  out.push_back(refl);

  AxiomReport sym{"symmetry", true, true, 0, "", {}, {}};
  for (std::size_t i = 0; i < n && sym.passed; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ++sym.cases;
      if (!ext_identical(m.d(terms[i], terms[j]), m.d(terms[j], terms[i]))) {
        sym.passed = false;
        sym.witness = "asymmetric at (" + term_str(m.sig, terms[i]) + ", " +
                      term_str(m.sig, terms[j]) + ")";
        break;
      }
    }
  out.push_back(sym);

  AxiomReport tri{"triangle", true, true, 0, "", {}, {}};
  bool tri_exhaustive = n * n * n <= cap;
  tri.exhaustive = tri_exhaustive;
  Rng rng(seed);
  auto tri_check = [&](const Term& a, const Term& b, const Term& c) {
    ++tri.cases;
    Ext lhs = m.d(a, c);
    Ext rhs = ext_add(m.d(a, b), m.d(b, c));
    if (!ext_leq(lhs, rhs, 0.0)) {
      tri.passed = false;
      tri.witness = "d(" + term_str(m.sig, a) + ", " + term_str(m.sig, c) + ") = " +
                    ext_str(lhs) + " > " + ext_str(rhs);
      tri.lhs = lhs;
      tri.rhs = rhs;
      return false;
    }
    return true;
  };
  if (tri_exhaustive) {
    for (std::size_t i = 0; i < n && tri.passed; ++i)
      for (std::size_t j = 0; j < n && tri.passed; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!tri_check(terms[i], terms[j], terms[k])) break;
  } else {
    for (std::uint64_t s = 0; s < cap && tri.passed; ++s)
      tri_check(terms[rng.below(n)], terms[rng.below(n)], terms[rng.below(n)]);
  }
  out.push_back(tri);

  // Substitutivity: d(f# c1, f# c2) <= d(c1, c2) for every substitution
  // f of the variables by bounded-depth terms.
  AxiomReport sub{"substitutivity", true, true, 0, "", {}, {}};
  sub.exhaustive = for_each_kleisli<Term>(
      m.nvars, terms, cap, seed + 1, [&](const std::vector<Term>& f) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            ++sub.cases;
            Ext lhs = m.d(term_bind(f, terms[i]), term_bind(f, terms[j]));
            Ext rhs = m.d(terms[i], terms[j]);
            if (!ext_leq(lhs, rhs, 0.0)) {
              sub.passed = false;
              sub.witness = "substitution inflates d(" + term_str(m.sig, terms[i]) +
                            ", " + term_str(m.sig, terms[j]) + "): " + ext_str(lhs) +
                            " > " + ext_str(rhs);
              sub.lhs = lhs;
              sub.rhs = rhs;
              return false;
            }
          }
        return true;
      });
  out.push_back(sub);

  // Congruence: d(f1# c, f2# c) <= sup_i d(f1 i, f2 i) for maps from a
  // small carrier I into bounded-depth terms and c a term over I.
  AxiomReport con{"congruence", true, true, 0, "", {}, {}};
  for (int nI = 1; nI <= 2 && con.passed; ++nI) {
    auto termsI = term_enumerate(m.sig, nI, depth);
    std::vector<std::pair<Term, Term>> pairs;
    for (const auto& a : terms)
      for (const auto& b : terms) pairs.emplace_back(a, b);
    bool ex = for_each_kleisli<std::pair<Term, Term>>(
        nI, pairs, cap, seed + 2, [&](const std::vector<std::pair<Term, Term>>& f) {
          std::vector<Term> f1, f2;
          std::vector<Ext> bounds;
          for (const auto& [a, b] : f) {
            f1.push_back(a);
            f2.push_back(b);
            bounds.push_back(m.d(a, b));
          }
          Ext sup = Ext::integer(0);
          for (const auto& v : bounds) sup = ext_max(sup, v);
          for (const auto& c : termsI) {
            ++con.cases;
            Ext lhs = m.d(term_bind(f1, c), term_bind(f2, c));
            if (!ext_leq(lhs, sup, 0.0)) {
              con.passed = false;
              con.witness = "congruence fails at c = " + term_str(m.sig, c) +
                            ": " + ext_str(lhs) + " > " + ext_str(sup);
              con.lhs = lhs;
              con.rhs = sup;
              return false;
            }
          }
          return true;
        });
    con.exhaustive = con.exhaustive && ex;
  }
  out.push_back(con);
  return out;
}

/// Round trip at the variable carrier: taking k to be the unit shows
/// gen(d) at nvars restricted to the identity map recovers d, so the
/// bounded sup must agree with d on every enumerated pair.
inline bool check_gen_component_identity(const CSEPMet& m, int depth,
                                         std::uint64_t cap = 20000,
                                         std::uint64_t seed = 0) {
  auto terms = term_enumerate(m.sig, m.nvars, depth);
  for (const auto& a : terms)
    for (const auto& b : terms) {
      GenResult g = gen(m, m.nvars, a, b, depth, cap, seed);
      if (!ext_identical(g.value, m.d(a, b))) return false;
    }
  return true;
}

}  // namespace divlog
