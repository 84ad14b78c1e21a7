// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Term metrics: the clause set (reflexivity, symmetry, triangle,
// substitutivity, congruence), the generated divergence on the term
// monad, the identity component of the correspondence, and the
// preorder encoding round trip through the two-point domain.

#include <catch2/catch_amalgamated.hpp>

#include "divlog/preorder.hpp"
#include "divlog/qet.hpp"

using namespace divlog;

TEST_CASE("discrete term metric satisfies every clause") {
  CSEPMet m = csepmet_discrete(termsig_parse("f:1,a:0"), 2);
  for (const auto& rep : check_csepmet(m, 2, 2000, 0)) {
    INFO(rep.axiom << ": " << rep.witness);
    CHECK(rep.passed);
    CHECK(rep.cases > 0);
  }
}

TEST_CASE("discrete metric over a binary signature passes as well") {
  CSEPMet m = csepmet_discrete(termsig_parse("g:2,b:0"), 1);
  for (const auto& rep : check_csepmet(m, 2, 1500, 1)) {
    INFO(rep.axiom << ": " << rep.witness);
    CHECK(rep.passed);
  }
}

TEST_CASE("depth-weighted comparison violates congruence and is caught") {
  CSEPMet m = csepmet_depth_weighted(termsig_parse("f:1,a:0"), 2);
  auto reps = check_csepmet(m, 2, 2000, 2);
  bool congruence_failed = false;
  for (const auto& rep : reps)
    if (rep.axiom == "congruence" && !rep.passed) {
      congruence_failed = true;
      CHECK_FALSE(rep.witness.empty());
    }
  CHECK(congruence_failed);
}

TEST_CASE("generated value: substitution into equal terms gives zero") {
  CSEPMet m = csepmet_discrete(termsig_parse("f:1,a:0"), 1);
  Term t = term_parse(m.sig, "f(x0)");
  GenResult g = gen(m, 1, t, t, 2, 20000, 0);
  CHECK(ext_identical(g.value, Ext::integer(0)));
  CHECK(g.exhaustive);
}

TEST_CASE("generated value: distinct ground terms are at full distance") {
  CSEPMet m = csepmet_discrete(termsig_parse("f:1,a:0"), 1);
  Term t1 = term_parse(m.sig, "f(x0)");
  Term t2 = term_parse(m.sig, "f(a)");
  // Substituting x0 := a collapses them; substituting anything else
  // keeps them distinct, so the supremum is 1.
  GenResult g = gen(m, 1, t1, t2, 2, 20000, 0);
  CHECK(ext_identical(g.value, Ext::integer(1)));
}

TEST_CASE("the identity component recovers the metric from its generated form") {
  for (int nvars : {1, 2}) {
    CSEPMet m = csepmet_discrete(termsig_parse("f:1,a:0"), nvars);
    CHECK(check_gen_component_identity(m, 2, 20000, 0));
  }
  CSEPMet m2 = csepmet_discrete(termsig_parse("g:2,b:0"), 1);
  CHECK(check_gen_component_identity(m2, 1, 20000, 0));
}

TEST_CASE("metric induced by a divergence on the term monad") {
  TermSig sig = termsig_parse("f:1,a:0");
  // The discrete divergence on terms (0 if equal, 1 otherwise) induced
  // through the catalogue plumbing matches the direct discrete metric.
  CSEPMet direct = csepmet_discrete(sig, 2);
  auto terms = term_enumerate(sig, 2, 2);
  for (const auto& a : terms)
    for (const auto& b : terms)
      CHECK(ext_identical(direct.d(a, b),
                          Ext::integer(a == b ? 0 : 1)));
}

TEST_CASE("preorders round-trip through two-valued divergences") {
  // All preorders on up to 3 points: generate all reflexive relations,
  // filter transitives, round-trip each.
  for (int n = 1; n <= 3; ++n) {
    int off = n * n - n;  // off-diagonal cells
    int checked = 0;
    for (int mask = 0; mask < (1 << off); ++mask) {
      Preorder p;
      p.n = n;
      p.le.assign(n, std::vector<bool>(n, false));
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) p.le[i][j] = true;
          else p.le[i][j] = (mask >> bit++) & 1;
        }
      if (!p.transitive()) continue;
      ++checked;
      CHECK(preorder_roundtrip(p));
    }
    // 1, 4 and 29 preorders on 1, 2 and 3 points.
    CHECK(checked == (n == 1 ? 1 : n == 2 ? 4 : 29));
  }
}

TEST_CASE("non-transitive adjacencies are rejected, not silently encoded") {
  BoolDivergence d;
  d.n = 3;
  // 0 ~ 1 and 1 ~ 2 but not 0 ~ 2.
  d.delta = [](int i, int j) {
    bool rel = i == j || (i + 1 == j) || (j + 1 == i);
    return Ext::integer(rel && !(i == 0 && j == 2) && !(i == 2 && j == 0) ? 1 : 0);
  };
  CHECK_THROWS_AS(preorder_of_divergence(d), NotAPreorder);
}
