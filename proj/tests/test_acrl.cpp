// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Relational judgments on cost-weighted computations: base relations,
// preconditions, the semantic judgment oracle, exact effectful-
// operation axioms, and the derivation-script checker (axiom, ret,
// bind, equiv, conseq, weaken, semantic).

#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "divlog/acrl.hpp"

using namespace divlog;
using nlohmann::json;

namespace {

const char* kSigJson = R"json({
  "bases": [{"name": "R", "size": 5, "low": 0, "arith": "mod"}],
  "eops": [
    {"name": "geo", "kind": "geo", "base": "R", "ratio": "1/2", "fold": "cyclic"},
    {"name": "tick", "kind": "tick", "base": "R"},
    {"name": "ntick2", "kind": "binom_tick", "base": "R", "n": 64, "scale": "1/2"}
  ]
})json";

Signature test_sig() { return signature_from_json(json::parse(kSigJson)); }

json load_scenario(const std::string& name) {
  std::ifstream in(std::string(DIVLOG_SCENARIO_DIR) + "/" + name);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

}  // namespace

TEST_CASE("base relations enumerate the advertised pairs") {
  Signature sig = test_sig();
  TypeExpr R = TypeExpr::mk_base("R");
  BaseRel diff1{BaseRel::Diff, 1, {}};
  BaseRel succ1{BaseRel::Succ, 1, {}};
  // diff: |b - a| <= 1 on raw values; succ wraps on modular carriers.
  CHECK(baserel_mem(sig, R, diff1, 0, 1));
  CHECK(baserel_mem(sig, R, diff1, 1, 0));
  CHECK_FALSE(baserel_mem(sig, R, diff1, 0, 2));
  CHECK_FALSE(baserel_mem(sig, R, diff1, 4, 0));  // no wrap for diff
  CHECK(baserel_mem(sig, R, succ1, 0, 1));
  CHECK_FALSE(baserel_mem(sig, R, succ1, 1, 0));
  CHECK(baserel_mem(sig, R, succ1, 4, 0));  // wraps
  CHECK(baserel_pairs(sig, R, succ1).size() == 5);
  CHECK(baserel_pairs(sig, R, diff1).size() == 13);
  // succ is a bijection graph; diff is not.
  CHECK(baserel_bijection_inverse(sig, R, succ1).has_value());
  CHECK_FALSE(baserel_bijection_inverse(sig, R, diff1).has_value());
}

TEST_CASE("the geometric mechanism is private at multiplier 2 over adjacency") {
  Signature sig = test_sig();
  DCDivergence dp = dcdiv_by_name("dp");
  BaseRel diff1{BaseRel::Diff, 1, {}};
  BaseRel eq{BaseRel::Eq, 0, {}};
  // Ratio 1/2 means adjacent centers have pointwise density ratio <= 2,
  // so the excess-mass budget at grade 2 is exactly zero.
  AxiomResult r = axiom_effectful(sig, dp, "geo", diff1, Ext::integer(2), eq);
  CHECK(ext_identical(r.v, Ext::integer(0)));
  CHECK(r.cases == 13);
  // At a tighter multiplier the budget becomes positive.
  AxiomResult tight =
      axiom_effectful(sig, dp, "geo", diff1, Ext::rational(rat(3, 2)), eq);
  CHECK_FALSE(ext_identical(tight.v, Ext::integer(0)));
}

TEST_CASE("sliding the geometric noise along the successor costs nothing") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  BaseRel succ1{BaseRel::Succ, 1, {}};
  AxiomResult r =
      axiom_effectful(sig, ctv, "geo", succ1, ctv.grading.unit, succ1);
  CHECK(ext_identical(r.v, Ext::integer(0)));
}

TEST_CASE("tick and noisy tick cost gaps over unit adjacency") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  BaseRel diff1{BaseRel::Diff, 1, {}};
  BaseRel eq{BaseRel::Eq, 0, {}};
  AxiomResult t = axiom_effectful(sig, ctv, "tick", diff1, ctv.grading.unit, eq);
  CHECK(ext_identical(t.v, Ext::integer(1)));
  // Centered binomial, 64 trials, step 1/2: shifting the center by one
  // displaces two half-steps of mass; the gap is the exact central sum.
  AxiomResult n =
      axiom_effectful(sig, ctv, "ntick2", diff1, ctv.grading.unit, eq);
  Rat expect = rat_parse("1804857108504066435/9223372036854775808");
  CHECK(ext_identical(n.v, Ext::rational(expect)));
  CHECK(ext_leq(n.v, Ext::rational(rat(1, 5)), 0.0));
}

TEST_CASE("semantic judgment oracle: holds, fails with witness, inconclusive") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  json base = json::parse(R"json({
    "pre": [{"name": "x", "type": "R", "rel": {"kind": "pairs", "list": [[0, 1]]}}],
    "left": "(tick x)",
    "right": "(tick x)",
    "budget": "1",
    "post": {"kind": "eq"}
  })json");
  Judgment jd = judgment_from_json(sig, base, ctv);
  JudgeResult ok = judge_semantic(sig, ctv, jd);
  CHECK(ok.verdict == Verdict::Holds);
  CHECK(ok.cases == 1);

  json tight = base;
  tight["budget"] = "1/2";
  Judgment jd2 = judgment_from_json(sig, tight, ctv);
  JudgeResult bad = judge_semantic(sig, ctv, jd2);
  CHECK(bad.verdict == Verdict::Fails);
  CHECK(bad.witness.find("x<-0") != std::string::npos);
  CHECK(ext_identical(bad.lhs, Ext::integer(1)));

  // A post relation that is not a bijection graph cannot be decided by
  // relabeling; the oracle says so instead of guessing.
  json vague = base;
  vague["post"] = json{{"kind", "true"}};
  vague["left"] = "(geo x)";
  vague["right"] = "(geo x)";
  Judgment jd3 = judgment_from_json(sig, vague, ctv);
  CHECK(judge_semantic(sig, ctv, jd3).verdict == Verdict::Inconclusive);
}

TEST_CASE("judgment sides must be computations of one common type") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  json j = json::parse(R"json({
    "pre": [{"name": "x", "type": "R", "rel": {"kind": "eq"}}],
    "left": "(tick x)",
    "right": "(ret x)",
    "budget": "0"
  })json");
  Judgment jd = judgment_from_json(sig, j, ctv);
  CHECK_THROWS_AS(judgment_typecheck(sig, jd), TypeError);
}

TEST_CASE("derivation: ret rule accepts related returns and rejects others") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  json good = json::parse(R"json([
    {"rule": "ret",
     "pre": [{"name": "x", "type": "R", "rel": {"kind": "succ", "r": 1}}],
     "left": "(ret x)", "right": "(ret x)",
     "budget": "0", "post": {"kind": "succ", "r": 1}}
  ])json");
  CHECK(derive(sig, ctv, good).valid);

  json bad = good;
  bad[0]["post"] = json{{"kind", "eq"}};
  DeriveResult r = derive(sig, ctv, bad);
  CHECK_FALSE(r.valid);
  CHECK(r.failed_step == 0);
  CHECK(r.reason.find("postrelation") != std::string::npos);

  json nonzero = good;
  nonzero[0]["budget"] = "1";
  CHECK_FALSE(derive(sig, ctv, nonzero).valid);
}

TEST_CASE("derivation: axiom budgets are recomputed, not trusted") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  json steps = json::parse(R"json([
    {"rule": "axiom", "op": "tick", "var": "x",
     "pre": {"kind": "diff", "r": 1}, "post": {"kind": "eq"}, "budget": "2"}
  ])json");
  DeriveResult r = derive(sig, ctv, steps);
  CHECK_FALSE(r.valid);
  CHECK(r.reason.find("computed 1") != std::string::npos);
}

TEST_CASE("derivation: bind demands the bound variable carry the first post") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  json j = load_scenario("case_a_derivation.json");
  json steps = j["steps"];
  // Swap the bound variable's relation: containment check must fail.
  steps[3]["pre"][1]["rel"] = json{{"kind", "eq"}};
  DeriveResult r = derive(signature_from_json(j["signature"]), ctv, steps);
  CHECK_FALSE(r.valid);
  CHECK(r.failed_step == 4);
}

TEST_CASE("derivation: widening must not shrink grades, budgets or posts") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  json steps = json::parse(R"json([
    {"rule": "axiom", "op": "tick", "var": "x",
     "pre": {"kind": "diff", "r": 1}, "post": {"kind": "eq"}},
    {"rule": "weaken", "premise": 0, "budget": "2"},
    {"rule": "weaken", "premise": 0, "budget": "1/2"}
  ])json");
  DeriveResult r = derive(sig, ctv, steps);
  CHECK_FALSE(r.valid);
  CHECK(r.failed_step == 2);
  CHECK(r.reason.find("budget") != std::string::npos);
}

TEST_CASE("derivation: the bundled scripts validate end to end") {
  DCDivergence ctv = dcdiv_by_name("costtv");
  for (const char* name : {"case_a_derivation.json", "case_b_derivation.json"}) {
    json j = load_scenario(name);
    Signature sig = signature_from_json(j["signature"]);
    DeriveResult r = derive(sig, ctv, j["steps"]);
    INFO(name << ": step " << r.failed_step << ", " << r.reason);
    REQUIRE(r.valid);
    const Judgment& fin = r.conclusions.back();
    std::string budget = ext_str(fin.budget);
    CHECK(budget == (std::string(name).find("_a_") != std::string::npos
                         ? "1" : "1/5"));
  }
}

TEST_CASE("derivation: the semantic-leaf rule delegates to the oracle") {
  Signature sig = test_sig();
  DCDivergence ctv = dcdiv_by_name("costtv");
  json steps = json::parse(R"json([
    {"rule": "semantic", "judgment": {
      "pre": [{"name": "x", "type": "R", "rel": {"kind": "pairs", "list": [[0, 1]]}}],
      "left": "(tick x)", "right": "(tick x)",
      "budget": "1", "post": {"kind": "eq"}}}
  ])json");
  CHECK(derive(sig, ctv, steps).valid);
  steps[0]["judgment"]["budget"] = "1/2";
  DeriveResult r = derive(sig, ctv, steps);
  CHECK_FALSE(r.valid);
  CHECK(r.reason.find("divergence 1") != std::string::npos);
}
