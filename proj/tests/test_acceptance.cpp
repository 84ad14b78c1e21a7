// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Release gate: one pass/fail line per headline claim, each checked
// at its stated tolerance and runtime budget. Exits nonzero when any
// criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divlog/acrl.hpp"
#include "divlog/fdiv.hpp"
#include "divlog/lifting.hpp"
#include "divlog/preorder.hpp"
#include "divlog/qet.hpp"

using namespace divlog;
using nlohmann::json;

namespace {

int g_failures = 0;

/// Runs one criterion, timing it against its budget; a criterion fails
/// on a false result, an exception, or a blown runtime budget.
void criterion(int number, const std::string& name, double limit_s,
               const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string err;
  try {
    ok = body();
  } catch (const std::exception& e) {
    err = e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                 .count();
  if (s > limit_s) {
    err = (err.empty() ? "" : err + "; ") + "runtime over budget";
    ok = false;
  }
  if (!ok) ++g_failures;
  std::printf("[%s] %2d. %s  (%.2fs of %gs)%s%s\n", ok ? "PASS" : "FAIL",
              number, name.c_str(), s, limit_s, err.empty() ? "" : " -- ",
              err.c_str());
  std::fflush(stdout);
}

Dist mk(std::vector<Rat> w) {
  Dist d;
  d.w = std::move(w);
  return d;
}

json load_scenario(const std::string& name) {
  std::ifstream in(std::string(DIVLOG_SCENARIO_DIR) + "/" + name);
  json j;
  in >> j;
  return j;
}

std::string run_cli(const std::string& args, int& exit_code) {
  std::string cmd = std::string(DIVLOG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  if (p) {
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
      out.append(buf.data(), n);
    int status = pclose(p);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Pointwise privacy gap at multiplier 2: value 1/10 on the original
/// pair, 82/100 after a post-processing kernel, violating the
/// composability inequality with exact rational values.
bool pointwise_counterexample() {
  Dist mu1 = mk({rat(1, 10), rat(9, 10), Rat(0)});
  Dist mu2 = mk({Rat(0), rat(9, 20), rat(11, 20)});
  Ext before = eval_pw(Rat(2), mu1, mu2);
  if (!ext_identical(before, Ext::rational(rat(1, 10)))) return false;

  std::vector<Dist> f = {mk({rat(1, 10), rat(9, 10)}),
                         mk({rat(9, 10), rat(1, 10)}),
                         mk({Rat(0), Rat(1)})};
  Ext after = eval_pw(Rat(2), dist_bind(2, f, mu1), dist_bind(2, f, mu2));
  if (!ext_identical(after, Ext::rational(rat(82, 100)))) return false;
  // One kernel on both sides contributes nothing to the right-hand
  // side, so composability demands after <= before; it isn't.
  return !domain_Rplus().leq(after, before);
}

/// The cost divergence is not compatible with plain equality: the
/// axiom checker exhibits a kernel whose two equal-cost inputs are
/// sent to computations one cost unit apart.
bool cost_eq_refutation() {
  CheckConfig cfg{3, 100000, 20000000, 0};
  for (const auto& rep : check_axioms(spec_c(1), endorel_eq(), cfg))
    if (rep.axiom == "composability")
      return !rep.passed && !rep.witness.empty() && rep.lhs.has_value() &&
             rep.rhs.has_value() && ext_identical(*rep.lhs, Ext::integer(1)) &&
             ext_identical(*rep.rhs, Ext::integer(0));
  return false;
}

/// All four weight-function parameter rows satisfy both grid
/// inequalities on the 21x21 density grid with step 1/10; a corrupted
/// row is refuted. Rows run concurrently to meet the budget.
bool fdiv_parameter_table() {
  std::vector<WeightFunction> rows = {weight_tv(), weight_kl(), weight_hd(),
                                      weight_chi2()};
  WeightFunction broken = weight_chi2();
  broken.gamma = 0;  // drop the cross term; the second inequality fails
  rows.push_back(broken);

  std::vector<std::future<FdivGridReport>> futs;
  for (const auto& w : rows)
    futs.push_back(std::async(std::launch::async, [w] {
      return check_fdiv_parameters(w, 10, 1e-9);
    }));
  const std::uint64_t grid = 21 * 21;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    FdivGridReport rep = futs[i].get();
    if (rep.cases != grid + grid * grid) return false;
    if (rep.passed != (i < 4)) return false;
  }
  return true;
}

/// Privacy-gap composability, exhaustively: every pair of grid
/// computations and every pair of kernels on carriers up to 3 at grid
/// denominator 2 satisfies the graded inequality.
bool dp_composition_exhaustive() {
  CheckConfig cfg{3, 100000, 30000000, 0};
  for (const auto& rep : check_axioms(spec_dp(2), endorel_eq(), cfg))
    if (!rep.passed || !rep.exhaustive) return false;
  return true;
}

/// Statistical distance 1/6 between (1/2,1/2) and (1/3,2/3) is not
/// seen by any one-point test arrow (cap 1/12) but is reached exactly
/// by the two-block witness arrow.
bool tv_generatedness() {
  auto spec = spec_tv(12, true);
  Dist nu1 = mk({rat(1, 2), rat(1, 2)});
  Dist nu2 = mk({rat(1, 3), rat(2, 3)});
  if (!ext_identical(eval_tv(nu1, nu2), Ext::rational(rat(1, 6)))) return false;

  Ext best = Ext::integer(0);
  for (const auto& f0 : spec.monad.enumerate(1))
    for (const auto& f1 : spec.monad.enumerate(1)) {
      Dist p1 = spec.monad.bind(2, 1, {f0, f1}, nu1);
      Dist p2 = spec.monad.bind(2, 1, {f0, f1}, nu2);
      best = ext_max(best, eval_tv(p1, p2), 0.0);
    }
  if (!ext_identical(best, Ext::rational(rat(1, 12)))) return false;

  TestArrow<DistMonad> w = exact_witness_tv(nu1, nu2);
  Dist p1 = spec.monad.bind(2, w.nJ, w.k1, nu1);
  Dist p2 = spec.monad.bind(2, w.nJ, w.k2, nu2);
  return ext_identical(eval_tv(p1, p2), Ext::rational(rat(1, 6)));
}

/// Fundamental property. Closure direction, exact and exhaustive over
/// all test arrows into the one-point observation carrier, for the
/// three cost-flavoured divergences over the total endorelation;
/// separation direction, exact via witness arrows, for the privacy gap
/// and the statistical distance on grid instances.
bool fundamental_property() {
  std::vector<std::future<bool>> parts;
  parts.push_back(std::async(std::launch::async, [] {
    auto r = check_fundamental_c(spec_c(3), endorel_top(), 3, 200000, 0, 1);
    return r.passed && r.exhaustive;
  }));
  parts.push_back(std::async(std::launch::async, [] {
    auto r = check_fundamental_c(spec_nc(3, 2), endorel_top(), 2, 200000, 0, 1);
    return r.passed && r.exhaustive;
  }));
  parts.push_back(std::async(std::launch::async, [] {
    auto r =
        check_fundamental_c(spec_nci(3, 2), endorel_top(), 2, 200000, 0, 1);
    return r.passed && r.exhaustive;
  }));
  for (auto spec : {spec_dp(2), spec_tv(2)}) {
    parts.push_back(std::async(std::launch::async, [spec] {
      auto rep = check_fundamental_property(spec, spec.endorel, 2, 400, 0);
      return rep.closure.passed && rep.separation.passed &&
             rep.separation_exact;
    }));
  }
  bool ok = true;
  for (auto& p : parts) ok = p.get() && ok;
  return ok;
}

/// First case study: the bundled derivation script validates with
/// final budget 1, and the semantic oracle confirms budget 1 while
/// refuting budget 1/2 on the same judgment.
bool case_study_a() {
  DCDivergence div = dcdiv_by_name("costtv");
  json d = load_scenario("case_a_derivation.json");
  Signature dsig = signature_from_json(d.at("signature"));
  DeriveResult dr = derive(dsig, div, d.at("steps"));
  if (!dr.valid || ext_str(dr.conclusions.back().budget) != "1") return false;

  json a = load_scenario("case_a.json");
  Signature sig = signature_from_json(a.at("signature"));
  Judgment ok = judgment_from_json(sig, a.at("judgment"), div);
  if (judge_semantic(sig, div, ok).verdict != Verdict::Holds) return false;

  json t = load_scenario("case_a_tight.json");
  Judgment bad = judgment_from_json(sig, t.at("judgment"), div);
  return judge_semantic(sig, div, bad).verdict == Verdict::Fails;
}

/// Second case study, with centered-binomial noise (64 trials at step
/// 1/2, variance 4): the exact cost-distribution distance for inputs
/// one apart is at most 0.20, and the bundled derivation reaches a
/// final budget of 1/5.
bool case_study_b() {
  json d = load_scenario("case_b_derivation.json");
  Signature sig = signature_from_json(d.at("signature"));
  DCDivergence div = dcdiv_by_name("costtv");
  BaseRel diff1{BaseRel::Diff, 1, {}};
  BaseRel eq{BaseRel::Eq, 0, {}};
  AxiomResult r = axiom_effectful(sig, div, "ntick2", diff1, div.grading.unit, eq);
  if (!ext_leq(r.v, Ext::rational(rat(1, 5)), 1e-9)) return false;
  DeriveResult dr = derive(sig, div, d.at("steps"));
  return dr.valid && ext_str(dr.conclusions.back().budget) == "1/5";
}

/// Bounds-folded geometric mechanism on a five-point interval: zero
/// privacy-gap budget at multiplier 2 over unit adjacency, agreeing
/// with the subset brute force on every residue distribution pair.
bool geometric_axiom() {
  Signature sig = signature_from_json(json::parse(R"json({
    "bases": [{"name": "R", "size": 5, "low": 0, "arith": "clamp"}],
    "eops": [{"name": "geo", "kind": "geo", "base": "R", "ratio": "1/2",
              "fold": "clamp"}]
  })json"));
  DCDivergence dp = dcdiv_by_name("dp");
  BaseRel diff1{BaseRel::Diff, 1, {}};
  BaseRel eq{BaseRel::Eq, 0, {}};
  AxiomResult r = axiom_effectful(sig, dp, "geo", diff1, Ext::integer(2), eq);
  if (!ext_identical(r.v, Ext::integer(0))) return false;

  const EffectOpDecl* op = sig.eop("geo");
  auto marginal = [&](int center) {
    Dist d = mk(std::vector<Rat>(5, Rat(0)));
    for (const auto& [key, wt] : op->sem(center).w) d.w[(size_t)key.second] += wt;
    return d;
  };
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      Ext fast = eval_dp(Rat(2), marginal(a), marginal(b));
      Ext slow = eval_dp_bruteforce(Rat(2), marginal(a), marginal(b));
      if (!ext_identical(fast, slow)) return false;
      if (std::abs(a - b) <= 1 && !ext_identical(fast, Ext::integer(0)))
        return false;
    }
  return true;
}

/// Order-theoretic round trip on every preorder with up to three
/// points, and the identity component of the term-metric
/// correspondence on enumerated instances at depth two.
bool preorder_and_term_roundtrips() {
  for (int n = 1; n <= 3; ++n) {
    int off = n * n - n, checked = 0;
    for (int mask = 0; mask < (1 << off); ++mask) {
      Preorder p;
      p.n = n;
      p.le.assign(n, std::vector<bool>(n, false));
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          p.le[i][j] = (i == j) ? true : ((mask >> bit++) & 1);
      if (!p.transitive()) continue;
      ++checked;
      if (!preorder_roundtrip(p)) return false;
    }
    if (checked != (n == 1 ? 1 : n == 2 ? 4 : 29)) return false;
  }
  for (int nvars : {1, 2}) {
    CSEPMet m = csepmet_discrete(termsig_parse("f:1,a:0"), nvars);
    if (!check_gen_component_identity(m, 2, 20000, 0)) return false;
  }
  CSEPMet m2 = csepmet_discrete(termsig_parse("g:2,b:0"), 1);
  return check_gen_component_identity(m2, 1, 20000, 0);
}

/// Two runs of the tool with one seed produce byte-identical JSON.
bool deterministic_reports() {
  for (const std::string args :
       {std::string("axioms --div tv --max-carrier 2 --grid-denom 2 --seed 7 "
                    "--format json"),
        std::string("eval --div renyi --grade 2 --mu1 1/2,1/2 --mu2 1/4,3/4 "
                    "--format json")}) {
    int ca = -1, cb = -1;
    std::string a = run_cli(args, ca);
    std::string b = run_cli(args, cb);
    if (ca != 0 || ca != cb || a.empty() || a != b) return false;
    if (a.find("divlog-report/1") == std::string::npos) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "pointwise privacy gap counterexample, exact", 1.0,
            pointwise_counterexample);
  criterion(2, "cost divergence refutes plain-equality composability", 5.0,
            cost_eq_refutation);
  criterion(3, "weight-function parameter table on the 441-point grids", 10.0,
            fdiv_parameter_table);
  criterion(4, "privacy-gap composition, exhaustive on small carriers", 60.0,
            dp_composition_exhaustive);
  criterion(5, "statistical distance generated at two points, not one", 1.0,
            tv_generatedness);
  criterion(6, "fundamental property: closure and separation directions", 60.0,
            fundamental_property);
  criterion(7, "first case study: derivation and semantic oracle", 5.0,
            case_study_a);
  criterion(8, "second case study: centered-binomial budget 1/5", 5.0,
            case_study_b);
  criterion(9, "geometric mechanism: zero budget at multiplier two", 5.0,
            geometric_axiom);
  criterion(10, "preorder and term-metric round trips", 30.0,
            preorder_and_term_roundtrips);
  criterion(11, "byte-identical JSON reports across runs", 60.0,
            deterministic_reports);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
