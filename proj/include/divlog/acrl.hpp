// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// Relational program logic over the metalanguage: enumerable relational
// assertions between typing contexts, semantic checking of judgments
// whose postconditions are divergence-lifted relations, exact effectful
// axioms computed as suprema over preconditions, and a rule-by-rule
// derivation-script validator that recomputes every grade and budget.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "divlog/divergence.hpp"
#include "divlog/metalang.hpp"

namespace divlog {

// --------------------------------------------------------------------------
// Basic relations on first-order carriers.

struct BaseRel {
  enum Kind { True, Eq, Diff, Succ, Pairs } kind = True;
  long r = 0;                                // Diff / Succ parameter
  std::vector<std::pair<int, int>> list;     // Pairs: explicit encoded pairs

  bool operator==(const BaseRel& o) const {
    return kind == o.kind && r == o.r && list == o.list;
  }
};

struct AssertionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Membership of a pair of encoded values. Diff and Succ compare the
/// semantic integer values of a base carrier; Succ wraps on carriers
/// with modular arithmetic and is partial on clamped ones.
inline bool baserel_mem(const Signature& sig, const TypeExpr& ty,
                        const BaseRel& rel, int a, int b) {
  switch (rel.kind) {
    case BaseRel::True:
      return true;
    case BaseRel::Eq:
      return a == b;
    case BaseRel::Pairs:
      for (auto [x, y] : rel.list)
        if (x == a && y == b) return true;
      return false;
    case BaseRel::Diff:
    case BaseRel::Succ: {
      if (ty.kind != TypeExpr::Base)
        throw AssertionError("diff/succ need a base type, got " + type_str(ty));
      const auto& base = sig.base(ty.base);
      long va = base.low + a, vb = base.low + b;
      if (rel.kind == BaseRel::Diff) {
        long d = vb - va;
        return -rel.r <= d && d <= rel.r;
      }
      if (base.arith == "mod")
        return b == (int)(((long)a + rel.r) % base.size + base.size) % base.size;
      return vb == va + rel.r;
    }
  }
  return false;
}

inline std::vector<std::pair<int, int>> baserel_pairs(const Signature& sig,
                                                      const TypeExpr& ty,
                                                      const BaseRel& rel) {
  int n = type_size(sig, ty);
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (baserel_mem(sig, ty, rel, a, b)) out.emplace_back(a, b);
  return out;
}

/// When the relation is the graph of a bijection on the carrier,
/// returns the inverse map; otherwise nullopt. Needed to decide lifted
/// membership exactly: relating computations along the graph of g is
/// the same as comparing the first against the g-inverse image of the
/// second.
inline std::optional<std::function<int(int)>> baserel_bijection_inverse(
    const Signature& sig, const TypeExpr& ty, const BaseRel& rel) {
  int n = type_size(sig, ty);
  if (rel.kind == BaseRel::Eq) return [](int b) { return b; };
  if (rel.kind == BaseRel::True && n == 1) return [](int b) { return b; };
  std::vector<int> inv(n, -1);
  int count = 0;
  for (auto [a, b] : baserel_pairs(sig, ty, rel)) {
    if (inv[b] != -1) return std::nullopt;  // not injective
    inv[b] = a;
    ++count;
  }
  if (count != n) return std::nullopt;  // not total / not surjective
  return [inv](int b) { return inv[b]; };
}

inline BaseRel baserel_from_json(const nlohmann::json& j) {
  BaseRel r;
  std::string k = j.value("kind", "true");
  if (k == "true") r.kind = BaseRel::True;
  else if (k == "eq") r.kind = BaseRel::Eq;
  else if (k == "diff") { r.kind = BaseRel::Diff; r.r = j.at("r").get<long>(); }
  else if (k == "succ") { r.kind = BaseRel::Succ; r.r = j.at("r").get<long>(); }
  else if (k == "pairs") {
    r.kind = BaseRel::Pairs;
    for (const auto& p : j.at("list"))
      r.list.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  } else {
    throw AssertionError("unknown relation kind: " + k);
  }
  return r;
}

// --------------------------------------------------------------------------
// Preconditions: conjunctions of per-variable relations between the
// left and right environments (variables shared by name).

struct VarRel {
  std::string name;
  TypeExpr type;
  BaseRel rel;
};

using Precond = std::vector<VarRel>;

inline Precond precond_from_json(const Signature& /*sig*/, const nlohmann::json& j) {
  Precond pre;
  for (const auto& v : j) {
    VarRel vr;
    vr.name = v.at("name").get<std::string>();
    vr.type = type_of_sexpr(sexpr_parse(v.at("type").get<std::string>()));
    vr.rel = baserel_from_json(v.at("rel"));
    pre.push_back(vr);
  }
  return pre;
}

/// All pairs of environments related by the precondition.
inline std::vector<std::pair<Env, Env>> precond_enumerate(const Signature& sig,
                                                          const Precond& pre) {
  std::vector<std::pair<Env, Env>> out = {{Env{}, Env{}}};
  for (const auto& vr : pre) {
    auto pairs = baserel_pairs(sig, vr.type, vr.rel);
    std::vector<std::pair<Env, Env>> next;
    for (const auto& [g, d] : out)
      for (auto [a, b] : pairs) {
        Env g2 = g, d2 = d;
        g2[vr.name] = value_decode(sig, vr.type, a);
        d2[vr.name] = value_decode(sig, vr.type, b);
        next.emplace_back(std::move(g2), std::move(d2));
      }
    out = std::move(next);
  }
  return out;
}

inline TypeContext precond_context(const Precond& pre) {
  TypeContext ctx;
  for (const auto& vr : pre) ctx[vr.name] = vr.type;
  return ctx;
}

/// Membership of a concrete environment pair (used for consequence
/// checking, where the old precondition's variables must be bound in
/// the new environments).
inline bool precond_mem(const Signature& sig, const Precond& pre,
                        const Env& g, const Env& d) {
  for (const auto& vr : pre) {
    auto ig = g.find(vr.name);
    auto id = d.find(vr.name);
    if (ig == g.end() || id == d.end())
      throw AssertionError("variable " + vr.name + " not bound");
    if (!baserel_mem(sig, vr.type, vr.rel,
                     value_encode(sig, vr.type, ig->second),
                     value_encode(sig, vr.type, id->second)))
      return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// Divergences usable on computations of the metalanguage.

struct DCDivergence {
  std::string name;
  GradingMonoid grading;
  DivergenceDomain domain;
  std::function<Ext(const Ext&, const DC&, const DC&)> eval;
};

inline DCDivergence dcdiv_by_name(const std::string& name) {
  DCDivergence d;
  d.name = name;
  if (name == "costtv") {
    d.grading = grading_trivial();
    d.domain = domain_Rplus();
    d.eval = [](const Ext&, const DC& a, const DC& b) { return eval_costtv(a, b); };
    return d;
  }
  if (name == "tv") {
    d.grading = grading_trivial();
    d.domain = domain_Rplus();
    d.eval = [](const Ext&, const DC& a, const DC& b) { return eval_dc_tv(a, b); };
    return d;
  }
  if (name == "dp") {
    d.grading = grading_multiplicative();
    d.domain = domain_Rplus();
    d.eval = [](const Ext& g, const DC& a, const DC& b) {
      if (g.kind != ExtKind::Rational)
        throw GradeOutsideMonoid("dp grade must be rational");
      return eval_dc_dp(g.q, a, b);
    };
    return d;
  }
  throw AssertionError("unknown computation divergence: " + name);
}

// --------------------------------------------------------------------------
// Judgments.

struct Judgment {
  Precond pre;
  std::string left_src, right_src;
  Ext grade, budget;
  BaseRel post;  // endorelation on the computation payload carrier

  MTerm left, right;       // parsed; typechecked by the operations below
  TypeExpr payload;        // filled in by typechecking
};

inline Judgment judgment_from_json(const Signature& sig, const nlohmann::json& j,
                                   const DCDivergence& div) {
  Judgment jd;
  jd.pre = precond_from_json(sig, j.at("pre"));
  jd.left_src = j.at("left").get<std::string>();
  jd.right_src = j.at("right").get<std::string>();
  jd.left = parse_term(jd.left_src);
  jd.right = parse_term(jd.right_src);
  jd.grade = j.contains("grade")
                 ? Ext::rational(rat_parse(j.at("grade").get<std::string>()))
                 : div.grading.unit;
  jd.budget = Ext::rational(rat_parse(j.at("budget").get<std::string>()));
  jd.post = j.contains("post") ? baserel_from_json(j.at("post")) : BaseRel{};
  return jd;
}

/// Typechecks both sides in the precondition's context and records the
/// shared payload type; both sides must be computations of the same
/// payload.
inline void judgment_typecheck(const Signature& sig, Judgment& jd) {
  TypeContext ctx = precond_context(jd.pre);
  TypeExpr tl = typecheck(sig, ctx, jd.left);
  TypeExpr tr = typecheck(sig, ctx, jd.right);
  if (tl.kind != TypeExpr::Monadic || !(tl == tr))
    throw TypeError("judgment sides must be computations of one type, got " +
                        type_str(tl) + " vs " + type_str(tr),
                    jd.left.line, jd.left.col);
  jd.payload = tl.kids[0];
}

enum class Verdict { Holds, Fails, Inconclusive };

struct JudgeResult {
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t cases = 0;
  std::string witness;
  Ext lhs, rhs;
};

/// Semantic judgment check: enumerates the precondition, interprets
/// both sides, and tests lifted membership exactly. Lifted membership
/// at the graph of a bijection g reduces to comparing the left
/// computation against the g-inverse relabeling of the right one; for
/// other postrelations the result is Inconclusive.
inline JudgeResult judge_semantic(const Signature& sig, const DCDivergence& div,
                                  Judgment& jd) {
  JudgeResult res;
  judgment_typecheck(sig, jd);
  auto inv = baserel_bijection_inverse(sig, jd.payload, jd.post);
  if (!inv) {
    res.witness = "postrelation is not the graph of a bijection";
    return res;
  }
  res.verdict = Verdict::Holds;
  for (auto& [g, d] : precond_enumerate(sig, jd.pre)) {
    ++res.cases;
    DC c1 = interpret(sig, jd.left, g).comp;
    DC c2 = dc_map_values(interpret(sig, jd.right, d).comp, *inv);
    Ext e = div.eval(jd.grade, c1, c2);
    if (!div.domain.leq(e, jd.budget)) {
      res.verdict = Verdict::Fails;
      res.lhs = e;
      res.rhs = jd.budget;
      std::string envs;
      for (const auto& [k, v] : g) envs += " " + k + "<-" + std::to_string(v.i);
      for (const auto& [k, v] : d) envs += " " + k + "'<-" + std::to_string(v.i);
      res.witness = "environment pair" + envs + ": divergence " + ext_str(e) +
                    " > budget " + ext_str(jd.budget);
      return res;
    }
  }
  return res;
}

/// Exact effectful axiom: the least budget making the operation
/// self-related at the given grade over the precondition, i.e. the
/// supremum of the divergence between the operation's two runs against
/// the postrelation bijection, over all related argument pairs.
struct AxiomResult {
  Ext v;
  std::uint64_t cases = 0;
};

inline AxiomResult axiom_effectful(const Signature& sig, const DCDivergence& div,
                                   const std::string& op, const BaseRel& pre,
                                   const Ext& grade, const BaseRel& post) {
  const EffectOpDecl* o = sig.eop(op);
  if (!o) throw SignatureError("unknown effectful operation: " + op);
  auto inv = baserel_bijection_inverse(sig, o->res, post);
  if (!inv) throw AssertionError("axiom postrelation must be a bijection graph");
  AxiomResult res{div.domain.zero, 0};
  std::vector<Ext> vals = {div.domain.zero};
  for (auto [a, b] : baserel_pairs(sig, o->arg, pre)) {
    ++res.cases;
    vals.push_back(div.eval(grade, o->sem(a), dc_map_values(o->sem(b), *inv)));
  }
  res.v = domain_sup(div.domain, vals);
  return res;
}

// --------------------------------------------------------------------------
// Derivation scripts.

struct DeriveResult {
  bool valid = true;
  int failed_step = -1;
  std::string reason;
  std::vector<Judgment> conclusions;
};

namespace detail {

inline bool same_rel(const BaseRel& a, const BaseRel& b) { return a == b; }

/// Semantic equality of two open computations: equal outcome
/// distributions under every environment for the context (all values,
/// not just related pairs).
inline bool semantically_equal(const Signature& sig, const TypeContext& ctx,
                               MTerm& a, MTerm& b) {
  TypeExpr ta = typecheck(sig, ctx, a);
  TypeExpr tb = typecheck(sig, ctx, b);
  if (!(ta == tb) || ta.kind != TypeExpr::Monadic) return false;
  // Enumerate all environments.
  std::vector<Env> envs = {Env{}};
  for (const auto& [name, ty] : ctx) {
    int n = type_size(sig, ty);
    std::vector<Env> next;
    for (const auto& e : envs)
      for (int v = 0; v < n; ++v) {
        Env e2 = e;
        e2[name] = value_decode(sig, ty, v);
        next.push_back(std::move(e2));
      }
    envs = std::move(next);
  }
  for (const auto& e : envs)
    if (!(interpret(sig, a, e).comp.w == interpret(sig, b, e).comp.w))
      return false;
  return true;
}

}  // namespace detail

/// Validates a derivation script step by step. Every conclusion's grade
/// and budget are recomputed by the checker; claimed values in the
/// script are only accepted when they match. Rules: "axiom" (exact
/// supremum over the precondition), "ret" (unit grade, zero budget,
/// value-level membership), "bind" (sequencing: grades multiply,
/// budgets add), "equiv" (semantic replacement of both sides),
/// "conseq" (precondition shrinking), "weaken" (grade, budget and
/// postrelation widening), and "semantic" (leaf validated by the
/// semantic judgment checker).
inline DeriveResult derive(const Signature& sig, const DCDivergence& div,
                           const nlohmann::json& steps) {
  DeriveResult res;
  auto fail = [&](int i, const std::string& why) {
    res.valid = false;
    res.failed_step = i;
    res.reason = why;
    return res;
  };
  for (int i = 0; i < (int)steps.size(); ++i) {
    const auto& st = steps[(std::size_t)i];
    std::string rule = st.at("rule").get<std::string>();
    auto premise = [&](const char* field) -> Judgment& {
      int k = st.at(field).get<int>();
      if (k < 0 || k >= (int)res.conclusions.size())
        throw AssertionError("premise index out of range");
      return res.conclusions[(std::size_t)k];
    };
    try {
      if (rule == "axiom") {
        std::string op = st.at("op").get<std::string>();
        const EffectOpDecl* o = sig.eop(op);
        if (!o) return fail(i, "unknown effectful operation " + op);
        BaseRel pre = baserel_from_json(st.at("pre"));
        BaseRel post = st.contains("post") ? baserel_from_json(st.at("post"))
                                           : BaseRel{BaseRel::Eq, 0, {}};
        Ext grade = st.contains("grade")
                        ? Ext::rational(rat_parse(st.at("grade").get<std::string>()))
                        : div.grading.unit;
        AxiomResult ax = axiom_effectful(sig, div, op, pre, grade, post);
        std::string var = st.value("var", "x");
        Judgment jd;
        jd.pre = {VarRel{var, o->arg, pre}};
        jd.left_src = jd.right_src = "(" + op + " " + var + ")";
        jd.left = parse_term(jd.left_src);
        jd.right = parse_term(jd.right_src);
        jd.grade = grade;
        jd.budget = ax.v;
        jd.post = post;
        judgment_typecheck(sig, jd);
        if (st.contains("budget")) {
          Ext claimed = Ext::rational(rat_parse(st.at("budget").get<std::string>()));
          if (!ext_identical(claimed, ax.v))
            return fail(i, "claimed axiom budget " + ext_str(claimed) +
                               " differs from computed " + ext_str(ax.v));
        }
        res.conclusions.push_back(std::move(jd));
      } else if (rule == "ret") {
        Judgment jd = judgment_from_json(sig, st, div);
        judgment_typecheck(sig, jd);
        if (jd.left.kind != MTerm::Ret || jd.right.kind != MTerm::Ret)
          return fail(i, "ret rule needs ret terms on both sides");
        if (!ext_identical(jd.grade, div.grading.unit))
          return fail(i, "ret rule's grade is the grading unit");
        if (!ext_identical(jd.budget, div.domain.zero))
          return fail(i, "ret rule's budget is the domain zero");
        for (auto& [g, d] : precond_enumerate(sig, jd.pre)) {
          int a = value_encode(sig, jd.payload, interpret(sig, jd.left.kids[0], g));
          int b = value_encode(sig, jd.payload, interpret(sig, jd.right.kids[0], d));
          if (!baserel_mem(sig, jd.payload, jd.post, a, b))
            return fail(i, "returned values escape the postrelation at (" +
                               std::to_string(a) + ", " + std::to_string(b) + ")");
        }
        res.conclusions.push_back(std::move(jd));
      } else if (rule == "bind") {
        Judgment& first = premise("first");
        Judgment& second = premise("second");
        // The second premise's precondition must be the first's plus one
        // variable related by the first's postrelation at its payload.
        if (second.pre.size() != first.pre.size() + 1)
          return fail(i, "bind: second premise must add exactly one variable");
        for (std::size_t k = 0; k < first.pre.size(); ++k) {
          const auto& a = first.pre[k];
          const auto& b = second.pre[k];
          if (a.name != b.name || !(a.type == b.type) ||
              !detail::same_rel(a.rel, b.rel))
            return fail(i, "bind: preconditions disagree at variable " + a.name);
        }
        const VarRel& bound = second.pre.back();
        if (!(bound.type == first.payload) ||
            !detail::same_rel(bound.rel, first.post))
          return fail(i, "bind: bound variable's relation must be the first "
                         "premise's postrelation");
        Judgment jd;
        jd.pre = first.pre;
        jd.left_src = "(let " + bound.name + " " + first.left_src + " " +
                      second.left_src + ")";
        jd.right_src = "(let " + bound.name + " " + first.right_src + " " +
                       second.right_src + ")";
        jd.left = parse_term(jd.left_src);
        jd.right = parse_term(jd.right_src);
        jd.grade = div.grading.mul(first.grade, second.grade);
        jd.budget = div.domain.add(first.budget, second.budget);
        jd.post = second.post;
        judgment_typecheck(sig, jd);
        res.conclusions.push_back(std::move(jd));
      } else if (rule == "equiv") {
        Judgment& prem = premise("premise");
        Judgment jd = prem;
        jd.left_src = st.at("left").get<std::string>();
        jd.right_src = st.at("right").get<std::string>();
        jd.left = parse_term(jd.left_src);
        jd.right = parse_term(jd.right_src);
        TypeContext ctx = precond_context(jd.pre);
        MTerm oldl = parse_term(prem.left_src), oldr = parse_term(prem.right_src);
        if (!detail::semantically_equal(sig, ctx, jd.left, oldl))
          return fail(i, "equiv: left sides differ semantically");
        if (!detail::semantically_equal(sig, ctx, jd.right, oldr))
          return fail(i, "equiv: right sides differ semantically");
        judgment_typecheck(sig, jd);
        res.conclusions.push_back(std::move(jd));
      } else if (rule == "conseq") {
        Judgment& prem = premise("premise");
        Judgment jd = prem;
        jd.pre = precond_from_json(sig, st.at("pre"));
        // Every pair of the new precondition must satisfy the old one.
        for (auto& [g, d] : precond_enumerate(sig, jd.pre))
          if (!precond_mem(sig, prem.pre, g, d))
            return fail(i, "conseq: new precondition is not contained in the "
                           "premise's");
        jd.left = parse_term(jd.left_src);
        jd.right = parse_term(jd.right_src);
        judgment_typecheck(sig, jd);
        res.conclusions.push_back(std::move(jd));
      } else if (rule == "weaken") {
        Judgment& prem = premise("premise");
        Judgment jd = prem;
        if (st.contains("grade"))
          jd.grade = Ext::rational(rat_parse(st.at("grade").get<std::string>()));
        if (st.contains("budget"))
          jd.budget = Ext::rational(rat_parse(st.at("budget").get<std::string>()));
        if (st.contains("post")) jd.post = baserel_from_json(st.at("post"));
        if (!div.grading.leq(prem.grade, jd.grade))
          return fail(i, "weaken: grade may only grow");
        if (!div.domain.leq(prem.budget, jd.budget))
          return fail(i, "weaken: budget may only grow");
        if (!detail::same_rel(prem.post, jd.post)) {
          auto oldp = baserel_pairs(sig, prem.payload, prem.post);
          for (auto [a, b] : oldp)
            if (!baserel_mem(sig, prem.payload, jd.post, a, b))
              return fail(i, "weaken: postrelation may only widen");
        }
        res.conclusions.push_back(std::move(jd));
      } else if (rule == "semantic") {
        Judgment jd = judgment_from_json(sig, st.at("judgment"), div);
        JudgeResult jr = judge_semantic(sig, div, jd);
        if (jr.verdict != Verdict::Holds)
          return fail(i, "semantic leaf does not hold: " + jr.witness);
        res.conclusions.push_back(std::move(jd));
      } else {
        return fail(i, "unknown rule " + rule);
      }
    } catch (const std::exception& e) {
      return fail(i, e.what());
    }
  }
  return res;
}

}  // namespace divlog
