// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// A small computational metalanguage: s-expression surface syntax,
// simple types with a monadic type former, a typechecker, and a
// denotational interpreter whose computations live in the finite
// distribution-over-(cost, value) monad. Operation signatures declare
// finite base carriers, pure value operations, and effectful
// operations given by Kleisli maps.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "divlog/dc.hpp"
#include "divlog/rational.hpp"

namespace divlog {

// --------------------------------------------------------------------------
// S-expressions with source positions.

struct SExpr {
  bool atom = false;
  std::string text;          // atoms
  std::vector<SExpr> kids;   // lists
  int line = 1, col = 1;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
struct SReader {
  const std::string& s;
  std::size_t i = 0;
  int line = 1, col = 1;

  void bump() {
    if (s[i] == '\n') { ++line; col = 1; } else ++col;
    ++i;
  }
  void skip() {
    while (i < s.size()) {
      if (std::isspace((unsigned char)s[i])) { bump(); continue; }
      if (s[i] == ';') {  // comment to end of line
        while (i < s.size() && s[i] != '\n') bump();
        continue;
      }
      break;
    }
  }
  SExpr read() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of input");
    SExpr e;
    e.line = line;
    e.col = col;
    if (s[i] == '(') {
      bump();
      while (true) {
        skip();
        if (i >= s.size())
          throw ParseError("unclosed '(' at line " + std::to_string(e.line));
        if (s[i] == ')') { bump(); break; }
        e.kids.push_back(read());
      }
      return e;
    }
    if (s[i] == ')')
      throw ParseError("unmatched ')' at line " + std::to_string(line));
    e.atom = true;
    while (i < s.size() && !std::isspace((unsigned char)s[i]) && s[i] != '(' &&
           s[i] != ')' && s[i] != ';') {
      e.text += s[i];
      bump();
    }
    return e;
  }
};
}  // namespace detail

inline SExpr sexpr_parse(const std::string& src) {
  detail::SReader r{src};
  SExpr e = r.read();
  r.skip();
  if (r.i < r.s.size()) throw ParseError("trailing input after expression");
  return e;
}

// --------------------------------------------------------------------------
// Types.

struct TypeExpr {
  enum Kind { Base, Unit, Prod, Sum, Empty, Arrow, Monadic } kind = Unit;
  std::string base;             // Base
  std::vector<TypeExpr> kids;   // Prod/Sum/Arrow: 2, Monadic: 1

  bool operator==(const TypeExpr& o) const {
    return kind == o.kind && base == o.base && kids == o.kids;
  }
  static TypeExpr mk_base(std::string b) { return {Base, std::move(b), {}}; }
  static TypeExpr mk_unit() { return {Unit, "", {}}; }
  static TypeExpr mk_empty() { return {Empty, "", {}}; }
  static TypeExpr mk_prod(TypeExpr a, TypeExpr b) { return {Prod, "", {std::move(a), std::move(b)}}; }
  static TypeExpr mk_sum(TypeExpr a, TypeExpr b) { return {Sum, "", {std::move(a), std::move(b)}}; }
  static TypeExpr mk_arrow(TypeExpr a, TypeExpr b) { return {Arrow, "", {std::move(a), std::move(b)}}; }
  static TypeExpr mk_monadic(TypeExpr a) { return {Monadic, "", {std::move(a)}}; }
};

inline std::string type_str(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Base: return t.base;
    case TypeExpr::Unit: return "unit";
    case TypeExpr::Empty: return "empty";
    case TypeExpr::Prod: return "(prod " + type_str(t.kids[0]) + " " + type_str(t.kids[1]) + ")";
    case TypeExpr::Sum: return "(sum " + type_str(t.kids[0]) + " " + type_str(t.kids[1]) + ")";
    case TypeExpr::Arrow: return "(arrow " + type_str(t.kids[0]) + " " + type_str(t.kids[1]) + ")";
    case TypeExpr::Monadic: return "(T " + type_str(t.kids[0]) + ")";
  }
  return "?";
}

/// First-order types: those built from base types, unit, products and
/// sums. Only these may appear in operation signatures and as monadic
/// payloads.
inline bool first_order(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Base:
    case TypeExpr::Unit:
      return true;
    case TypeExpr::Prod:
    case TypeExpr::Sum:
      return first_order(t.kids[0]) && first_order(t.kids[1]);
    default:
      return false;
  }
}

// --------------------------------------------------------------------------
// Signatures.

struct BaseTypeDecl {
  std::string name;
  int size = 1;   // carrier {low, .., low + size - 1}
  int low = 0;
  std::string arith = "clamp";  // "clamp" or "mod" overflow behaviour
};

struct ValueOpDecl {
  std::string name;
  TypeExpr arg, res;
  std::function<int(int)> fn;  // on encoded first-order values
};

struct EffectOpDecl {
  std::string name;
  TypeExpr arg, res;              // res is the payload; op yields T res
  std::function<DC(int)> sem;     // Kleisli map on encoded values
};

struct SignatureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Signature {
  std::vector<BaseTypeDecl> bases;
  std::vector<ValueOpDecl> vops;
  std::vector<EffectOpDecl> eops;

  const BaseTypeDecl& base(const std::string& n) const {
    for (const auto& b : bases)
      if (b.name == n) return b;
    throw SignatureError("unknown base type: " + n);
  }
  const ValueOpDecl* vop(const std::string& n) const {
    for (const auto& o : vops)
      if (o.name == n) return &o;
    return nullptr;
  }
  const EffectOpDecl* eop(const std::string& n) const {
    for (const auto& o : eops)
      if (o.name == n) return &o;
    return nullptr;
  }
};

/// Number of elements of a first-order type; products multiply, sums
/// add, and the encoding below is the corresponding mixed radix.
inline int type_size(const Signature& sig, const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Base: return sig.base(t.base).size;
    case TypeExpr::Unit: return 1;
    case TypeExpr::Prod: return type_size(sig, t.kids[0]) * type_size(sig, t.kids[1]);
    case TypeExpr::Sum: return type_size(sig, t.kids[0]) + type_size(sig, t.kids[1]);
    default: throw SignatureError("type has no finite carrier: " + type_str(t));
  }
}

// --------------------------------------------------------------------------
// Terms.

struct MTerm {
  enum Kind {
    Var, Lit, UnitI, Pair, Fst, Snd, Inl, Inr, Match, Absurd,
    Lam, App, Ret, Let, Op
  } kind = UnitI;
  std::string name;        // Var/Lam/Let binder/Op name/Lit base
  long lit = 0;            // Lit semantic value
  TypeExpr ann;            // Inl/Inr other side, Absurd target, Lam param type
  std::vector<MTerm> kids;
  int line = 1, col = 1;
  // Filled by the typechecker.
  TypeExpr ty;
  bool op_effectful = false;
};

struct TypeError : std::runtime_error {
  TypeError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ")") {}
};
struct UnboundVariable : std::runtime_error {
  UnboundVariable(const std::string& v, int line, int col)
      : std::runtime_error("unbound variable " + v + " (line " +
                           std::to_string(line) + ", col " +
                           std::to_string(col) + ")") {}
};

inline TypeExpr type_of_sexpr(const SExpr& e) {
  if (e.atom) {
    if (e.text == "unit") return TypeExpr::mk_unit();
    if (e.text == "empty") return TypeExpr::mk_empty();
    return TypeExpr::mk_base(e.text);
  }
  if (e.kids.empty()) throw ParseError("empty type expression");
  const std::string& h = e.kids[0].text;
  auto need = [&](std::size_t n) {
    if (e.kids.size() != n + 1)
      throw ParseError("type " + h + " expects " + std::to_string(n) +
                       " arguments (line " + std::to_string(e.line) + ")");
  };
  if (h == "prod") { need(2); return TypeExpr::mk_prod(type_of_sexpr(e.kids[1]), type_of_sexpr(e.kids[2])); }
  if (h == "sum") { need(2); return TypeExpr::mk_sum(type_of_sexpr(e.kids[1]), type_of_sexpr(e.kids[2])); }
  if (h == "arrow") { need(2); return TypeExpr::mk_arrow(type_of_sexpr(e.kids[1]), type_of_sexpr(e.kids[2])); }
  if (h == "T") { need(1); return TypeExpr::mk_monadic(type_of_sexpr(e.kids[1])); }
  throw ParseError("unknown type former " + h + " (line " + std::to_string(e.line) + ")");
}

inline MTerm term_of_sexpr(const SExpr& e) {
  MTerm t;
  t.line = e.line;
  t.col = e.col;
  if (e.atom) {
    if (e.text == "unit") { t.kind = MTerm::UnitI; return t; }
    t.kind = MTerm::Var;
    t.name = e.text;
    return t;
  }
  if (e.kids.empty()) { t.kind = MTerm::UnitI; return t; }
  const std::string& h = e.kids[0].atom ? e.kids[0].text : "";
  auto need = [&](std::size_t n, const char* what) {
    if (e.kids.size() != n + 1)
      throw ParseError(std::string(what) + " expects " + std::to_string(n) +
                       " arguments (line " + std::to_string(e.line) + ")");
  };
  if (h == "lit") {
    need(2, "lit");
    t.kind = MTerm::Lit;
    t.name = e.kids[1].text;
    t.lit = std::stol(e.kids[2].text);
    return t;
  }
  if (h == "pair") { need(2, "pair"); t.kind = MTerm::Pair; t.kids = {term_of_sexpr(e.kids[1]), term_of_sexpr(e.kids[2])}; return t; }
  if (h == "fst") { need(1, "fst"); t.kind = MTerm::Fst; t.kids = {term_of_sexpr(e.kids[1])}; return t; }
  if (h == "snd") { need(1, "snd"); t.kind = MTerm::Snd; t.kids = {term_of_sexpr(e.kids[1])}; return t; }
  if (h == "inl") { need(2, "inl"); t.kind = MTerm::Inl; t.ann = type_of_sexpr(e.kids[1]); t.kids = {term_of_sexpr(e.kids[2])}; return t; }
  if (h == "inr") { need(2, "inr"); t.kind = MTerm::Inr; t.ann = type_of_sexpr(e.kids[1]); t.kids = {term_of_sexpr(e.kids[2])}; return t; }
  if (h == "match") {
    need(3, "match");
    const SExpr &l = e.kids[2], &r = e.kids[3];
    if (l.atom || l.kids.size() != 2 || !l.kids[0].atom || r.atom ||
        r.kids.size() != 2 || !r.kids[0].atom)
      throw ParseError("match branches must be (x M) (y N) (line " +
                       std::to_string(e.line) + ")");
    t.kind = MTerm::Match;
    t.kids = {term_of_sexpr(e.kids[1]), term_of_sexpr(l.kids[1]),
              term_of_sexpr(r.kids[1])};
    t.name = l.kids[0].text + " " + r.kids[0].text;  // two binders
    return t;
  }
  if (h == "absurd") { need(2, "absurd"); t.kind = MTerm::Absurd; t.ann = type_of_sexpr(e.kids[1]); t.kids = {term_of_sexpr(e.kids[2])}; return t; }
  if (h == "lam") {
    need(2, "lam");
    const SExpr& p = e.kids[1];
    if (p.atom || p.kids.size() != 2 || !p.kids[0].atom)
      throw ParseError("lam expects (x type) binder (line " +
                       std::to_string(e.line) + ")");
    t.kind = MTerm::Lam;
    t.name = p.kids[0].text;
    t.ann = type_of_sexpr(p.kids[1]);
    t.kids = {term_of_sexpr(e.kids[2])};
    return t;
  }
  if (h == "app") { need(2, "app"); t.kind = MTerm::App; t.kids = {term_of_sexpr(e.kids[1]), term_of_sexpr(e.kids[2])}; return t; }
  if (h == "ret") { need(1, "ret"); t.kind = MTerm::Ret; t.kids = {term_of_sexpr(e.kids[1])}; return t; }
  if (h == "let") {
    need(3, "let");
    if (!e.kids[1].atom)
      throw ParseError("let binder must be a symbol (line " + std::to_string(e.line) + ")");
    t.kind = MTerm::Let;
    t.name = e.kids[1].text;
    t.kids = {term_of_sexpr(e.kids[2]), term_of_sexpr(e.kids[3])};
    return t;
  }
  // Anything else: operation application, resolved against the
  // signature by the typechecker.
  if (h.empty())
    throw ParseError("expected operation name (line " + std::to_string(e.line) + ")");
  need(1, "operation");
  t.kind = MTerm::Op;
  t.name = h;
  t.kids = {term_of_sexpr(e.kids[1])};
  return t;
}

inline MTerm parse_term(const std::string& src) {
  return term_of_sexpr(sexpr_parse(src));
}

// --------------------------------------------------------------------------
// Typechecker.

using TypeContext = std::map<std::string, TypeExpr>;

inline TypeExpr typecheck(const Signature& sig, const TypeContext& ctx,
                          MTerm& t) {
  auto fail = [&](const std::string& m) -> TypeExpr {
    throw TypeError(m, t.line, t.col);
  };
  switch (t.kind) {
    case MTerm::Var: {
      auto it = ctx.find(t.name);
      if (it == ctx.end()) throw UnboundVariable(t.name, t.line, t.col);
      t.ty = it->second;
      break;
    }
    case MTerm::Lit: {
      const auto& b = sig.base(t.name);
      if (t.lit < b.low || t.lit >= b.low + b.size)
        fail("literal " + std::to_string(t.lit) + " outside carrier of " + t.name);
      t.ty = TypeExpr::mk_base(t.name);
      break;
    }
    case MTerm::UnitI:
      t.ty = TypeExpr::mk_unit();
      break;
    case MTerm::Pair:
      t.ty = TypeExpr::mk_prod(typecheck(sig, ctx, t.kids[0]),
                               typecheck(sig, ctx, t.kids[1]));
      break;
    case MTerm::Fst: {
      TypeExpr a = typecheck(sig, ctx, t.kids[0]);
      if (a.kind != TypeExpr::Prod) fail("fst of non-product " + type_str(a));
      t.ty = a.kids[0];
      break;
    }
    case MTerm::Snd: {
      TypeExpr a = typecheck(sig, ctx, t.kids[0]);
      if (a.kind != TypeExpr::Prod) fail("snd of non-product " + type_str(a));
      t.ty = a.kids[1];
      break;
    }
    case MTerm::Inl:
      t.ty = TypeExpr::mk_sum(typecheck(sig, ctx, t.kids[0]), t.ann);
      break;
    case MTerm::Inr:
      t.ty = TypeExpr::mk_sum(t.ann, typecheck(sig, ctx, t.kids[0]));
      break;
    case MTerm::Match: {
      TypeExpr s = typecheck(sig, ctx, t.kids[0]);
      if (s.kind != TypeExpr::Sum) fail("match on non-sum " + type_str(s));
      auto sp = t.name.find(' ');
      std::string xl = t.name.substr(0, sp), xr = t.name.substr(sp + 1);
      TypeContext cl = ctx, cr = ctx;
      cl[xl] = s.kids[0];
      cr[xr] = s.kids[1];
      TypeExpr a = typecheck(sig, cl, t.kids[1]);
      TypeExpr b = typecheck(sig, cr, t.kids[2]);
      if (!(a == b)) fail("match branches disagree: " + type_str(a) + " vs " + type_str(b));
      t.ty = a;
      break;
    }
    case MTerm::Absurd: {
      TypeExpr a = typecheck(sig, ctx, t.kids[0]);
      if (a.kind != TypeExpr::Empty) fail("absurd of non-empty " + type_str(a));
      t.ty = t.ann;
      break;
    }
    case MTerm::Lam: {
      TypeContext c2 = ctx;
      c2[t.name] = t.ann;
      t.ty = TypeExpr::mk_arrow(t.ann, typecheck(sig, c2, t.kids[0]));
      break;
    }
    case MTerm::App: {
      TypeExpr f = typecheck(sig, ctx, t.kids[0]);
      TypeExpr a = typecheck(sig, ctx, t.kids[1]);
      if (f.kind != TypeExpr::Arrow) fail("application of non-function " + type_str(f));
      if (!(f.kids[0] == a))
        fail("argument type " + type_str(a) + " does not match " + type_str(f.kids[0]));
      t.ty = f.kids[1];
      break;
    }
    case MTerm::Ret: {
      TypeExpr a = typecheck(sig, ctx, t.kids[0]);
      if (!first_order(a))
        fail("monadic payload must be first-order, got " + type_str(a));
      t.ty = TypeExpr::mk_monadic(a);
      break;
    }
    case MTerm::Let: {
      TypeExpr a = typecheck(sig, ctx, t.kids[0]);
      if (a.kind != TypeExpr::Monadic) fail("let of non-computation " + type_str(a));
      TypeContext c2 = ctx;
      c2[t.name] = a.kids[0];
      TypeExpr b = typecheck(sig, c2, t.kids[1]);
      if (b.kind != TypeExpr::Monadic)
        fail("let body must be a computation, got " + type_str(b));
      if (!first_order(b.kids[0]))
        fail("monadic payload must be first-order, got " + type_str(b.kids[0]));
      t.ty = b;
      break;
    }
    case MTerm::Op: {
      TypeExpr a = typecheck(sig, ctx, t.kids[0]);
      if (const ValueOpDecl* o = sig.vop(t.name)) {
        if (!(a == o->arg))
          fail("operation " + t.name + " expects " + type_str(o->arg) + ", got " + type_str(a));
        t.ty = o->res;
        t.op_effectful = false;
      } else if (const EffectOpDecl* o2 = sig.eop(t.name)) {
        if (!(a == o2->arg))
          fail("operation " + t.name + " expects " + type_str(o2->arg) + ", got " + type_str(a));
        t.ty = TypeExpr::mk_monadic(o2->res);
        t.op_effectful = true;
      } else {
        fail("unknown operation " + t.name);
      }
      break;
    }
  }
  return t.ty;
}

// --------------------------------------------------------------------------
// Values and the interpreter.

struct MValue;
using Env = std::map<std::string, MValue>;

struct MValue {
  enum Kind { IntV, UnitV, PairV, InlV, InrV, CloV, CompV } kind = UnitV;
  int i = 0;                                   // IntV: base element index
  std::vector<std::shared_ptr<MValue>> sub;    // PairV: 2, InlV/InrV: 1
  // Closure.
  std::string param;
  const MTerm* body = nullptr;
  std::shared_ptr<Env> cenv;
  // Computation over encoded first-order values.
  DC comp;
  TypeExpr payload;  // CompV payload type

  static MValue mk_int(int v) { MValue m; m.kind = IntV; m.i = v; return m; }
  static MValue mk_unit() { return MValue{}; }
  static MValue mk_pair(MValue a, MValue b) {
    MValue m;
    m.kind = PairV;
    m.sub = {std::make_shared<MValue>(std::move(a)), std::make_shared<MValue>(std::move(b))};
    return m;
  }
  static MValue mk_inj(bool left, MValue a) {
    MValue m;
    m.kind = left ? InlV : InrV;
    m.sub = {std::make_shared<MValue>(std::move(a))};
    return m;
  }
};

/// Encodes a structured first-order value as an index into its type's
/// finite carrier; pairs use row-major order, sums are left-then-right.
inline int value_encode(const Signature& sig, const TypeExpr& t, const MValue& v) {
  switch (t.kind) {
    case TypeExpr::Base: return v.i;
    case TypeExpr::Unit: return 0;
    case TypeExpr::Prod:
      return value_encode(sig, t.kids[0], *v.sub[0]) * type_size(sig, t.kids[1]) +
             value_encode(sig, t.kids[1], *v.sub[1]);
    case TypeExpr::Sum:
      return v.kind == MValue::InlV
                 ? value_encode(sig, t.kids[0], *v.sub[0])
                 : type_size(sig, t.kids[0]) + value_encode(sig, t.kids[1], *v.sub[0]);
    default: throw SignatureError("cannot encode value of type " + type_str(t));
  }
}

inline MValue value_decode(const Signature& sig, const TypeExpr& t, int code) {
  switch (t.kind) {
    case TypeExpr::Base: return MValue::mk_int(code);
    case TypeExpr::Unit: return MValue::mk_unit();
    case TypeExpr::Prod: {
      int nb = type_size(sig, t.kids[1]);
      return MValue::mk_pair(value_decode(sig, t.kids[0], code / nb),
                             value_decode(sig, t.kids[1], code % nb));
    }
    case TypeExpr::Sum: {
      int na = type_size(sig, t.kids[0]);
      if (code < na) return MValue::mk_inj(true, value_decode(sig, t.kids[0], code));
      return MValue::mk_inj(false, value_decode(sig, t.kids[1], code - na));
    }
    default: throw SignatureError("cannot decode value of type " + type_str(t));
  }
}

/// Denotational interpreter. The term must have been typechecked (type
/// annotations on nodes are trusted). Computations are finite
/// cost-weighted distributions over encoded payload values; `let`
/// extends along the Kleisli structure with the environment captured
/// in the continuation.
inline MValue interpret(const Signature& sig, const MTerm& t, const Env& env) {
  switch (t.kind) {
    case MTerm::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw UnboundVariable(t.name, t.line, t.col);
      return it->second;
    }
    case MTerm::Lit: {
      const auto& b = sig.base(t.name);
      return MValue::mk_int((int)(t.lit - b.low));
    }
    case MTerm::UnitI:
      return MValue::mk_unit();
    case MTerm::Pair:
      return MValue::mk_pair(interpret(sig, t.kids[0], env),
                             interpret(sig, t.kids[1], env));
    case MTerm::Fst:
      return *interpret(sig, t.kids[0], env).sub[0];
    case MTerm::Snd:
      return *interpret(sig, t.kids[0], env).sub[1];
    case MTerm::Inl:
      return MValue::mk_inj(true, interpret(sig, t.kids[0], env));
    case MTerm::Inr:
      return MValue::mk_inj(false, interpret(sig, t.kids[0], env));
    case MTerm::Match: {
      MValue s = interpret(sig, t.kids[0], env);
      auto sp = t.name.find(' ');
      Env e2 = env;
      if (s.kind == MValue::InlV) {
        e2[t.name.substr(0, sp)] = *s.sub[0];
        return interpret(sig, t.kids[1], e2);
      }
      e2[t.name.substr(sp + 1)] = *s.sub[0];
      return interpret(sig, t.kids[2], e2);
    }
    case MTerm::Absurd:
      throw std::logic_error("value of the empty type materialized");
    case MTerm::Lam: {
      MValue m;
      m.kind = MValue::CloV;
      m.param = t.name;
      m.body = &t.kids[0];
      m.cenv = std::make_shared<Env>(env);
      return m;
    }
    case MTerm::App: {
      MValue f = interpret(sig, t.kids[0], env);
      MValue a = interpret(sig, t.kids[1], env);
      Env e2 = *f.cenv;
      e2[f.param] = std::move(a);
      return interpret(sig, *f.body, e2);
    }
    case MTerm::Ret: {
      MValue a = interpret(sig, t.kids[0], env);
      MValue m;
      m.kind = MValue::CompV;
      m.payload = t.ty.kids[0];
      m.comp = dc_unit(value_encode(sig, t.ty.kids[0], a));
      return m;
    }
    case MTerm::Let: {
      MValue c = interpret(sig, t.kids[0], env);
      const TypeExpr& xty = c.payload;
      MValue m;
      m.kind = MValue::CompV;
      m.payload = t.ty.kids[0];
      m.comp = dc_bind(
          [&](int code) {
            Env e2 = env;
            e2[t.name] = value_decode(sig, xty, code);
            return interpret(sig, t.kids[1], e2).comp;
          },
          c.comp);
      return m;
    }
    case MTerm::Op: {
      MValue a = interpret(sig, t.kids[0], env);
      if (!t.op_effectful) {
        const ValueOpDecl* o = sig.vop(t.name);
        return value_decode(sig, o->res, o->fn(value_encode(sig, o->arg, a)));
      }
      const EffectOpDecl* o = sig.eop(t.name);
      MValue m;
      m.kind = MValue::CompV;
      m.payload = o->res;
      m.comp = o->sem(value_encode(sig, o->arg, a));
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

// --------------------------------------------------------------------------
// Effectful-operation semantics builders.

/// Two-sided geometric noise on a finite integer carrier, mass
/// proportional to ratio^{|step|} with 0 < ratio < 1, folded back into
/// the carrier either by clamping (boundary points absorb the tails)
/// or cyclically (mod the carrier size). Costs are zero. All masses
/// are exact rationals; for adjacent inputs the clamped mechanism
/// satisfies a multiplicative bound of 1/ratio on every event.
inline std::function<DC(int)> geo_semantics(int n, const Rat& ratio,
                                            const std::string& fold) {
  if (!(ratio > 0 && ratio < 1))
    throw SignatureError("geo ratio must be strictly between 0 and 1");
  bool cyclic = fold == "cyclic";
  if (!cyclic && fold != "clamp")
    throw SignatureError("geo fold must be clamp or cyclic");
  return [n, ratio, cyclic](int i) {
    DC out;
    if (n == 1) {
      out.add(Rat(0), 0, Rat(1));
      return out;
    }
    Rat p0 = (1 - ratio) / (1 + ratio);
    if (cyclic) {
      // Residue-class mass: geometric tails re-wrapped mod n.
      Rat rn = rat_pow(ratio, n);
      for (int j = 0; j < n; ++j) {
        int r = ((j - i) % n + n) % n;
        Rat w = r == 0 ? p0 * (1 + 2 * rn / (1 - rn))
                       : p0 * (rat_pow(ratio, r) + rat_pow(ratio, n - r)) / (1 - rn);
        out.add(Rat(0), j, w);
      }
      return out;
    }
    for (int j = 0; j < n; ++j) {
      int d = j > i ? j - i : i - j;
      Rat w;
      if (j == 0 || j == n - 1) {
        // Boundary: the whole one-sided tail at distance >= d.
        w = d == 0 ? Rat(1) / (1 + ratio) : rat_pow(ratio, d) / (1 + ratio);
      } else {
        w = p0 * rat_pow(ratio, d);
      }
      out.add(Rat(0), j, w);
    }
    return out;
  };
}

/// Deterministic cost emission: charge the semantic value of the
/// argument (low + index) and return the unit value.
inline std::function<DC(int)> tick_semantics(int low) {
  return [low](int i) {
    DC out;
    out.add(Rat(low + i), 0, Rat(1));
    return out;
  };
}

/// Noisy cost emission: charge the argument's semantic value plus
/// centered binomial noise (n trials, scaled), returning unit. The
/// noise takes values scale * (k - n/2) with weight C(n,k) / 2^n.
inline std::function<DC(int)> binom_tick_semantics(int low, int trials,
                                                   const Rat& scale) {
  return [low, trials, scale](int i) {
    DC out;
    Rat denom = rat_pow(Rat(2), trials);
    for (int k = 0; k <= trials; ++k) {
      Rat noise = scale * (Rat(k) - Rat(trials) / 2);
      out.add(Rat(low + i) + noise, 0, Rat(binomial(trials, k)) / denom);
    }
    return out;
  };
}

// --------------------------------------------------------------------------
// Signature loading from JSON.

inline int arith_fold(const BaseTypeDecl& b, long v) {
  long lo = b.low, hi = b.low + b.size - 1;
  if (b.arith == "mod") {
    long m = ((v - lo) % b.size + b.size) % b.size;
    return (int)m;
  }
  if (v < lo) v = lo;
  if (v > hi) v = hi;
  return (int)(v - lo);
}

/// Builds a signature from its JSON description: base carriers, value
/// operations over one base (constant add/subtract, pairwise add/
/// subtract, constants, identity), and effectful operations (geo,
/// tick, binom_tick).
inline Signature signature_from_json(const nlohmann::json& j) {
  Signature sig;
  for (const auto& b : j.value("bases", nlohmann::json::array())) {
    BaseTypeDecl d;
    d.name = b.at("name").get<std::string>();
    d.size = b.at("size").get<int>();
    d.low = b.value("low", 0);
    d.arith = b.value("arith", "clamp");
    if (d.size <= 0) throw SignatureError("base carrier must be nonempty");
    sig.bases.push_back(d);
  }
  for (const auto& o : j.value("vops", nlohmann::json::array())) {
    ValueOpDecl d;
    d.name = o.at("name").get<std::string>();
    std::string kind = o.at("kind").get<std::string>();
    const BaseTypeDecl b = sig.base(o.at("base").get<std::string>());
    TypeExpr bt = TypeExpr::mk_base(b.name);
    if (kind == "addc" || kind == "subc") {
      long k = o.at("k").get<long>();
      long s = kind == "addc" ? k : -k;
      d.arg = bt;
      d.res = bt;
      d.fn = [b, s](int i) { return arith_fold(b, (long)b.low + i + s); };
    } else if (kind == "add" || kind == "sub") {
      bool neg = kind == "sub";
      d.arg = TypeExpr::mk_prod(bt, bt);
      d.res = bt;
      int n = b.size;
      d.fn = [b, n, neg](int code) {
        long x = b.low + code / n, y = b.low + code % n;
        return arith_fold(b, neg ? x - y : x + y);
      };
    } else if (kind == "const") {
      long k = o.at("k").get<long>();
      d.arg = TypeExpr::mk_unit();
      d.res = bt;
      d.fn = [b, k](int) { return arith_fold(b, k); };
    } else if (kind == "id") {
      d.arg = bt;
      d.res = bt;
      d.fn = [](int i) { return i; };
    } else {
      throw SignatureError("unknown value-op kind: " + kind);
    }
    sig.vops.push_back(d);
  }
  for (const auto& o : j.value("eops", nlohmann::json::array())) {
    EffectOpDecl d;
    d.name = o.at("name").get<std::string>();
    std::string kind = o.at("kind").get<std::string>();
    const BaseTypeDecl b = sig.base(o.at("base").get<std::string>());
    TypeExpr bt = TypeExpr::mk_base(b.name);
    if (kind == "geo") {
      d.arg = bt;
      d.res = bt;
      d.sem = geo_semantics(b.size, rat_parse(o.at("ratio").get<std::string>()),
                            o.value("fold", "clamp"));
    } else if (kind == "tick") {
      d.arg = bt;
      d.res = TypeExpr::mk_unit();
      d.sem = tick_semantics(b.low);
    } else if (kind == "binom_tick") {
      d.arg = bt;
      d.res = TypeExpr::mk_unit();
      d.sem = binom_tick_semantics(b.low, o.value("n", 64),
                                   rat_parse(o.value("scale", std::string("1/2"))));
    } else {
      throw SignatureError("unknown effectful-op kind: " + kind);
    }
    sig.eops.push_back(d);
  }
  return sig;
}

/// Runs a closed program of computation type and returns its finite
/// cost-weighted outcome distribution.
inline DC run_program(const Signature& sig, MTerm& t, const Env& env,
                      const TypeContext& ctx) {
  TypeExpr ty = typecheck(sig, ctx, t);
  if (ty.kind != TypeExpr::Monadic)
    throw TypeError("program must have computation type, got " + type_str(ty),
                    t.line, t.col);
  return interpret(sig, t, env).comp;
}

}  // namespace divlog
