// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// The free term monad over a finite first-order signature. A term is
// either a variable (an element of the carrier) or an operation symbol
// applied to the right number of subterms. Kleisli extension is
// simultaneous substitution.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <functional>
#include <string>
#include <vector>

namespace divlog {

struct TermSig {
  std::vector<std::string> op_names;
  std::vector<int> arities;  // parallel to op_names

  std::size_t size() const { return arities.size(); }
};

struct Term {
  // sym >= 0: operation index into the signature; sym < 0: variable -1-sym.
  int sym = -1;
  std::vector<Term> kids;

  static Term var(int v) { return Term{-1 - v, {}}; }
  static Term op(int o, std::vector<Term> ks) { return Term{o, std::move(ks)}; }
  bool is_var() const { return sym < 0; }
  int var_index() const { return -1 - sym; }

  bool operator==(const Term& o) const {
    return sym == o.sym && kids == o.kids;
  }
};

inline int term_depth(const Term& t) {
  int d = 0;
  for (const auto& k : t.kids) d = std::max(d, term_depth(k) + 1);
  return d;
}

/// Simultaneous substitution: replaces variable v by f[v].
inline Term term_subst(const std::vector<Term>& f, const Term& t) {
  if (t.is_var()) return f[t.var_index()];
  Term r;
  r.sym = t.sym;
  r.kids.reserve(t.kids.size());
  for (const auto& k : t.kids) r.kids.push_back(term_subst(f, k));
  return r;
}

inline std::string term_str(const TermSig& sig, const Term& t) {
  if (t.is_var()) return "x" + std::to_string(t.var_index());
  std::string s = sig.op_names[t.sym];
  if (t.kids.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    if (i) s += ",";
    s += term_str(sig, t.kids[i]);
  }
  return s + ")";
}

/// All terms over n variables with depth at most `depth`.
inline std::vector<Term> term_enumerate(const TermSig& sig, int n, int depth) {
  std::vector<Term> cur;  // terms of depth <= d
  for (int v = 0; v < n; ++v) cur.push_back(Term::var(v));
  for (std::size_t o = 0; o < sig.size(); ++o)
    if (sig.arities[o] == 0) cur.push_back(Term::op((int)o, {}));
  std::vector<Term> all = cur;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Term> next;
    for (std::size_t o = 0; o < sig.size(); ++o) {
      int ar = sig.arities[o];
      if (ar == 0) continue;
      // Tuples of subterms of depth <= d-1, at least one of depth d-1.
      std::vector<Term> tuple(ar);
      std::function<void(int, bool)> go = [&](int i, bool hit) {
        if (i == ar) {
          if (hit) next.push_back(Term::op((int)o, tuple));
          return;
        }
        for (const auto& t : all) {
          int td = term_depth(t);
          if (td > d - 1) continue;
          tuple[i] = t;
          go(i + 1, hit || td == d - 1);
        }
      };
      go(0, false);
    }
    for (auto& t : next) all.push_back(std::move(t));
  }
  return all;
}

/// Parses "x0", "a", "f(x0,a)"-style concrete term syntax against the
/// signature. Variables are x0, x1, ...; anything else must be an
/// operation name with the right number of arguments.
inline Term term_parse(const TermSig& sig, const std::string& src) {
  std::size_t pos = 0;
  std::function<Term()> go = [&]() -> Term {
    while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
    std::string name;
    while (pos < src.size() && (std::isalnum((unsigned char)src[pos]) || src[pos] == '_'))
      name += src[pos++];
    if (name.empty()) throw std::invalid_argument("expected a term at position " + std::to_string(pos));
    if (name[0] == 'x' && name.size() > 1 &&
        name.find_first_not_of("0123456789", 1) == std::string::npos)
      return Term::var(std::stoi(name.substr(1)));
    int op = -1;
    for (std::size_t o = 0; o < sig.size(); ++o)
      if (sig.op_names[o] == name) op = (int)o;
    if (op < 0) throw std::invalid_argument("unknown operation " + name);
    std::vector<Term> kids;
    while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
    if (pos < src.size() && src[pos] == '(') {
      ++pos;
      while (true) {
        kids.push_back(go());
        while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
        if (pos < src.size() && src[pos] == ',') { ++pos; continue; }
        if (pos < src.size() && src[pos] == ')') { ++pos; break; }
        throw std::invalid_argument("expected ',' or ')' at position " + std::to_string(pos));
      }
    }
    if ((int)kids.size() != sig.arities[op])
      throw std::invalid_argument("operation " + name + " expects " +
                                  std::to_string(sig.arities[op]) + " arguments");
    return Term::op(op, std::move(kids));
  };
  Term t = go();
  while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
  if (pos != src.size()) throw std::invalid_argument("trailing input in term");
  return t;
}

/// Parses "f:1,a:0"-style signature descriptions.
inline TermSig termsig_parse(const std::string& src) {
  TermSig sig;
  std::size_t pos = 0;
  while (pos < src.size()) {
    auto colon = src.find(':', pos);
    if (colon == std::string::npos)
      throw std::invalid_argument("signature entries look like name:arity");
    auto comma = src.find(',', colon);
    if (comma == std::string::npos) comma = src.size();
    sig.op_names.push_back(src.substr(pos, colon - pos));
    sig.arities.push_back(std::stoi(src.substr(colon + 1, comma - colon - 1)));
    pos = comma == src.size() ? comma : comma + 1;
  }
  return sig;
}

struct TermMonad {
  using Val = Term;
  TermSig sig;
  int depth = 2;  // enumeration depth bound

  std::string name() const { return "term"; }
  Val unit(int /*n*/, int x) const { return Term::var(x); }
  Val bind(int, int, const std::vector<Val>& f, const Val& c) const {
    return term_subst(f, c);
  }
  std::vector<Val> enumerate(int n) const { return term_enumerate(sig, n, depth); }
  bool equal(const Val& a, const Val& b) const { return a == b; }
  std::string show(const Val& v) const { return term_str(sig, v); }
};

}  // namespace divlog
