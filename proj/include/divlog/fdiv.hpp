// Copyright 2026 The divlog Authors
// SPDX-License-Identifier: Apache-2.0
//
// f-divergences on finite distributions: Div^f(mu1, mu2) =
// sum_x mu2(x) f(mu1(x)/mu2(x)), with the conventions 0 f(0/0) = 0 and,
// at mu2(x) = 0 < mu1(x), a contribution mu1(x) * L where
// L = lim_{t->inf} f(t)/t (the standard f-divergence completion; it is
// infinite for KL and chi-square and 1/2 for TV and Hellinger).
//
// Also: the grid checker for the sufficient composability condition
// with parameters (gamma, alpha, beta, beta').

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "divlog/dist.hpp"
#include "divlog/domains.hpp"
#include "divlog/extended.hpp"

namespace divlog {

struct WeightFunction {
  std::string name;
  // Composability parameters.
  Rat gamma, alpha, beta, betap;
  // Exact evaluator t |-> f(t), when f is rational-valued on rationals.
  std::function<Rat(const Rat&)> f_exact;
  // Double evaluator (always present).
  std::function<double(double)> f_approx;
  // L = lim_{t->inf} f(t)/t.
  Ext limit_slope;

  bool exact() const { return static_cast<bool>(f_exact); }
};

inline WeightFunction weight_tv() {
  WeightFunction w;
  w.name = "tv";
  w.gamma = 0; w.alpha = 0; w.beta = 1; w.betap = 0;
  w.f_exact = [](const Rat& t) { return (t >= 1 ? t - 1 : Rat(1) - t) / 2; };
  w.f_approx = [](double t) { return std::fabs(t - 1.0) / 2.0; };
  w.limit_slope = Ext::rational(rat(1, 2));
  return w;
}

inline WeightFunction weight_kl() {
  WeightFunction w;
  w.name = "kl";
  w.gamma = 0; w.alpha = -1; w.beta = 1; w.betap = 1;
  w.f_approx = [](double t) { return t <= 0.0 ? 1.0 : t * std::log(t) - t + 1.0; };
  w.limit_slope = Ext::pos_inf();
  return w;
}

inline WeightFunction weight_hd() {
  WeightFunction w;
  w.name = "hd";
  w.gamma = 0; w.alpha = rat(-1, 4); w.beta = rat(1, 2); w.betap = rat(1, 2);
  w.f_approx = [](double t) {
    double s = std::sqrt(std::max(t, 0.0)) - 1.0;
    return s * s / 2.0;
  };
  w.limit_slope = Ext::rational(rat(1, 2));
  return w;
}

// Note: the weight is (t-1)^2 with no factor 1/2. This matches the
// chi-square divergence sum (mu1-mu2)^2/mu2 and is the scaling under
// which the parameter tuple (1, -2, 2, 2) satisfies the composability
// identity (with a half the gamma term would be scaled wrongly).
inline WeightFunction weight_chi2() {
  WeightFunction w;
  w.name = "chi2";
  w.gamma = 1; w.alpha = -2; w.beta = 2; w.betap = 2;
  w.f_exact = [](const Rat& t) { return (t - 1) * (t - 1); };
  w.f_approx = [](double t) { return (t - 1.0) * (t - 1.0); };
  w.limit_slope = Ext::pos_inf();
  return w;
}

inline WeightFunction weight_by_name(const std::string& n) {
  if (n == "tv") return weight_tv();
  if (n == "kl") return weight_kl();
  if (n == "hd") return weight_hd();
  if (n == "chi2") return weight_chi2();
  throw std::invalid_argument("unknown weight function: " + n);
}

/// One term x2 * f(x1/x2) with the stated conventions, as an extended
/// value (exact when the weight has an exact evaluator).
inline Ext fdiv_term(const WeightFunction& w, const Rat& x1, const Rat& x2) {
  if (x2 == 0) {
    if (x1 == 0) return Ext::integer(0);
    return ext_mul(Ext::rational(x1), w.limit_slope);
  }
  if (w.exact()) return Ext::rational(x2 * w.f_exact(x1 / x2));
  return Ext::real(static_cast<double>(x2) *
                   w.f_approx(static_cast<double>(x1 / x2)));
}

/// Div^f(mu1, mu2) over a common carrier.
inline Ext eval_fdiv(const WeightFunction& w, const Dist& mu1, const Dist& mu2) {
  Ext acc = Ext::integer(0);
  for (std::size_t i = 0; i < mu1.w.size(); ++i)
    acc = ext_add(acc, fdiv_term(w, mu1.w[i], mu2.w[i]));
  return acc;
}

// ---------------------------------------------------------------------------
// Grid check of the composability condition.

struct FdivGridReport {
  bool passed = true;
  std::uint64_t cases = 0;
  double worst_slack = HUGE_VAL;  // min over grid of RHS - LHS (finite cases)
  std::string witness;            // first violated grid point, if any
};

namespace detail {
/// term x * f(z/x) with 0 f(0/0) = 0 and z * L at x = 0 < z, as Ext.
inline Ext grid_term(const WeightFunction& w, const Rat& x, const Rat& z) {
  if (x == 0) {
    if (z == 0) return Ext::integer(0);
    return ext_mul(Ext::rational(z), w.limit_slope);
  }
  if (w.exact()) return Ext::rational(x * w.f_exact(z / x));
  return Ext::real(static_cast<double>(x) *
                   w.f_approx(static_cast<double>(z / x)));
}

/// Signed coefficient times a nonnegative extended term; 0 * inf = 0,
/// and a negative coefficient flips +inf to -inf.
inline Ext mul_signed(const Rat& coeff, const Ext& term) {
  if (coeff == 0) return Ext::integer(0);
  if (term.kind == ExtKind::PosInf)
    return coeff > 0 ? Ext::pos_inf() : Ext::neg_inf();
  if (term.kind == ExtKind::Rational) return Ext::rational(coeff * term.q);
  return Ext::real(static_cast<double>(coeff) * term.approx());
}

/// Sum of upper-bound terms: any +inf summand dominates (the bound is
/// then trivially true), otherwise -inf dominates, otherwise finite.
inline Ext sum_upper(const std::vector<Ext>& terms) {
  bool neg = false;
  for (const auto& t : terms) {
    if (t.kind == ExtKind::PosInf) return Ext::pos_inf();
    if (t.kind == ExtKind::NegInf) neg = true;
  }
  if (neg) return Ext::neg_inf();
  Ext acc = Ext::integer(0);
  for (const auto& t : terms) acc = ext_add(acc, t);
  return acc;
}
}  // namespace detail

/// Checks both displayed inequalities of the composability condition,
/// for all x, y, z, w on the grid {0, 1/step_den, ..., 2}, within tol
/// (exact where the weight evaluates exactly and no infinity appears).
/// The grid deliberately extends past 1: the inequalities quantify over
/// nonnegative densities, not only probabilities.
inline FdivGridReport check_fdiv_parameters(const WeightFunction& w,
                                            int step_den = 10,
                                            double tol = 1e-9) {
  FdivGridReport rep;
  std::vector<Rat> grid;
  for (int i = 0; i <= 2 * step_den; ++i) grid.push_back(Rat(i, step_den));
  Ext g = Ext::rational(w.gamma);

  // The witness location is built lazily: it is only needed on the
  // first violation, and formatting it eagerly would dominate the run.
  auto record = [&](const Ext& lhs, const Ext& rhs, auto&& where) {
    ++rep.cases;
    if (!ext_leq(lhs, rhs, tol)) {
      if (rep.passed)
        rep.witness = where() + "  lhs=" + ext_str(lhs) + " rhs=" + ext_str(rhs);
      rep.passed = false;
      return;
    }
    if (lhs.is_finite() && rhs.is_finite())
      rep.worst_slack = std::min(rep.worst_slack, rhs.approx() - lhs.approx());
  };

  // First inequality: 0 <= (beta' z + (1-beta') x) + gamma * x f(z/x).
  for (const Rat& x : grid)
    for (const Rat& z : grid) {
      Ext lin = Ext::rational(w.betap * z + (1 - w.betap) * x);
      Ext rhs = detail::sum_upper({lin, ext_mul(g, detail::grid_term(w, x, z))});
      record(Ext::integer(0), rhs, [&] {
        return "ineq1 x=" + rat_str(x) + " z=" + rat_str(z);
      });
    }

  // Second inequality, over all grid points (x, y, z, w). The grid
  // terms x f(z/x) are memoized: the right-hand side only ever uses
  // them at grid pairs, and the left-hand side at pairs of products,
  // which are determined by the integer numerators alone.
  const int n = 2 * step_den + 1;
  std::vector<Ext> pair_term(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      pair_term[static_cast<std::size_t>(i) * n + k] =
          detail::grid_term(w, grid[i], grid[k]);
  const int pn = (n - 1) * (n - 1) + 1;  // product numerators 0 .. (2 step_den)^2
  const Rat psq(1, static_cast<std::int64_t>(step_den) * step_den);
  std::vector<char> have(static_cast<std::size_t>(pn) * pn, 0);
  std::vector<Ext> prod_term(static_cast<std::size_t>(pn) * pn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Ext& txz = pair_term[static_cast<std::size_t>(i) * n + k];
        Rat coef2 = w.betap * grid[k] + (1 - w.betap) * grid[i];
        Rat xz = grid[i] - grid[k];
        for (int l = 0; l < n; ++l) {
          const Ext& tyv = pair_term[static_cast<std::size_t>(j) * n + l];
          std::size_t pidx =
              static_cast<std::size_t>(i * j) * pn + static_cast<std::size_t>(k * l);
          if (!have[pidx]) {
            prod_term[pidx] = detail::grid_term(w, Rat(i * j) * psq, Rat(k * l) * psq);
            have[pidx] = 1;
          }
          Ext t1 =
              detail::mul_signed(w.beta * grid[l] + (1 - w.beta) * grid[j], txz);
          Ext t2 = detail::mul_signed(coef2, tyv);
          Ext t3 = ext_mul(g, ext_mul(txz, tyv));
          Ext t4 = detail::mul_signed(w.alpha, Ext::rational(xz * (grid[l] - grid[j])));
          Ext rhs = detail::sum_upper({t1, t2, t3, t4});
          record(prod_term[pidx], rhs, [&] {
            return "ineq2 x=" + rat_str(grid[i]) + " y=" + rat_str(grid[j]) +
                   " z=" + rat_str(grid[k]) + " w=" + rat_str(grid[l]);
          });
        }
      }
  return rep;
}

}  // namespace divlog
