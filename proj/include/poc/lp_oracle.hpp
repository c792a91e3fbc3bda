#pragma once

// Balke-style linear programs over (response type, realized treatment)
// cells. The optima are the tight bounds of a query given the experimental
// and observational data; the closed-form bounds are checked against them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "poc/bounds.hpp"
#include "poc/dist.hpp"
#include "poc/error.hpp"
#include "poc/query.hpp"
#include "poc/response_types.hpp"
#include "poc/simplex.hpp"

namespace poc {

using Rational = boost::multiprecision::mpq_rational;

inline constexpr std::size_t kDefaultDimensionCap = 4;

enum class SolveMode { Float, Exact };

/// Small-denominator fraction when it reproduces v to a few ulps (recovers
/// count ratios exactly); otherwise the exact binary value of v.
inline Rational to_rational(double v, std::int64_t max_den = 10'000'000, double rel_tol = 4e-16) {
  if (v == 0.0) return Rational(0);
  const double target = v;
  // Continued-fraction convergents h/k.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = target;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_f = std::floor(x);
    if (a_f > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_f);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - target) <= rel_tol * std::abs(target)) {
      return Rational(h1, k1);
    }
    const double frac = x - a_f;
    if (frac < 1e-18) break;
    x = 1.0 / frac;
  }
  return Rational(v);
}

/// Exact-rational copy of a dataset whose experimental rows and
/// observational table sum to exactly one. Residuals (if any) are absorbed
/// by the largest entry of the row / table.
struct RationalTables {
  std::vector<std::vector<Rational>> exp;
  std::vector<std::vector<Rational>> obs;
};

inline RationalTables rationalize(const Dataset& ds) {
  const Dims& d = ds.dims();
  RationalTables rt;
  rt.exp.assign(d.n_treatments, std::vector<Rational>(d.n_outcomes));
  rt.obs.assign(d.n_treatments, std::vector<Rational>(d.n_outcomes));
  for (std::size_t t = 0; t < d.n_treatments; ++t)
    for (std::size_t o = 0; o < d.n_outcomes; ++o) {
      rt.exp[t][o] = to_rational(ds.exp(t, o));
      rt.obs[t][o] = to_rational(ds.obs(t, o));
    }
  for (std::size_t t = 0; t < d.n_treatments; ++t) {
    Rational sum = 0;
    std::size_t argmax = 0;
    for (std::size_t o = 0; o < d.n_outcomes; ++o) {
      sum += rt.exp[t][o];
      if (rt.exp[t][o] > rt.exp[t][argmax]) argmax = o;
    }
    rt.exp[t][argmax] += Rational(1) - sum;
  }
  Rational total = 0;
  std::size_t bt = 0, bo = 0;
  for (std::size_t t = 0; t < d.n_treatments; ++t)
    for (std::size_t o = 0; o < d.n_outcomes; ++o) {
      total += rt.obs[t][o];
      if (rt.obs[t][o] > rt.obs[bt][bo]) {
        bt = t;
        bo = o;
      }
    }
  rt.obs[bt][bo] += Rational(1) - total;
  return rt;
}

struct LpConstraint {
  std::string label;
  /// Variables with coefficient 1; all others are 0.
  std::vector<std::size_t> support;
  double rhs = 0.0;
  Rational rhs_exact;
};

struct LpProblem {
  Dims dims;
  std::size_t num_vars = 0;
  /// 0/1 objective coefficient per cell.
  std::vector<std::uint8_t> objective;
  std::vector<LpConstraint> constraints;
  lp::Sense sense = lp::Sense::Max;
};

/// Builds the LP for q over ds as given (square or rectangular). Variable
/// (r, t) is the probability that a unit has response type r and realized
/// treatment t.
inline LpProblem build_lp(const Dataset& ds, const Query& q, lp::Sense sense,
                          std::size_t cap = kDefaultDimensionCap) {
  const Dims& d = ds.dims();
  if (d.side() > cap) {
    throw Error(ErrorKind::DimensionCapExceeded,
                "dimension " + std::to_string(d.side()) + " exceeds LP cap " + std::to_string(cap));
  }
  check_query(q);
  const ResponseSpace space(d.n_treatments, d.n_outcomes);
  space.check_query(q);
  const RationalTables rt = rationalize(ds);

  LpProblem lp;
  lp.dims = d;
  lp.sense = sense;
  lp.num_vars = space.n_cells();
  lp.objective.assign(lp.num_vars, 0);
  for (std::size_t r = 0; r < space.n_types(); ++r)
    for (std::size_t t = 0; t < d.n_treatments; ++t)
      if (space.in_event(q, r, t)) lp.objective[space.cell(r, t)] = 1;

  LpConstraint norm{"sum", {}, 1.0, Rational(1)};
  norm.support.resize(lp.num_vars);
  for (std::size_t v = 0; v < lp.num_vars; ++v) norm.support[v] = v;
  lp.constraints.push_back(std::move(norm));

  for (std::size_t tp = 0; tp < d.n_treatments; ++tp)
    for (std::size_t s = 0; s < d.n_outcomes; ++s) {
      LpConstraint c{"exp_" + std::to_string(tp + 1) + "_" + std::to_string(s + 1), {}, ds.exp(tp, s), rt.exp[tp][s]};
      for (std::size_t r = 0; r < space.n_types(); ++r)
        if (space.outcome(r, tp) == s)
          for (std::size_t t = 0; t < d.n_treatments; ++t) c.support.push_back(space.cell(r, t));
      std::sort(c.support.begin(), c.support.end());
      lp.constraints.push_back(std::move(c));
    }
  for (std::size_t t = 0; t < d.n_treatments; ++t)
    for (std::size_t s = 0; s < d.n_outcomes; ++s) {
      LpConstraint c{"obs_" + std::to_string(t + 1) + "_" + std::to_string(s + 1), {}, ds.obs(t, s), rt.obs[t][s]};
      for (std::size_t r = 0; r < space.n_types(); ++r)
        if (space.outcome(r, t) == s) c.support.push_back(space.cell(r, t));
      lp.constraints.push_back(std::move(c));
    }
  return lp;
}

/// Objective value of a point x (one weight per cell).
inline double evaluate_objective(const LpProblem& lp, const std::vector<double>& x) {
  double v = 0.0;
  for (std::size_t i = 0; i < lp.num_vars; ++i)
    if (lp.objective[i]) v += x[i];
  return v;
}

/// Largest |A x - b| over the constraints, for feasibility certificates.
inline double max_constraint_residual(const LpProblem& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const LpConstraint& c : lp.constraints) {
    double s = 0.0;
    for (std::size_t v : c.support) s += x[v];
    worst = std::max(worst, std::abs(s - c.rhs));
  }
  return worst;
}

namespace detail {

// Variables appearing in a zero right-hand-side row are fixed at zero; the
// remaining rows are re-indexed over the surviving columns.
template <class T>
struct Reduced {
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  std::vector<T> c;
};

template <class T>
Reduced<T> presolve(const LpProblem& lp, bool exact) {
  auto rhs_of = [&](const LpConstraint& con) -> T {
    if constexpr (std::is_floating_point_v<T>) {
      return con.rhs;
    } else {
      (void)exact;
      return con.rhs_exact;
    }
  };
  auto is_zero = [&](const LpConstraint& con) {
    if constexpr (std::is_floating_point_v<T>) return con.rhs == 0.0;
    else return con.rhs_exact == 0;
  };

  std::vector<bool> fixed(lp.num_vars, false);
  for (const LpConstraint& con : lp.constraints)
    if (is_zero(con))
      for (std::size_t v : con.support) fixed[v] = true;

  std::vector<std::size_t> column(lp.num_vars, lp.num_vars);
  std::size_t live = 0;
  for (std::size_t v = 0; v < lp.num_vars; ++v)
    if (!fixed[v]) column[v] = live++;

  Reduced<T> red;
  red.c.assign(live, T(0));
  for (std::size_t v = 0; v < lp.num_vars; ++v)
    if (!fixed[v] && lp.objective[v]) red.c[column[v]] = T(1);

  for (const LpConstraint& con : lp.constraints) {
    if (is_zero(con)) continue;
    std::vector<T> row(live, T(0));
    bool any = false;
    for (std::size_t v : con.support)
      if (!fixed[v]) {
        row[column[v]] = T(1);
        any = true;
      }
    if (!any) throw Error(ErrorKind::Infeasible, "constraint " + con.label + " has positive mass but no free cell");
    red.a.push_back(std::move(row));
    red.b.push_back(rhs_of(con));
  }
  return red;
}

template <class T>
double solve_as(const LpProblem& lp) {
  auto red = presolve<T>(lp, !std::is_floating_point_v<T>);
  if (red.c.empty()) return 0.0;
  const auto res = lp::simplex_solve<T>(red.a, red.b, red.c, lp.sense);
  if (res.status == lp::Status::Infeasible) {
    throw Error(ErrorKind::Infeasible, "no SCM reproduces the experimental and observational data");
  }
  if (res.status == lp::Status::Unbounded) throw Error(ErrorKind::Unbounded, "LP over a bounded polytope reported unbounded");
  if constexpr (std::is_floating_point_v<T>) {
    return res.objective;
  } else {
    return res.objective.template convert_to<double>();
  }
}

}  // namespace detail

/// Optimal objective value of lp.
inline double solve(const LpProblem& lp, SolveMode mode = SolveMode::Float) {
  return mode == SolveMode::Exact ? detail::solve_as<Rational>(lp) : detail::solve_as<double>(lp);
}

/// Exact optimum as a rational.
inline Rational solve_exact(const LpProblem& lp) {
  auto red = detail::presolve<Rational>(lp, true);
  if (red.c.empty()) return Rational(0);
  const auto res = lp::simplex_solve<Rational>(red.a, red.b, red.c, lp.sense);
  if (res.status != lp::Status::Optimal) throw Error(ErrorKind::Infeasible, "exact LP not optimal");
  return res.objective;
}

struct OracleOptions {
  std::size_t cap = kDefaultDimensionCap;
  SolveMode mode = SolveMode::Float;
  /// Embed rectangular data into the square formulation first.
  bool squarify = true;
};

/// Tight interval for q from the LP (both senses), divided by the evidence
/// probability for conditional queries.
inline Interval oracle_bounds(const Dataset& ds_in, const Query& q, const OracleOptions& opt = {}) {
  const Dataset ds = opt.squarify ? squarify(ds_in) : ds_in;
  Query joint_q = q;
  joint_q.conditional = false;
  const double lo = solve(build_lp(ds, joint_q, lp::Sense::Min, opt.cap), opt.mode);
  const double hi = solve(build_lp(ds, joint_q, lp::Sense::Max, opt.cap), opt.mode);
  Interval iv{std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0)};
  if (!q.conditional) return iv;
  double den = 0.0;
  if (q.x_evidence && q.y_evidence) den = ds.obs(*q.x_evidence, *q.y_evidence);
  else if (q.x_evidence) den = ds.px(*q.x_evidence);
  else if (q.y_evidence) den = ds.py(*q.y_evidence);
  if (!(den > 0.0)) throw Error(ErrorKind::ZeroDenominator, "evidence has probability 0");
  return Interval{std::min(iv.lower / den, 1.0), std::min(iv.upper / den, 1.0)};
}

/// Plain-text dump, one line per constraint:
///   max: x3 + x7 + ...
///   exp_1_2: x0 + x1 + ... = 231/300
/// Right-hand sides are the exact rationals the exact solver uses.
inline void write_lp_dump(std::ostream& os, const LpProblem& lp) {
  os << "# response-type LP: " << lp.dims.n_treatments << " treatments, " << lp.dims.n_outcomes
     << " outcomes, " << lp.num_vars << " variables x_{r*" << lp.dims.n_treatments << "+t} >= 0\n";
  os << (lp.sense == lp::Sense::Max ? "max:" : "min:");
  bool first = true;
  for (std::size_t v = 0; v < lp.num_vars; ++v)
    if (lp.objective[v]) {
      os << (first ? " " : " + ") << "x" << v;
      first = false;
    }
  if (first) os << " 0";
  os << "\n";
  for (const LpConstraint& c : lp.constraints) {
    os << c.label << ":";
    for (std::size_t i = 0; i < c.support.size(); ++i) os << (i ? " + " : " ") << "x" << c.support[i];
    os << " = " << c.rhs_exact.str() << "\n";
  }
}

}  // namespace poc
