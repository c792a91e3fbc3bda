#pragma once

// Ground-truth structural causal models and the datasets they induce.
//
// ScmJoint is the fully general model: a distribution over cells
// (response type r, realized treatment t), n^(n+1) of them. FactoredScm is
// a restricted SCM whose potential outcomes are independent given the
// realized treatment; it has O(n^3) parameters and exact truth in
// polynomial time, which is what large-n sweeps need.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "poc/dist.hpp"
#include "poc/error.hpp"
#include "poc/query.hpp"
#include "poc/response_types.hpp"

namespace poc {

namespace rng {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-instance seed: splitmix64 folded over (base, n, k, i).
inline constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t n, std::uint64_t k, std::uint64_t i) noexcept {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ (k << 16));
  h = splitmix64(h ^ (i << 32) ^ (i >> 32));
  return h;
}

/// mt19937_64 with distribution transforms written out, so a seed gives
/// the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential() { return -std::log(uniform()); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 via the u^(1/shape) boost.
  double gamma(double shape) {
    if (shape == 1.0) return exponential();
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Symmetric Dirichlet(alpha) draw of the given length.
  std::vector<double> dirichlet(std::size_t len, double alpha) {
    std::vector<double> w(len);
    double total = 0.0;
    for (double& x : w) {
      x = gamma(alpha);
      total += x;
    }
    for (double& x : w) x /= total;
    return w;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rng

struct ScmJoint {
  std::size_t n = 0;
  /// Indexed by ResponseSpace(n, n).cell(r, t).
  std::vector<double> weights;
};

/// Draws a joint from the flat Dirichlet over all n^(n+1) cells
/// (alpha = 1: normalized unit exponentials).
inline ScmJoint random_joint(std::size_t n, std::uint64_t seed, double alpha = 1.0) {
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "random_joint needs n >= 2");
  const ResponseSpace space(n, n);
  rng::Rng gen(seed);
  return ScmJoint{n, gen.dirichlet(space.n_cells(), alpha)};
}

inline Dataset derive_dataset(const ScmJoint& g) {
  const std::size_t n = g.n;
  const ResponseSpace space(n, n);
  RawDataset raw;
  raw.experimental.assign(n, std::vector<double>(n, 0.0));
  raw.observational.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < space.n_types(); ++r)
    for (std::size_t t = 0; t < n; ++t) {
      const double w = g.weights[space.cell(r, t)];
      raw.observational[t][space.outcome(r, t)] += w;
      for (std::size_t tp = 0; tp < n; ++tp) raw.experimental[tp][space.outcome(r, tp)] += w;
    }
  return validate_dataset(raw);
}

namespace detail {

inline double conditionalize(double joint, const Query& q, double evidence) {
  if (!q.conditional) return joint;
  if (!(evidence > 0.0)) throw Error(ErrorKind::ZeroDenominator, "evidence has probability 0");
  return joint / evidence;
}

}  // namespace detail

inline double true_probability(const ScmJoint& g, const Query& q) {
  check_query(q);
  const ResponseSpace space(g.n, g.n);
  space.check_query(q);
  double joint = 0.0, evidence = 0.0;
  for (std::size_t r = 0; r < space.n_types(); ++r)
    for (std::size_t t = 0; t < g.n; ++t) {
      const double w = g.weights[space.cell(r, t)];
      if (space.in_event(q, r, t)) joint += w;
      if (q.conditional) {
        const bool ex = !q.x_evidence || t == *q.x_evidence;
        const bool ey = !q.y_evidence || space.outcome(r, t) == *q.y_evidence;
        if (ex && ey) evidence += w;
      }
    }
  return detail::conditionalize(joint, q, evidence);
}

/// X ~ px; given X = t, the potential outcomes Y_{t'} are independent with
/// P(Y_{t'} = o | X = t) = resp[t][t'][o].
struct FactoredScm {
  std::size_t n = 0;
  std::vector<double> px;
  std::vector<std::vector<std::vector<double>>> resp;
};

inline FactoredScm random_factored(std::size_t n, std::uint64_t seed, double alpha = 1.0) {
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "random_factored needs n >= 2");
  rng::Rng gen(seed);
  FactoredScm f;
  f.n = n;
  f.px = gen.dirichlet(n, alpha);
  f.resp.assign(n, std::vector<std::vector<double>>(n));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t tp = 0; tp < n; ++tp) f.resp[t][tp] = gen.dirichlet(n, alpha);
  return f;
}

inline Dataset derive_dataset(const FactoredScm& f) {
  const std::size_t n = f.n;
  RawDataset raw;
  raw.experimental.assign(n, std::vector<double>(n, 0.0));
  raw.observational.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t o = 0; o < n; ++o) {
      raw.observational[t][o] = f.px[t] * f.resp[t][t][o];
      for (std::size_t tp = 0; tp < n; ++tp) raw.experimental[tp][o] += f.px[t] * f.resp[t][tp][o];
    }
  return validate_dataset(raw);
}

inline double true_probability(const FactoredScm& f, const Query& q) {
  check_query(q);
  ResponseSpace(f.n, f.n).check_query(q);
  double joint = 0.0, evidence = 0.0;
  for (std::size_t t = 0; t < f.n; ++t) {
    if (q.x_evidence && t != *q.x_evidence) continue;
    double p = f.px[t];
    bool outcome_fixed = false;
    for (const Atom& a : q.atoms) {
      p *= f.resp[t][a.treatment][a.outcome];
      if (a.treatment == t) {
        outcome_fixed = true;
        if (q.y_evidence && a.outcome != *q.y_evidence) p = 0.0;
      }
    }
    if (q.y_evidence && !outcome_fixed) p *= f.resp[t][t][*q.y_evidence];
    joint += p;
    evidence += q.y_evidence ? f.px[t] * f.resp[t][t][*q.y_evidence] : f.px[t];
  }
  return detail::conditionalize(joint, q, evidence);
}

/// A generated instance with its ground truth.
using ScmModel = std::variant<ScmJoint, FactoredScm>;

inline Dataset derive_dataset(const ScmModel& m) {
  return std::visit([](const auto& g) { return derive_dataset(g); }, m);
}

inline double true_probability(const ScmModel& m, const Query& q) {
  return std::visit([&](const auto& g) { return true_probability(g, q); }, m);
}

inline std::string generator_label(const ScmModel& m, double alpha = 1.0) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  if (std::holds_alternative<ScmJoint>(m)) return std::string("joint-dirichlet(alpha=") + buf + ")";
  return std::string("factored-dirichlet(alpha=") + buf + ")";
}

/// Largest n for which sweeps draw the full joint rather than a FactoredScm.
inline constexpr std::size_t kFullJointMaxN = 5;

inline std::string generator_label_for(std::size_t n, double alpha = 1.0) {
  return n <= kFullJointMaxN ? generator_label(ScmJoint{}, alpha) : generator_label(FactoredScm{}, alpha);
}

inline ScmModel random_model(std::size_t n, std::uint64_t seed, double alpha = 1.0) {
  if (n <= kFullJointMaxN) return random_joint(n, seed, alpha);
  return random_factored(n, seed, alpha);
}

/// Experimental rows ~ Dir(alpha) over outcomes and the observational table
/// ~ Dir(alpha) over all cells, redrawn until obs <= exp cellwise (which
/// implies the upper compatibility inequality as well). Shapes may be
/// rectangular.
inline Dataset random_rect_dataset_rejection(std::size_t n_treatments, std::size_t n_outcomes, std::uint64_t seed,
                                             std::size_t max_tries = 1'000'000, double alpha = 1.0,
                                             std::size_t* tries_used = nullptr) {
  if (n_treatments < 2 || n_outcomes < 2) throw Error(ErrorKind::InvalidConfig, "rejection sampler needs sides >= 2");
  rng::Rng gen(seed);
  for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
    RawDataset raw;
    raw.experimental.resize(n_treatments);
    for (auto& row : raw.experimental) row = gen.dirichlet(n_outcomes, alpha);
    const std::vector<double> flat = gen.dirichlet(n_treatments * n_outcomes, alpha);
    raw.observational.assign(n_treatments, std::vector<double>(n_outcomes));
    bool ok = true;
    for (std::size_t t = 0; t < n_treatments; ++t)
      for (std::size_t o = 0; o < n_outcomes; ++o) {
        raw.observational[t][o] = flat[t * n_outcomes + o];
        if (raw.observational[t][o] > raw.experimental[t][o]) ok = false;
      }
    if (!ok) continue;
    if (tries_used) *tries_used = attempt;
    return validate_dataset(raw);
  }
  throw Error(ErrorKind::RejectionBudgetExceeded, "no compatible draw in " + std::to_string(max_tries) + " tries");
}

inline Dataset random_dataset_rejection(std::size_t n, std::uint64_t seed, std::size_t max_tries = 1'000'000,
                                        double alpha = 1.0, std::size_t* tries_used = nullptr) {
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "random_dataset_rejection needs n >= 2");
  return random_rect_dataset_rejection(n, n, seed, max_tries, alpha, tries_used);
}

}  // namespace poc
