#pragma once

// Closed-form bounds for the four canonical families of multi-valued
// probabilities of causation:
//
//   PNS(k)      P(y_{o_1}[x_{t_1}], ..., y_{o_k}[x_{t_k}])
//   PSub(k,p)   ... joined with the realized treatment x_p
//   PRep(k,q)   ... joined with the realized outcome y_q
//   PN(k,p,q)   ... joined with both
//
// Everything is evaluated per canonical slot j (treatment t_j, queried
// outcome o_j):
//   E_j = P(y_{o_j} | do(x_{t_j}))   O_j = P(x_{t_j}, y_{o_j})
//   X_j = P(x_{t_j})                 d_j = E_j - O_j
//   S_j = E_j + X_j - O_j            (probability of "atom j or X = t_j")

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "poc/dist.hpp"
#include "poc/error.hpp"
#include "poc/query.hpp"

namespace poc {

inline constexpr double kInfeasibleGap = 1e-7;

struct Interval {
  double lower = 0.0;
  double upper = 1.0;

  double width() const noexcept { return upper - lower; }
  bool contains(double v, double tol = 0.0) const noexcept { return v >= lower - tol && v <= upper + tol; }
  /// this ⊆ outer, up to tol at each endpoint.
  bool within(const Interval& outer, double tol = 0.0) const noexcept {
    return lower >= outer.lower - tol && upper <= outer.upper + tol;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Candidate {
  std::string label;
  double value = 0.0;
};

struct BoundReport {
  Family family = Family::PNS;
  Interval interval;
  /// Bounds on the joint event; equals `interval` for non-conditional queries.
  Interval joint;
  std::vector<Candidate> lower_candidates;
  std::vector<Candidate> upper_candidates;
  std::string active_lower;
  std::string active_upper;
  std::optional<double> denominator;
  /// Max lower candidate exceeds min upper candidate by more than
  /// kInfeasibleGap: the data are not consistent with any SCM.
  bool infeasible = false;
};

namespace detail {

struct SlotTerms {
  std::vector<double> e, o, x, d, s;
  double sum_e = 0.0;
  double sum_s = 0.0;
};

inline SlotTerms slot_terms(const Dataset& ds, const CanonicalQuery& cq) {
  SlotTerms st;
  for (std::size_t j = 0; j < cq.k; ++j) {
    const std::size_t t = cq.treatment(j);
    const std::size_t o = cq.outcome_map[j];
    const double e = ds.exp(t, o);
    const double ob = ds.obs(t, o);
    const double x = ds.px(t);
    st.e.push_back(e);
    st.o.push_back(ob);
    st.x.push_back(x);
    st.d.push_back(e - ob);
    st.s.push_back(e + x - ob);
    st.sum_e += e;
    st.sum_s += e + x - ob;
  }
  return st;
}

inline std::string slot_label(const char* base, const char* var, std::size_t idx) {
  return std::string(base) + "_" + var + "=" + std::to_string(idx);
}

inline void check_family(const CanonicalQuery& cq, Family expected) {
  if (cq.family != expected) {
    throw Error(ErrorKind::FamilyMismatch, "query is " + std::string(to_string(cq.family)) + ", operation expects " +
                                               std::string(to_string(expected)));
  }
}

inline void check_shape(const Dataset& ds, const CanonicalQuery& cq) {
  const Dims& d = ds.dims();
  if (!d.square()) throw Error(ErrorKind::ShapeMismatch, "closed-form bounds need a square dataset; squarify first");
  if (cq.k > d.n_treatments) throw Error(ErrorKind::DimensionTooSmall, "k exceeds n");
  if (cq.n() != d.n_treatments) {
    throw Error(ErrorKind::ShapeMismatch, "canonical query built for n=" + std::to_string(cq.n()) +
                                              ", dataset has n=" + std::to_string(d.n_treatments));
  }
}

inline double evidence_denominator(const Dataset& ds, const CanonicalQuery& cq) {
  switch (cq.family) {
    case Family::PSUB: return ds.px(cq.treatment(*cq.p_slot));
    case Family::PREP: return ds.py(*cq.q_outcome);
    case Family::PN: return ds.obs(cq.treatment(*cq.p_slot), *cq.q_outcome);
    case Family::PNS: break;
  }
  throw Error(ErrorKind::ZeroDenominator, "conditional query without evidence");
}

// Picks the active candidates, clamps, flags inconsistency, and divides by
// the evidence probability for conditional queries.
inline BoundReport finalize(BoundReport r, const Dataset& ds, const CanonicalQuery& cq) {
  auto lo = std::max_element(r.lower_candidates.begin(), r.lower_candidates.end(),
                             [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  auto hi = std::min_element(r.upper_candidates.begin(), r.upper_candidates.end(),
                             [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  r.active_lower = lo->label;
  r.active_upper = hi->label;
  r.infeasible = lo->value > hi->value + kInfeasibleGap;
  r.joint = Interval{std::clamp(lo->value, 0.0, 1.0), std::clamp(hi->value, 0.0, 1.0)};
  r.interval = r.joint;
  if (cq.conditional) {
    const double den = evidence_denominator(ds, cq);
    if (!(den > 0.0)) throw Error(ErrorKind::ZeroDenominator, "evidence has probability 0");
    r.denominator = den;
    r.interval = Interval{std::min(r.joint.lower / den, 1.0), std::min(r.joint.upper / den, 1.0)};
  }
  return r;
}

}  // namespace detail

/// PNS(k) bounds.
inline BoundReport pns_k_bounds(const Dataset& ds, const CanonicalQuery& cq) {
  detail::check_family(cq, Family::PNS);
  detail::check_shape(ds, cq);
  const std::size_t k = cq.k;
  const double kd = static_cast<double>(k);
  const auto st = detail::slot_terms(ds, cq);

  BoundReport r;
  r.family = Family::PNS;
  r.lower_candidates.push_back({"L0", 0.0});
  r.lower_candidates.push_back({"L1", st.sum_e - kd + 1.0});
  for (std::size_t i = 0; i < k; ++i) {
    r.lower_candidates.push_back(
        {detail::slot_label("L2", "i", i + 1), st.sum_s - st.s[i] + st.o[i] - kd + 1.0});
  }

  double u0 = 0.0;
  for (std::size_t j = 0; j < k; ++j) u0 += st.o[j];
  for (std::size_t j = k; j < cq.n(); ++j) u0 += ds.px(cq.treatment(j));
  r.upper_candidates.push_back({"U0", u0});
  for (std::size_t j = 0; j < k; ++j) r.upper_candidates.push_back({detail::slot_label("U1", "j", j + 1), st.e[j]});
  // Minimum over (m+1)-subsets of sum d_t is the sorted prefix.
  std::vector<double> d_sorted = st.d;
  std::sort(d_sorted.begin(), d_sorted.end());
  double prefix = d_sorted.empty() ? 0.0 : d_sorted[0];
  for (std::size_t m = 1; m < k; ++m) {
    prefix += d_sorted[m];
    r.upper_candidates.push_back({detail::slot_label("U2", "m", m), prefix / static_cast<double>(m)});
  }
  return detail::finalize(std::move(r), ds, cq);
}

/// PSub(k,p) bounds.
inline BoundReport psub_bounds(const Dataset& ds, const CanonicalQuery& cq) {
  detail::check_family(cq, Family::PSUB);
  detail::check_shape(ds, cq);
  if (*cq.p_slot < cq.k) throw Error(ErrorKind::EvidenceConflict, "x-evidence coincides with an atom treatment");
  const double kd = static_cast<double>(cq.k);
  const auto st = detail::slot_terms(ds, cq);
  const double px = ds.px(cq.treatment(*cq.p_slot));

  BoundReport r;
  r.family = Family::PSUB;
  r.lower_candidates.push_back({"L0", 0.0});
  r.lower_candidates.push_back({"L1", st.sum_s + px - kd});
  r.upper_candidates.push_back({"U0", px});
  for (std::size_t j = 0; j < cq.k; ++j) r.upper_candidates.push_back({detail::slot_label("U1", "j", j + 1), st.d[j]});
  return detail::finalize(std::move(r), ds, cq);
}

/// PRep(k,q) bounds.
///
/// Slots whose queried outcome equals the evidence outcome q are "matching":
/// for a unit with X = t_j such a slot's atom is implied by Y = q, for any
/// other slot it is excluded. On diagonal queries the matching set is {q}
/// when q <= k and empty otherwise.
inline BoundReport prep_bounds(const Dataset& ds, const CanonicalQuery& cq) {
  detail::check_family(cq, Family::PREP);
  detail::check_shape(ds, cq);
  const std::size_t k = cq.k;
  const double kd = static_cast<double>(k);
  const std::size_t q = *cq.q_outcome;
  const auto st = detail::slot_terms(ds, cq);

  std::vector<bool> matching(k, false);
  // P(Y = q, X in {non-atom treatments} ∪ {t_j : j matching}).
  double column = 0.0;
  for (std::size_t j = k; j < cq.n(); ++j) column += ds.obs(cq.treatment(j), q);
  for (std::size_t j = 0; j < k; ++j) {
    if (cq.outcome_map[j] == q) {
      matching[j] = true;
      column += st.o[j];
    }
  }

  BoundReport r;
  r.family = Family::PREP;
  r.lower_candidates.push_back({"L0", 0.0});
  r.lower_candidates.push_back({"L1", st.sum_s + column - kd});
  for (std::size_t j = 0; j < k; ++j)
    if (matching[j])
      r.lower_candidates.push_back(
          {detail::slot_label("L2", "j", j + 1), st.sum_s - st.s[j] + st.o[j] - (kd - 1.0)});

  r.upper_candidates.push_back({"U0", column});
  for (std::size_t j = 0; j < k; ++j)
    if (matching[j]) r.upper_candidates.push_back({detail::slot_label("U1", "j", j + 1), st.e[j]});
  for (std::size_t j = 0; j < k; ++j)
    if (!matching[j]) r.upper_candidates.push_back({detail::slot_label("U2", "j", j + 1), st.d[j]});
  // The event implies the bare conjunction, so the PNS subset-sum candidates
  // carry over; they can bind once two or more slots are matching.
  std::vector<double> d_sorted = st.d;
  std::sort(d_sorted.begin(), d_sorted.end());
  double prefix = d_sorted.empty() ? 0.0 : d_sorted[0];
  for (std::size_t m = 1; m < k; ++m) {
    prefix += d_sorted[m];
    r.upper_candidates.push_back({detail::slot_label("U3", "m", m), prefix / static_cast<double>(m)});
  }
  return detail::finalize(std::move(r), ds, cq);
}

/// PN(k,p,q) bounds.
inline BoundReport pn_bounds(const Dataset& ds, const CanonicalQuery& cq) {
  detail::check_family(cq, Family::PN);
  detail::check_shape(ds, cq);
  if (*cq.p_slot < cq.k) throw Error(ErrorKind::EvidenceConflict, "x-evidence coincides with an atom treatment");
  const double kd = static_cast<double>(cq.k);
  const auto st = detail::slot_terms(ds, cq);
  const double pxy = ds.obs(cq.treatment(*cq.p_slot), *cq.q_outcome);

  BoundReport r;
  r.family = Family::PN;
  r.lower_candidates.push_back({"L0", 0.0});
  r.lower_candidates.push_back({"L1", st.sum_s + pxy - kd});
  r.upper_candidates.push_back({"U0", pxy});
  for (std::size_t j = 0; j < cq.k; ++j) r.upper_candidates.push_back({detail::slot_label("U1", "j", j + 1), st.d[j]});
  return detail::finalize(std::move(r), ds, cq);
}

/// Fréchet-only interval: the conjunction of the atom events and (as one
/// extra conjunct) the evidence event. Comparison baseline for the harness.
inline Interval frechet_baseline(const Dataset& ds, const CanonicalQuery& cq) {
  double sum = 0.0;
  double upper = 1.0;
  for (std::size_t j = 0; j < cq.k; ++j) {
    const double e = ds.exp(cq.treatment(j), cq.outcome_map[j]);
    sum += e;
    upper = std::min(upper, e);
  }
  double terms = static_cast<double>(cq.k);
  std::optional<double> evidence;
  if (cq.p_slot && cq.q_outcome) {
    evidence = ds.obs(cq.treatment(*cq.p_slot), *cq.q_outcome);
  } else if (cq.p_slot) {
    evidence = ds.px(cq.treatment(*cq.p_slot));
  } else if (cq.q_outcome) {
    evidence = ds.py(*cq.q_outcome);
  }
  if (evidence) {
    sum += *evidence;
    terms += 1.0;
  }
  if (cq.p_slot) upper = std::min(upper, ds.px(cq.treatment(*cq.p_slot)));
  if (cq.q_outcome) upper = std::min(upper, ds.py(*cq.q_outcome));
  Interval joint{std::clamp(sum - terms + 1.0, 0.0, 1.0), std::clamp(upper, 0.0, 1.0)};
  if (cq.conditional && evidence && *evidence > 0.0) {
    return Interval{std::min(joint.lower / *evidence, 1.0), std::min(joint.upper / *evidence, 1.0)};
  }
  return joint;
}

/// Dispatches on an already-canonical query over a square dataset.
inline BoundReport family_bounds(const Dataset& ds, const CanonicalQuery& cq) {
  switch (cq.family) {
    case Family::PNS: return pns_k_bounds(ds, cq);
    case Family::PSUB: return psub_bounds(ds, cq);
    case Family::PREP: return prep_bounds(ds, cq);
    case Family::PN: return pn_bounds(ds, cq);
  }
  throw Error(ErrorKind::FamilyMismatch, "unknown family");
}

/// squarify -> canonicalize -> family bounds -> conditional division.
inline BoundReport bound_query(const Dataset& ds, const Query& q) {
  const Dataset sq = squarify(ds);
  return family_bounds(sq, canonicalize(q, sq.dims()));
}

}  // namespace poc
