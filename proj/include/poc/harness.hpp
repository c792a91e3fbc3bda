#pragma once

// Batch experiments: dimension sweeps against the Frechet baseline,
// tightness verification against the LP oracle, and plot-data selection.
// Every instance derives its own seed from (base_seed, n, k, index), so
// results do not depend on the number of worker threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "poc/bounds.hpp"
#include "poc/error.hpp"
#include "poc/json_io.hpp"
#include "poc/lp_oracle.hpp"
#include "poc/query.hpp"
#include "poc/scm.hpp"

namespace poc {

inline constexpr double kSoundnessTol = 1e-9;

/// "%.12g"; the CSV number format.
inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Value as it reads back from a CSV cell.
inline double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

/// Runs fn(i) for i in [0, count) on `threads` workers and returns the
/// results in index order.
template <class Fn>
auto ordered_map(std::size_t count, std::size_t threads, Fn fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    const std::size_t workers = std::min(threads, count);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            slots[i].emplace(fn(i));
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// Query generation

/// Atom count actually used for a family at side n: evidence-on-treatment
/// families need a treatment outside the atoms.
inline std::size_t family_k(Family f, std::size_t n, std::size_t k) {
  const bool x_ev = f == Family::PSUB || f == Family::PN;
  return x_ev ? std::min(k, n - 1) : std::min(k, n);
}

/// y_j under x_j for j = 1..k; x-evidence x_{k+1}, y-evidence y_1.
inline Query diagonal_query(Family f, std::size_t n, std::size_t k, bool conditional = false) {
  const std::size_t kk = family_k(f, n, k);
  Query q;
  for (std::size_t j = 0; j < kk; ++j) q.atoms.push_back({j, j});
  if (f == Family::PSUB || f == Family::PN) q.x_evidence = kk;
  if (f == Family::PREP || f == Family::PN) q.y_evidence = 0;
  q.conditional = conditional && q.has_evidence();
  return q;
}

/// Random treatments, outcomes (substitutions) and evidence for family f.
inline Query random_query(Family f, std::size_t n, std::size_t k, std::uint64_t seed) {
  rng::Rng gen(seed);
  const std::size_t kk = family_k(f, n, k);
  auto below = [&](std::size_t m) { return std::min(m - 1, static_cast<std::size_t>(gen.uniform() * m)); };
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[below(i + 1)]);
  Query q;
  for (std::size_t j = 0; j < kk; ++j) q.atoms.push_back({perm[j], below(n)});
  if (f == Family::PSUB || f == Family::PN) q.x_evidence = perm[kk + below(n - kk)];
  if (f == Family::PREP || f == Family::PN) q.y_evidence = below(n);
  q.conditional = q.has_evidence() && gen.uniform() < 0.5;
  return q;
}

inline std::uint64_t family_seed(std::uint64_t instance_seed, Family f, std::uint64_t j) {
  return rng::splitmix64(instance_seed ^ rng::splitmix64((static_cast<std::uint64_t>(f) + 1) * 1000 + j));
}

// ---------------------------------------------------------------------------
// Sweeps

enum class Generator {
  /// Full joint for n <= kFullJointMaxN, FactoredScm above.
  Scm,
  Joint,
  Factored,
  /// Compatible datasets drawn directly (no ground truth).
  Rejection,
};

inline std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::Scm: return "scm";
    case Generator::Joint: return "joint";
    case Generator::Factored: return "factored";
    case Generator::Rejection: return "rejection";
  }
  return "?";
}

inline std::optional<Generator> generator_from_string(std::string_view s) {
  for (Generator g : {Generator::Scm, Generator::Joint, Generator::Factored, Generator::Rejection})
    if (to_string(g) == s) return g;
  return std::nullopt;
}

inline std::string generator_label(Generator g, std::size_t n, double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  switch (g) {
    case Generator::Scm: return generator_label_for(n, alpha);
    case Generator::Joint: return generator_label(ScmJoint{}, alpha);
    case Generator::Factored: return generator_label(FactoredScm{}, alpha);
    case Generator::Rejection: return std::string("rejection-dirichlet(alpha=") + buf + ")";
  }
  return "?";
}

struct SweepConfig {
  std::size_t n_min = 3;
  std::size_t n_max = 3;
  std::size_t k = 3;
  std::size_t instances = 1000;
  std::uint64_t base_seed = 0;
  std::vector<Family> families{Family::PNS};
  /// LP cross-check when n <= cap.
  bool oracle = false;
  std::size_t cap = kDefaultDimensionCap;
  /// Seeded random substitutions instead of the diagonal query.
  bool substitute = false;
  double alpha = 1.0;
  Generator generator = Generator::Scm;
  std::size_t threads = 1;
  std::filesystem::path output_path;
};

inline void validate_config(const SweepConfig& c) {
  if (!(2 <= c.k && c.k <= c.n_min && c.n_min <= c.n_max)) {
    throw Error(ErrorKind::InvalidConfig, "need 2 <= k <= n_min <= n_max");
  }
  if (c.instances == 0) throw Error(ErrorKind::InvalidConfig, "instances must be positive");
  if (c.families.empty()) throw Error(ErrorKind::InvalidConfig, "no families selected");
  if (!(c.alpha > 0.0)) throw Error(ErrorKind::InvalidConfig, "alpha must be positive");
}

struct InstanceRecord {
  std::size_t n = 0, k = 0, index = 0;
  std::uint64_t seed = 0;
  Family family = Family::PNS;
  std::string query;
  Interval cf, baseline;
  std::optional<Interval> lp;
  std::optional<double> true_value;
  std::string active_lower, active_upper;
};

/// Containment problems of one record (empty when sound).
inline std::vector<std::string> record_violations(const InstanceRecord& r, double tol = kSoundnessTol) {
  std::vector<std::string> out;
  if (!r.cf.within(r.baseline, tol)) out.push_back("closed-form not inside baseline");
  if (r.lp && !r.lp->within(r.cf, tol)) out.push_back("LP interval not inside closed-form");
  if (r.true_value) {
    if (!r.cf.contains(*r.true_value, tol)) out.push_back("true value outside closed-form");
    if (r.lp && !r.lp->contains(*r.true_value, tol)) out.push_back("true value outside LP");
  }
  return out;
}

struct SummaryRow {
  std::size_t n = 0;
  Family family = Family::PNS;
  std::size_t instances = 0;
  std::string generator;
  double mean_cf_gap = 0, mean_base_gap = 0, mean_lower_increase = 0, mean_upper_decrease = 0;
  std::size_t narrower = 0;
  std::size_t violations = 0;
};

struct SweepResult {
  std::vector<InstanceRecord> records;
  std::vector<SummaryRow> summary;
  /// First few violation diagnostics.
  std::vector<std::string> diagnostics;
  std::size_t total_violations() const {
    std::size_t v = 0;
    for (const auto& s : summary) v += s.violations;
    return v;
  }
};

inline const char* kCsvHeader =
    "n,k,index,seed,family,query,cf_lb,cf_ub,base_lb,base_ub,lp_lb,lp_ub,true_value,active_lb,active_ub\n";
inline const char* kSummaryHeader =
    "n,family,instances,generator,baseline,mean_cf_gap,mean_base_gap,mean_lower_increase,mean_upper_decrease,"
    "narrower_count,violations\n";

inline std::string csv_row(const InstanceRecord& r) {
  std::string s;
  s += std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.index) + "," + std::to_string(r.seed);
  s += "," + std::string(to_string(r.family)) + ",\"" + r.query + "\"";
  s += "," + fmt12(r.cf.lower) + "," + fmt12(r.cf.upper) + "," + fmt12(r.baseline.lower) + "," + fmt12(r.baseline.upper);
  s += "," + (r.lp ? fmt12(r.lp->lower) : "") + "," + (r.lp ? fmt12(r.lp->upper) : "");
  s += "," + (r.true_value ? fmt12(*r.true_value) : "");
  s += "," + r.active_lower + "," + r.active_upper + "\n";
  return s;
}

inline std::string summary_row(const SummaryRow& s) {
  return std::to_string(s.n) + "," + std::string(to_string(s.family)) + "," + std::to_string(s.instances) + "," +
         s.generator + ",frechet," + fmt12(s.mean_cf_gap) + "," + fmt12(s.mean_base_gap) + "," +
         fmt12(s.mean_lower_increase) + "," + fmt12(s.mean_upper_decrease) + "," + std::to_string(s.narrower) + "," +
         std::to_string(s.violations) + "\n";
}

/// Summary over records of one (n, family), from the 12-digit values that
/// the CSV holds so the summary can be recomputed from the CSV exactly.
inline SummaryRow summarize(const std::vector<const InstanceRecord*>& recs, std::string generator) {
  SummaryRow s;
  if (recs.empty()) return s;
  s.n = recs.front()->n;
  s.family = recs.front()->family;
  s.instances = recs.size();
  s.generator = std::move(generator);
  double cf_gap = 0, base_gap = 0, inc = 0, dec = 0;
  for (const InstanceRecord* r : recs) {
    const double a = round12(r->cf.lower), b = round12(r->cf.upper);
    const double la = round12(r->baseline.lower), lb = round12(r->baseline.upper);
    cf_gap += b - a;
    base_gap += lb - la;
    inc += a - la;
    dec += lb - b;
    if (b - a < lb - la) ++s.narrower;
    if (!record_violations(*r).empty()) ++s.violations;
  }
  const double m = static_cast<double>(recs.size());
  s.mean_cf_gap = cf_gap / m;
  s.mean_base_gap = base_gap / m;
  s.mean_lower_increase = inc / m;
  s.mean_upper_decrease = dec / m;
  return s;
}

inline std::vector<InstanceRecord> sweep_instance(const SweepConfig& cfg, std::size_t n, std::size_t index) {
  const std::uint64_t seed = rng::mix_seed(cfg.base_seed, n, cfg.k, index);
  std::optional<ScmModel> model;
  switch (cfg.generator) {
    case Generator::Scm: model = random_model(n, seed, cfg.alpha); break;
    case Generator::Joint: model = random_joint(n, seed, cfg.alpha); break;
    case Generator::Factored: model = random_factored(n, seed, cfg.alpha); break;
    case Generator::Rejection: break;
  }
  const Dataset ds = model ? derive_dataset(*model) : random_dataset_rejection(n, seed, 1'000'000, cfg.alpha);
  std::vector<InstanceRecord> out;
  for (Family f : cfg.families) {
    const Query q = cfg.substitute ? random_query(f, n, cfg.k, family_seed(seed, f, 0)) : diagonal_query(f, n, cfg.k);
    const CanonicalQuery cq = canonicalize(q, n);
    const BoundReport rep = family_bounds(ds, cq);
    InstanceRecord r;
    r.n = n;
    r.k = q.k();
    r.index = index;
    r.seed = seed;
    r.family = f;
    r.query = render_query(q);
    r.cf = rep.interval;
    r.baseline = frechet_baseline(ds, cq);
    r.active_lower = rep.active_lower;
    r.active_upper = rep.active_upper;
    if (model) r.true_value = true_probability(*model, q);
    if (cfg.oracle && n <= cfg.cap) r.lp = oracle_bounds(ds, q, OracleOptions{cfg.cap});
    out.push_back(std::move(r));
  }
  return out;
}

/// Runs the sweep; when cfg.output_path is set, writes the per-instance CSV
/// and "<path>.summary.csv" (each via write-then-rename).
inline SweepResult run_sweep(const SweepConfig& cfg) {
  validate_config(cfg);
  SweepResult res;
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    auto batches = ordered_map(cfg.instances, cfg.threads, [&](std::size_t i) { return sweep_instance(cfg, n, i); });
    const std::size_t first = res.records.size();
    for (auto& b : batches)
      for (auto& r : b) res.records.push_back(std::move(r));
    const std::string gen = generator_label(cfg.generator, n, cfg.alpha);
    for (Family f : cfg.families) {
      std::vector<const InstanceRecord*> recs;
      for (std::size_t i = first; i < res.records.size(); ++i)
        if (res.records[i].family == f) recs.push_back(&res.records[i]);
      res.summary.push_back(summarize(recs, gen));
    }
    for (std::size_t i = first; i < res.records.size() && res.diagnostics.size() < 10; ++i)
      for (const std::string& v : record_violations(res.records[i]))
        res.diagnostics.push_back("n=" + std::to_string(n) + " index=" + std::to_string(res.records[i].index) + " " +
                                  res.records[i].query + ": " + v);
  }
  if (!cfg.output_path.empty()) {
    std::string csv = kCsvHeader;
    for (const auto& r : res.records) csv += csv_row(r);
    std::string sum = kSummaryHeader;
    for (const auto& s : res.summary) sum += summary_row(s);
    write_file_atomic(cfg.output_path, csv);
    std::filesystem::path sp = cfg.output_path;
    sp += ".summary.csv";
    write_file_atomic(sp, sum);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Tightness verification

/// Binary bounds for PNS, PN and PS written directly in terms of
/// x = x1, y = y1, x' = x2, y' = y2.
namespace binary {

struct Terms {
  double yx, yx_p, y_px_p, py, pxy, pxy_p, px_py, px_py_p;
};

inline Terms terms(const Dataset& ds) {
  return Terms{ds.exp(0, 0), ds.exp(1, 0), ds.exp(1, 1), ds.py(0), ds.obs(0, 0), ds.obs(0, 1), ds.obs(1, 0), ds.obs(1, 1)};
}

inline Interval pns(const Dataset& ds) {
  const Terms t = terms(ds);
  const double lo = std::max({0.0, t.yx - t.yx_p, t.py - t.yx_p, t.yx - t.py});
  const double hi = std::min({t.yx, t.y_px_p, t.pxy + t.px_py_p, t.yx - t.yx_p + t.pxy_p + t.px_py});
  return {lo, hi};
}

/// P(y'_{x'} | x, y).
inline Interval pn(const Dataset& ds) {
  const Terms t = terms(ds);
  return {std::max(0.0, (t.py - t.yx_p) / t.pxy), std::min(1.0, (t.y_px_p - t.px_py_p) / t.pxy)};
}

/// P(y_x | x', y').
inline Interval ps(const Dataset& ds) {
  const Terms t = terms(ds);
  return {std::max(0.0, (t.yx - t.py) / t.px_py_p), std::min(1.0, (t.yx - t.pxy) / t.px_py_p)};
}

inline Query pns_query() { return parse_query("P(y1_x1, y2_x2)"); }
inline Query pn_query() { return parse_query("P(y2_x2 | x1, y1)"); }
inline Query ps_query() { return parse_query("P(y1_x1 | x2, y2)"); }

}  // namespace binary

struct FamilyTightness {
  Family family = Family::PNS;
  std::size_t queries = 0;
  double max_lower_diff = 0.0;
  double max_upper_diff = 0.0;
  /// Instances where some query of the family misses tol at an endpoint.
  std::size_t mismatched_instances = 0;
  std::size_t soundness_violations = 0;
  // Same statistics restricted to the diagonal query.
  double diag_max_lower_diff = 0.0;
  double diag_max_upper_diff = 0.0;
  std::size_t diag_mismatches = 0;
};

struct BinaryCheck {
  std::string name;
  std::size_t instances = 0;
  double max_diff = 0.0;
};

struct TightnessReport {
  std::size_t n = 0;
  std::size_t instances = 0;
  double tol = 0.0;
  std::uint64_t base_seed = 0;
  std::vector<FamilyTightness> families;
  std::vector<BinaryCheck> binary;  // n = 2 only
  std::vector<std::string> diagnostics;

  std::size_t soundness_violations() const {
    std::size_t v = 0;
    for (const auto& f : families) v += f.soundness_violations;
    return v;
  }
};

inline constexpr std::size_t kRandomQueriesPerFamily = 3;

/// For each instance and family: the diagonal query and
/// kRandomQueriesPerFamily seeded random substitutions, closed form vs LP.
inline TightnessReport verify_tightness(std::size_t n, std::size_t instances, double tol, std::uint64_t base_seed,
                                        std::size_t cap = kDefaultDimensionCap, std::size_t threads = 1) {
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "verify needs n >= 2");
  if (n > cap) {
    throw Error(ErrorKind::DimensionCapExceeded,
                "dimension " + std::to_string(n) + " exceeds LP cap " + std::to_string(cap));
  }
  TightnessReport rep;
  rep.n = n;
  rep.instances = instances;
  rep.tol = tol;
  rep.base_seed = base_seed;

  struct QueryOutcome {
    Family family;
    bool diagonal;
    double dl, du;
    bool sound;
    std::string text;
  };
  struct InstanceOutcome {
    std::vector<QueryOutcome> queries;
    std::vector<double> binary_diffs;
  };

  auto run = [&](std::size_t i) {
    const std::uint64_t seed = rng::mix_seed(base_seed, n, 0, i);
    const ScmJoint g = random_joint(n, seed);
    const Dataset ds = derive_dataset(g);
    InstanceOutcome out;
    for (Family f : kAllFamilies) {
      if (family_k(f, n, n) == 0) continue;
      std::vector<Query> qs{diagonal_query(f, n, n)};
      for (std::size_t j = 0; j < kRandomQueriesPerFamily; ++j) {
        qs.push_back(random_query(f, n, n, family_seed(seed, f, j + 1)));
      }
      for (std::size_t j = 0; j < qs.size(); ++j) {
        const Interval cf = bound_query(ds, qs[j]).interval;
        const Interval lp = oracle_bounds(ds, qs[j], OracleOptions{cap});
        out.queries.push_back({f, j == 0, std::abs(cf.lower - lp.lower), std::abs(cf.upper - lp.upper),
                               lp.within(cf, kSoundnessTol), render_query(qs[j])});
      }
    }
    if (n == 2) {
      auto diff = [&](const Query& q, const Interval& ref) {
        const Interval cf = bound_query(ds, q).interval;
        return std::max(std::abs(cf.lower - ref.lower), std::abs(cf.upper - ref.upper));
      };
      out.binary_diffs = {diff(binary::pns_query(), binary::pns(ds)), diff(binary::pn_query(), binary::pn(ds)),
                          diff(binary::ps_query(), binary::ps(ds))};
    }
    return out;
  };
  const auto outcomes = ordered_map(instances, threads, run);

  for (Family f : kAllFamilies) {
    if (family_k(f, n, n) == 0) continue;
    FamilyTightness ft;
    ft.family = f;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      bool miss = false;
      for (const QueryOutcome& qo : outcomes[i].queries) {
        if (qo.family != f) continue;
        ++ft.queries;
        ft.max_lower_diff = std::max(ft.max_lower_diff, qo.dl);
        ft.max_upper_diff = std::max(ft.max_upper_diff, qo.du);
        if (qo.dl > tol || qo.du > tol) miss = true;
        if (qo.diagonal) {
          ft.diag_max_lower_diff = std::max(ft.diag_max_lower_diff, qo.dl);
          ft.diag_max_upper_diff = std::max(ft.diag_max_upper_diff, qo.du);
          if (qo.dl > tol || qo.du > tol) ++ft.diag_mismatches;
        }
        if (!qo.sound) {
          ++ft.soundness_violations;
          if (rep.diagnostics.size() < 10)
            rep.diagnostics.push_back("instance " + std::to_string(i) + " " + qo.text + ": LP interval outside closed form");
        }
      }
      if (miss) ++ft.mismatched_instances;
    }
    rep.families.push_back(ft);
  }
  if (n == 2) {
    const char* names[] = {"PNS", "PN", "PS"};
    for (std::size_t b = 0; b < 3; ++b) {
      BinaryCheck bc{names[b], outcomes.size(), 0.0};
      for (const auto& o : outcomes) bc.max_diff = std::max(bc.max_diff, o.binary_diffs[b]);
      rep.binary.push_back(bc);
    }
  }
  return rep;
}

inline std::string render_tightness(const TightnessReport& r) {
  std::ostringstream os;
  os << "n=" << r.n << " instances=" << r.instances << " tol=" << fmt12(r.tol) << " seed=" << r.base_seed << "\n";
  os << "family,queries,max_lower_diff,max_upper_diff,mismatched_instances,diag_max_lower_diff,diag_max_upper_diff,"
        "diag_mismatches,soundness_violations\n";
  for (const auto& f : r.families) {
    os << to_string(f.family) << "," << f.queries << "," << fmt12(f.max_lower_diff) << "," << fmt12(f.max_upper_diff)
       << "," << f.mismatched_instances << "," << fmt12(f.diag_max_lower_diff) << "," << fmt12(f.diag_max_upper_diff)
       << "," << f.diag_mismatches << "," << f.soundness_violations << "\n";
  }
  for (const auto& b : r.binary)
    os << "binary " << b.name << " vs two-valued formula: max_diff=" << fmt12(b.max_diff) << " over " << b.instances
       << " instances\n";
  for (const auto& d : r.diagnostics) os << "violation: " << d << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Plot data

/// The top_n records by (baseline gap - closed-form gap), ordered by
/// cf_lower then cf_upper. Ties keep input order.
inline std::vector<InstanceRecord> select_plot_records(const std::vector<InstanceRecord>& records, std::size_t top_n) {
  if (records.empty()) throw Error(ErrorKind::InvalidConfig, "no records to select from");
  std::vector<std::size_t> idx(records.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto gain = [&](std::size_t i) { return records[i].baseline.width() - records[i].cf.width(); };
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return gain(a) > gain(b); });
  idx.resize(std::min(top_n, idx.size()));
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Interval &x = records[a].cf, &y = records[b].cf;
    if (x.lower != y.lower) return x.lower < y.lower;
    return x.upper < y.upper;
  });
  std::vector<InstanceRecord> out;
  for (std::size_t i : idx) out.push_back(records[i]);
  return out;
}

inline std::string plot_csv(const std::vector<InstanceRecord>& selected) {
  std::string s = "rank,n,index,cf_lb,cf_ub,base_lb,base_ub,true_value\n";
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const auto& r = selected[i];
    s += std::to_string(i) + "," + std::to_string(r.n) + "," + std::to_string(r.index) + "," + fmt12(r.cf.lower) + "," +
         fmt12(r.cf.upper) + "," + fmt12(r.baseline.lower) + "," + fmt12(r.baseline.upper) + "," +
         (r.true_value ? fmt12(*r.true_value) : "") + "\n";
  }
  return s;
}

inline void emit_plot_data(const std::vector<InstanceRecord>& records, std::size_t top_n,
                           const std::filesystem::path& path) {
  write_file_atomic(path, plot_csv(select_plot_records(records, top_n)));
}

}  // namespace poc
