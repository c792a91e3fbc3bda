// poc: bounds on multi-valued probabilities of causation.
//
// Subcommands: bounds, oracle, gen, verify, sweep, examples.
// Exit codes: 0 ok, 1 soundness violation / example mismatch,
// 2 parse or validation error, 3 infeasible data, 4 LP dimension cap,
// 5 I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "poc/bounds.hpp"
#include "poc/fixtures.hpp"
#include "poc/harness.hpp"
#include "poc/json_io.hpp"
#include "poc/lp_oracle.hpp"
#include "poc/query.hpp"
#include "poc/scm.hpp"

namespace {

using namespace poc;

enum Exit : int { kOk = 0, kViolation = 1, kInput = 2, kInfeasible = 3, kCap = 4, kIo = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Infeasible:
    case ErrorKind::Unbounded: return kInfeasible;
    case ErrorKind::DimensionCapExceeded: return kCap;
    case ErrorKind::IoError: return kIo;
    default: return kInput;
  }
}

struct Options {
  std::string data, query, method = "closed", out, dump_lp, families = "PNS", generator = "scm";
  bool json = false, exact = false, oracle = false, substitute = false;
  std::size_t n = 0, n_min = 0, n_max = 0, k = 3, instances = 1000, cap = kDefaultDimensionCap, threads = 1, plot = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTol, alpha = 1.0;
};

std::string interval_text(const Interval& iv) { return "[" + fmt12(iv.lower) + ", " + fmt12(iv.upper) + "]"; }

void dump_lp_pair(const std::string& path, const Dataset& ds, const Query& q, std::size_t cap) {
  const Dataset sq = squarify(ds);
  Query joint = q;
  joint.conditional = false;
  std::ostringstream os;
  write_lp_dump(os, build_lp(sq, joint, lp::Sense::Max, cap));
  os << "\n";
  write_lp_dump(os, build_lp(sq, joint, lp::Sense::Min, cap));
  write_file_atomic(path, os.str());
}

int cmd_bounds(const Options& o, bool lp_only) {
  const Dataset ds = load_dataset(o.data, o.tol);
  const Query q = parse_query(o.query);
  const std::string method = lp_only ? "lp" : o.method;
  const bool want_cf = method != "lp";
  const bool want_lp = method != "closed";
  if (want_lp && ds.dims().side() > o.cap) {
    throw Error(ErrorKind::DimensionCapExceeded, "dimension " + std::to_string(ds.dims().side()) +
                                                     " exceeds LP cap " + std::to_string(o.cap) + " (use --cap)");
  }
  if (!o.dump_lp.empty()) dump_lp_pair(o.dump_lp, ds, q, o.cap);

  std::optional<BoundReport> cf;
  std::optional<Interval> lpi;
  if (want_cf) cf = bound_query(ds, q);
  if (want_lp) {
    OracleOptions opt;
    opt.cap = o.cap;
    opt.mode = o.exact ? SolveMode::Exact : SolveMode::Float;
    lpi = oracle_bounds(ds, q, opt);
  }
  const bool contained = !(cf && lpi) || lpi->within(cf->interval, kSoundnessTol);

  if (o.json) {
    Json j;
    j["query"] = render_query(q);
    j["family"] = std::string(to_string(classify(q)));
    if (cf) j["closed_form"] = report_to_json(*cf);
    if (lpi) j["lp"] = interval_to_json(*lpi);
    if (cf && lpi) j["lp_within_closed_form"] = contained;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "query:  " << render_query(q) << "\n";
    std::cout << "family: " << to_string(classify(q)) << " (k=" << q.k() << ")\n";
    if (cf) {
      std::cout << "bounds: " << interval_text(cf->interval) << "\n";
      std::cout << "active: lower " << cf->active_lower << ", upper " << cf->active_upper << "\n";
      if (cf->denominator) {
        std::cout << "joint:  " << interval_text(cf->joint) << " / " << fmt12(*cf->denominator) << "\n";
      }
    }
    if (lpi) std::cout << "lp:     " << interval_text(*lpi) << (o.exact ? " (exact)" : "") << "\n";
    if (cf && lpi) std::cout << "LP ⊆ closed-form: " << (contained ? "OK" : "VIOLATED") << "\n";
  }
  if (cf && cf->infeasible) {
    std::cerr << "error: bounds cross; the data are not consistent with any SCM\n";
    return kInfeasible;
  }
  return contained ? kOk : kViolation;
}

int cmd_gen(const Options& o) {
  if (o.n < 2) throw Error(ErrorKind::InvalidConfig, "--n must be at least 2");
  if (o.out.empty()) throw Error(ErrorKind::InvalidConfig, "--out directory required");
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + o.out);
  Json manifest;
  manifest["generator"] = generator_label_for(o.n, o.alpha);
  manifest["base_seed"] = o.seed;
  manifest["n"] = o.n;
  Json items = Json::array();
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::uint64_t seed = rng::mix_seed(o.seed, o.n, 0, i);
    const ScmModel model = random_model(o.n, seed, o.alpha);
    const Dataset ds = derive_dataset(model);
    Json dj = dataset_to_json(ds);
    dj["generator"] = generator_label(model, o.alpha);
    dj["seed"] = seed;
    dj["n"] = o.n;
    char name[32];
    std::snprintf(name, sizeof name, "instance_%05zu.json", i);
    write_file_atomic(std::filesystem::path(o.out) / name, dj.dump(2) + "\n");

    Json truth = Json::object();
    for (Family f : kAllFamilies) {
      const Query q = diagonal_query(f, o.n, o.n);
      truth[std::string(to_string(f))] = {{"query", render_query(q)}, {"value", true_probability(model, q)}};
    }
    items.push_back({{"file", name}, {"seed", seed}, {"true_values", std::move(truth)}});
  }
  manifest["instances"] = std::move(items);
  write_file_atomic(std::filesystem::path(o.out) / "manifest.json", manifest.dump(2) + "\n");
  if (!o.json) std::cout << "wrote " << o.instances << " datasets and manifest.json to " << o.out << "\n";
  else std::cout << Json{{"written", o.instances}, {"out", o.out}}.dump() << "\n";
  return kOk;
}

Json tightness_json(const TightnessReport& r) {
  Json j;
  j["n"] = r.n;
  j["instances"] = r.instances;
  j["tol"] = r.tol;
  j["seed"] = r.base_seed;
  Json fams = Json::array();
  for (const auto& f : r.families) {
    fams.push_back({{"family", std::string(to_string(f.family))},
                    {"queries", f.queries},
                    {"max_lower_diff", f.max_lower_diff},
                    {"max_upper_diff", f.max_upper_diff},
                    {"mismatched_instances", f.mismatched_instances},
                    {"diag_max_lower_diff", f.diag_max_lower_diff},
                    {"diag_max_upper_diff", f.diag_max_upper_diff},
                    {"diag_mismatches", f.diag_mismatches},
                    {"soundness_violations", f.soundness_violations}});
  }
  j["families"] = std::move(fams);
  Json bin = Json::array();
  for (const auto& b : r.binary) bin.push_back({{"name", b.name}, {"instances", b.instances}, {"max_diff", b.max_diff}});
  j["binary"] = std::move(bin);
  j["diagnostics"] = r.diagnostics;
  return j;
}

int cmd_verify(const Options& o) {
  const TightnessReport rep = verify_tightness(o.n, o.instances, o.tol, o.seed, o.cap, o.threads);
  const std::string text = o.json ? tightness_json(rep).dump(2) + "\n" : render_tightness(rep);
  if (!o.out.empty()) write_file_atomic(o.out, text);
  std::cout << text;
  return rep.soundness_violations() == 0 ? kOk : kViolation;
}

std::vector<Family> parse_families(const std::string& list) {
  std::vector<Family> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") return {std::begin(kAllFamilies), std::end(kAllFamilies)};
    auto f = family_from_string(item);
    if (!f) throw Error(ErrorKind::InvalidConfig, "unknown family '" + item + "'");
    out.push_back(*f);
  }
  return out;
}

int cmd_sweep(const Options& o) {
  SweepConfig cfg;
  cfg.n_min = o.n_min ? o.n_min : o.n;
  cfg.n_max = o.n_max ? o.n_max : (o.n ? o.n : cfg.n_min);
  cfg.k = o.k;
  cfg.instances = o.instances;
  cfg.base_seed = o.seed;
  cfg.families = parse_families(o.families);
  cfg.oracle = o.oracle;
  cfg.cap = o.cap;
  cfg.substitute = o.substitute;
  cfg.alpha = o.alpha;
  cfg.threads = o.threads;
  cfg.generator = *generator_from_string(o.generator);
  if (o.out.empty()) throw Error(ErrorKind::InvalidConfig, "--out path required");
  cfg.output_path = o.out;
  const SweepResult res = run_sweep(cfg);
  if (o.plot) {
    std::filesystem::path pp = cfg.output_path;
    pp += ".plot.csv";
    emit_plot_data(res.records, o.plot, pp);
  }
  if (o.json) {
    Json rows = Json::array();
    for (const auto& s : res.summary) {
      rows.push_back({{"n", s.n},
                      {"family", std::string(to_string(s.family))},
                      {"instances", s.instances},
                      {"generator", s.generator},
                      {"baseline", "frechet"},
                      {"mean_cf_gap", s.mean_cf_gap},
                      {"mean_base_gap", s.mean_base_gap},
                      {"mean_lower_increase", s.mean_lower_increase},
                      {"mean_upper_decrease", s.mean_upper_decrease},
                      {"narrower_count", s.narrower},
                      {"violations", s.violations}});
    }
    std::cout << Json{{"summary", rows}, {"diagnostics", res.diagnostics}}.dump(2) << "\n";
  } else {
    std::cout << kSummaryHeader;
    for (const auto& s : res.summary) std::cout << summary_row(s);
    for (const auto& d : res.diagnostics) std::cerr << "violation: " << d << "\n";
  }
  return res.total_violations() == 0 ? kOk : kViolation;
}

int cmd_examples(const Options& o) {
  constexpr double kTol = 5e-4;
  const Dataset med = validate_dataset(fixtures::medical());
  const Dataset edu = validate_dataset(fixtures::education());
  const BoundReport m = bound_query(med, parse_query(fixtures::kMedicalQuery));
  const BoundReport ej = bound_query(edu, parse_query(fixtures::kEducationJointQuery));
  const BoundReport ec = bound_query(edu, parse_query(fixtures::kEducationConditionalQuery));
  const double den = 436.0 / 1200.0;

  struct Check {
    std::string name;
    double got, want, tol;
  };
  const std::vector<Check> checks{
      {"medical lower", m.interval.lower, 0.509, kTol},
      {"medical upper", m.interval.upper, 0.588, kTol},
      {"education joint lower", ej.interval.lower, 0.0125, kTol},
      {"education joint upper", ej.interval.upper, 0.3633, kTol},
      {"education conditional lower", ec.interval.lower, ej.interval.lower / den, 1e-12},
      {"education conditional upper", ec.interval.upper, std::min(1.0, ej.interval.upper / den), 1e-12},
  };
  const std::string note =
      "note: the published conditional lower bound reads 0.344, but 0.0125 / (436/1200) = 0.0344 "
      "(a factor of 10 apart); the computed quotient is reported.";
  bool ok = true;
  for (const auto& c : checks) ok = ok && std::abs(c.got - c.want) <= c.tol;

  if (o.json) {
    Json j;
    j["medical"] = {{"query", fixtures::kMedicalQuery}, {"bounds", report_to_json(m)}};
    j["education_joint"] = {{"query", fixtures::kEducationJointQuery}, {"bounds", report_to_json(ej)}};
    j["education_conditional"] = {{"query", fixtures::kEducationConditionalQuery}, {"bounds", report_to_json(ec)}};
    j["note"] = note;
    Json cs = Json::array();
    for (const auto& c : checks)
      cs.push_back({{"name", c.name}, {"got", c.got}, {"want", c.want}, {"pass", std::abs(c.got - c.want) <= c.tol}});
    j["checks"] = std::move(cs);
    j["ok"] = ok;
    std::cout << j.dump(2) << "\n";
    std::cerr << note << "\n";
  } else {
    std::cout << "medical    " << fixtures::kMedicalQuery << " = " << interval_text(m.interval) << "  (active "
              << m.active_lower << ", " << m.active_upper << ")\n";
    std::cout << "education  " << fixtures::kEducationJointQuery << " = " << interval_text(ej.interval) << "  (active "
              << ej.active_lower << ", " << ej.active_upper << ")\n";
    std::cout << "education  " << fixtures::kEducationConditionalQuery << " = " << interval_text(ec.interval)
              << "  (joint / " << fmt12(den) << ")\n";
    for (const auto& c : checks) {
      const bool pass = std::abs(c.got - c.want) <= c.tol;
      std::cout << (pass ? "  ok    " : "  FAIL  ") << c.name << ": " << fmt12(c.got) << " vs " << fmt12(c.want) << "\n";
    }
    std::cout << note << "\n";
  }
  return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on multi-valued probabilities of causation"};
  app.require_subcommand(1);
  Options o;

  auto add_data = [&](CLI::App* s) {
    s->add_option("--data", o.data, "dataset JSON file")->required();
    s->add_option("--query", o.query, "query, e.g. \"P(y3_x1, y1_x2, y2_x3)\"")->required();
    s->add_option("--tol", o.tol, "validation tolerance");
    s->add_option("--cap", o.cap, "LP dimension cap");
    s->add_flag("--json", o.json, "emit one JSON document");
    s->add_flag("--exact", o.exact, "exact rational LP");
    s->add_option("--dump-lp", o.dump_lp, "write the max and min LPs as text");
  };

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds (optionally with the LP oracle)");
  add_data(bounds);
  bounds->add_option("--method", o.method, "closed | lp | both")->check(CLI::IsMember({"closed", "lp", "both"}));

  auto* oracle = app.add_subcommand("oracle", "LP-oracle bounds");
  add_data(oracle);

  auto* gen = app.add_subcommand("gen", "generate SCM datasets and a ground-truth manifest");
  gen->add_option("--n", o.n, "side length")->required();
  gen->add_option("--instances", o.instances, "number of datasets");
  gen->add_option("--seed", o.seed, "base seed");
  gen->add_option("--alpha", o.alpha, "Dirichlet concentration");
  gen->add_option("--out", o.out, "output directory")->required();
  gen->add_flag("--json", o.json);

  auto* verify = app.add_subcommand("verify", "closed form vs LP oracle on random SCMs");
  verify->add_option("--n", o.n, "side length")->required();
  verify->add_option("--instances", o.instances, "instances");
  verify->add_option("--tol", o.tol, "tightness tolerance");
  verify->add_option("--seed", o.seed, "base seed");
  verify->add_option("--cap", o.cap, "LP dimension cap");
  verify->add_option("--threads", o.threads, "worker threads");
  verify->add_option("--out", o.out, "also write the report here");
  verify->add_flag("--json", o.json);

  auto* sweep = app.add_subcommand("sweep", "dimension sweep against the Frechet baseline");
  sweep->add_option("--n", o.n, "single side length");
  sweep->add_option("--n-min", o.n_min, "smallest side length");
  sweep->add_option("--n-max", o.n_max, "largest side length");
  sweep->add_option("--k", o.k, "atoms per query");
  sweep->add_option("--instances", o.instances, "instances per n");
  sweep->add_option("--seed", o.seed, "base seed");
  sweep->add_option("--families", o.families, "comma list of PNS,PSUB,PREP,PN or 'all'");
  sweep->add_flag("--oracle", o.oracle, "LP cross-check when n <= cap");
  sweep->add_option("--cap", o.cap, "LP dimension cap");
  sweep->add_flag("--substitute", o.substitute, "random substituted queries instead of diagonal ones");
  sweep->add_option("--alpha", o.alpha, "Dirichlet concentration");
  sweep->add_option("--generator", o.generator, "scm | joint | factored | rejection")
      ->check(CLI::IsMember({"scm", "joint", "factored", "rejection"}));
  sweep->add_option("--threads", o.threads, "worker threads");
  sweep->add_option("--plot", o.plot, "also write <out>.plot.csv with the top N by gap difference");
  sweep->add_option("--out", o.out, "CSV path")->required();
  sweep->add_flag("--json", o.json);

  auto* examples = app.add_subcommand("examples", "replay the medical and education examples");
  examples->add_flag("--json", o.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*bounds) return cmd_bounds(o, false);
    if (*oracle) return cmd_bounds(o, true);
    if (*gen) return cmd_gen(o);
    if (*verify) return cmd_verify(o);
    if (*sweep) return cmd_sweep(o);
    if (*examples) return cmd_examples(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
