#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "poc/bounds.hpp"
#include "poc/fixtures.hpp"
#include "poc/harness.hpp"
#include "poc/lp_oracle.hpp"
#include "poc/scm.hpp"

using namespace poc;

namespace {

Dataset uniform(std::size_t n) {
  RawDataset raw;
  raw.experimental.assign(n, std::vector<double>(n, 1.0 / static_cast<double>(n)));
  raw.observational.assign(n, std::vector<double>(n, 1.0 / static_cast<double>(n * n)));
  return validate_dataset(raw);
}

bool has_label(const std::vector<Candidate>& cs, const std::string& label) {
  return std::any_of(cs.begin(), cs.end(), [&](const Candidate& c) { return c.label == label; });
}

// Permutes treatment rows of both tables.
Dataset permute_treatments(const Dataset& ds, const std::vector<std::size_t>& sigma) {
  RawDataset raw = to_raw(ds);
  RawDataset out = raw;
  for (std::size_t t = 0; t < sigma.size(); ++t) {
    out.experimental[sigma[t]] = raw.experimental[t];
    out.observational[sigma[t]] = raw.observational[t];
  }
  return validate_dataset(out);
}

}  // namespace

TEST(Pns, MedicalExample) {
  const Dataset ds = validate_dataset(fixtures::medical());
  const BoundReport r = bound_query(ds, parse_query(fixtures::kMedicalQuery));
  EXPECT_NEAR(r.interval.lower, 0.509, 5e-4);
  EXPECT_NEAR(r.interval.upper, 0.588, 5e-4);
  EXPECT_EQ(r.active_lower, "L2_i=3");
  EXPECT_EQ(r.active_upper, "U0");
  EXPECT_FALSE(r.infeasible);
  EXPECT_FALSE(r.denominator);
  // L2_i=3 = S_1 + S_2 + O_3 - 2 with S_j = E_j + X_j - O_j.
  const double s1 = 231.0 / 300 + 200.0 / 900 - 1.0 / 900;
  const double s2 = 270.0 / 300 + 118.0 / 900 - 45.0 / 900;
  EXPECT_NEAR(r.interval.lower, s1 + s2 + 483.0 / 900 - 2.0, 1e-12);
  EXPECT_NEAR(r.interval.upper, (1.0 + 45.0 + 483.0) / 900.0, 1e-12);
}

TEST(Pns, ZeroEffectGivesZeroInterval) {
  RawDataset raw;
  raw.experimental = {{0.0, 0.6, 0.4}, {0.3, 0.3, 0.4}, {0.2, 0.5, 0.3}};
  raw.observational = {{0.0, 0.2, 0.1}, {0.1, 0.1, 0.1}, {0.1, 0.2, 0.1}};
  const BoundReport r = bound_query(validate_dataset(raw), parse_query("P(y1_x1, y2_x2, y3_x3)"));
  EXPECT_EQ(r.interval.lower, 0.0);
  EXPECT_EQ(r.interval.upper, 0.0);
}

TEST(Pns, SingleAtomIsPointIdentified) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Dataset ds = derive_dataset(random_joint(3, s));
    const BoundReport r = bound_query(ds, parse_query("P(y2_x2)"));
    EXPECT_NEAR(r.interval.lower, ds.exp(1, 1), 1e-15);
    EXPECT_NEAR(r.interval.upper, ds.exp(1, 1), 1e-15);
  }
}

TEST(Pns, CandidateLabels) {
  const Dataset ds = derive_dataset(random_joint(4, 3));
  const BoundReport r = bound_query(ds, parse_query("P(y1_x1, y2_x2, y3_x3)"));
  for (const char* l : {"L0", "L1", "L2_i=1", "L2_i=2", "L2_i=3"}) EXPECT_TRUE(has_label(r.lower_candidates, l)) << l;
  for (const char* l : {"U0", "U1_j=1", "U1_j=3", "U2_m=1", "U2_m=2"}) EXPECT_TRUE(has_label(r.upper_candidates, l)) << l;
  EXPECT_TRUE(has_label(r.lower_candidates, r.active_lower));
  EXPECT_TRUE(has_label(r.upper_candidates, r.active_upper));
}

TEST(Pns, SortedPrefixMatchesSubsetEnumeration) {
  rng::Rng gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 5;  // 2..6
    std::vector<double> d(k);
    for (double& v : d) v = gen.uniform();
    std::vector<double> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t m = 1; m < k; ++m) {
      double best = 1e300;
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != m + 1) continue;
        double s = 0;
        for (std::size_t j = 0; j < k; ++j)
          if (mask & (1u << j)) s += d[j];
        best = std::min(best, s);
      }
      const double prefix = std::accumulate(sorted.begin(), sorted.begin() + static_cast<long>(m + 1), 0.0);
      EXPECT_NEAR(prefix, best, 1e-15);
    }
  }
}

TEST(Pns, RandomInstancesMatchLp) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Dataset ds = derive_dataset(random_joint(3, s));
    const Query q = parse_query("P(y1_x1, y2_x2, y3_x3)");
    const Interval cf = bound_query(ds, q).interval;
    const Interval lp = oracle_bounds(ds, q);
    EXPECT_NEAR(cf.lower, lp.lower, 1e-6);
    EXPECT_NEAR(cf.upper, lp.upper, 1e-6);
  }
}

TEST(Psub, UniformArithmetic) {
  const Dataset ds = uniform(3);
  const BoundReport r = bound_query(ds, parse_query("P(y1_x1, y2_x2, x3)"));
  EXPECT_EQ(r.family, Family::PSUB);
  EXPECT_NEAR(r.interval.lower, 0.0, 1e-15);
  EXPECT_NEAR(r.interval.upper, 2.0 / 9.0, 1e-15);
  const Interval lp = oracle_bounds(ds, parse_query("P(y1_x1, y2_x2, x3)"));
  EXPECT_NEAR(lp.lower, 0.0, 1e-9);
  EXPECT_NEAR(lp.upper, 2.0 / 9.0, 1e-9);
}

TEST(Psub, ZeroTreatmentMass) {
  RawDataset raw;
  raw.experimental = {{0.5, 0.5, 0.0}, {0.2, 0.4, 0.4}, {0.3, 0.3, 0.4}};
  raw.observational = {{0.3, 0.2, 0.0}, {0.1, 0.2, 0.2}, {0.0, 0.0, 0.0}};
  const BoundReport r = bound_query(validate_dataset(raw), parse_query("P(y1_x1, y2_x2, x3)"));
  EXPECT_EQ(r.interval.upper, 0.0);
  EXPECT_THROW(bound_query(validate_dataset(raw), parse_query("P(y1_x1, y2_x2 | x3)")), Error);
}

TEST(Prep, UnobservedEvidenceOutcome) {
  RawDataset raw;
  raw.experimental = {{0.5, 0.25, 0.25}, {0.0, 0.5, 0.5}, {0.0, 0.3, 0.7}};
  raw.observational = {{0.0, 0.2, 0.2}, {0.0, 0.1, 0.1}, {0.0, 0.2, 0.2}};
  const Dataset ds = validate_dataset(raw);
  const BoundReport r = bound_query(ds, parse_query("P(y1_x1, y2_x2, y1)"));
  EXPECT_EQ(r.interval.lower, 0.0);
  EXPECT_EQ(r.interval.upper, 0.0);
}

TEST(Prep, DiagonalGuardedCandidatesPresent) {
  const Dataset ds = derive_dataset(random_joint(3, 4));
  const BoundReport r = bound_query(ds, parse_query("P(y1_x1, y2_x2, y3_x3 | y1)"));
  EXPECT_TRUE(has_label(r.lower_candidates, "L2_j=1"));
  EXPECT_TRUE(has_label(r.upper_candidates, "U1_j=1"));
  EXPECT_FALSE(has_label(r.upper_candidates, "U2_j=1"));
  EXPECT_TRUE(has_label(r.upper_candidates, "U2_j=2"));
}

TEST(Prep, ContainsLpOnRandomInstances) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const Dataset ds = derive_dataset(random_joint(3, 1000 + s));
    const Query q = random_query(Family::PREP, 3, 3, s);
    EXPECT_TRUE(oracle_bounds(ds, q).within(bound_query(ds, q).interval, 1e-9)) << render_query(q);
  }
}

TEST(Pn, EducationJointAndConditional) {
  const Dataset ds = validate_dataset(fixtures::education());
  const BoundReport j = bound_query(ds, parse_query(fixtures::kEducationJointQuery));
  EXPECT_NEAR(j.interval.lower, 0.0125, 5e-4);
  EXPECT_NEAR(j.interval.upper, 0.3633, 5e-4);
  const BoundReport c = bound_query(ds, parse_query(fixtures::kEducationConditionalQuery));
  ASSERT_TRUE(c.denominator);
  EXPECT_NEAR(*c.denominator, 436.0 / 1200.0, 1e-15);
  EXPECT_NEAR(c.interval.lower, j.interval.lower / (436.0 / 1200.0), 1e-12);
  EXPECT_NEAR(c.interval.lower, 0.0344, 1e-4);
  EXPECT_EQ(c.interval.upper, 1.0);
  EXPECT_EQ(c.joint, j.interval);
}

TEST(Pn, BinaryJointReduction) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Dataset ds = derive_dataset(random_joint(2, s));
    const Interval r = bound_query(ds, parse_query("P(y2_x2, x1, y1)")).interval;
    EXPECT_NEAR(r.lower, std::max(0.0, ds.py(0) - ds.exp(1, 0)), 1e-12);
    EXPECT_NEAR(r.upper, std::min(ds.obs(0, 0), ds.exp(1, 1) - ds.obs(1, 1)), 1e-12);
  }
}

TEST(Conditional, EqualsJointOverEvidence) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Family f = kAllFamilies[1 + s % 3];
    Query q = random_query(f, 3, 2, s);
    const Dataset ds = derive_dataset(random_joint(3, s));
    q.conditional = false;
    const Interval joint = bound_query(ds, q).interval;
    q.conditional = true;
    const BoundReport c = bound_query(ds, q);
    ASSERT_TRUE(c.denominator);
    EXPECT_NEAR(c.interval.lower, std::min(1.0, joint.lower / *c.denominator), 1e-12);
    EXPECT_NEAR(c.interval.upper, std::min(1.0, joint.upper / *c.denominator), 1e-12);
  }
}

TEST(Baseline, MedicalFrechet) {
  const Dataset ds = validate_dataset(fixtures::medical());
  const Interval b = frechet_baseline(ds, canonicalize(parse_query(fixtures::kMedicalQuery), 3));
  EXPECT_NEAR(b.lower, 724.0 / 300.0 - 2.0, 1e-12);
  EXPECT_NEAR(b.upper, 223.0 / 300.0, 1e-12);
}

TEST(Baseline, ContainsClosedForm) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const std::size_t n = 2 + s % 4;
    const Family f = kAllFamilies[s % 4];
    const Dataset ds = random_dataset_rejection(n, s);
    const Query q = random_query(f, n, n, s);
    const CanonicalQuery cq = canonicalize(q, n);
    EXPECT_TRUE(family_bounds(ds, cq).interval.within(frechet_baseline(ds, cq), 1e-12)) << render_query(q);
  }
}

TEST(Padding, ZeroOutcomeColumnChangesNothing) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Dataset ds = random_rect_dataset_rejection(3, 2, s);
    RawDataset raw = to_raw(ds);
    for (auto& row : raw.experimental) row.push_back(0.0);
    for (auto& row : raw.observational) row.push_back(0.0);
    const Dataset padded = validate_dataset(raw);
    for (Family f : kAllFamilies) {
      const Query q = random_query(f, 2, 2, s * 7 + static_cast<std::uint64_t>(f));
      const Interval a = bound_query(ds, q).interval, b = bound_query(padded, q).interval;
      EXPECT_NEAR(a.lower, b.lower, 1e-12);
      EXPECT_NEAR(a.upper, b.upper, 1e-12);
    }
  }
}

TEST(Symmetry, TreatmentRelabelingInvariance) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Dataset ds = derive_dataset(random_joint(3, s));
    const std::vector<std::size_t> sigma{2, 0, 1};
    const Dataset pds = permute_treatments(ds, sigma);
    Query q = random_query(kAllFamilies[s % 4], 3, 2, s);
    Query pq = q;
    for (Atom& a : pq.atoms) a.treatment = sigma[a.treatment];
    if (pq.x_evidence) pq.x_evidence = sigma[*pq.x_evidence];
    const Interval a = bound_query(ds, q).interval, b = bound_query(pds, pq).interval;
    EXPECT_NEAR(a.lower, b.lower, 1e-12);
    EXPECT_NEAR(a.upper, b.upper, 1e-12);
  }
}

TEST(Errors, FamilyAndShape) {
  const Dataset ds = uniform(3);
  const CanonicalQuery cq = canonicalize(parse_query("P(y1_x1 | y2)"), 3);
  EXPECT_THROW(pns_k_bounds(ds, cq), Error);
  EXPECT_THROW(psub_bounds(ds, cq), Error);
  EXPECT_THROW(bound_query(ds, parse_query("P(y1_x1, y2_x2, y3_x3, y1_x4)")), Error);
  try {
    pn_bounds(ds, cq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FamilyMismatch);
  }
}

TEST(Errors, ZeroDenominator) {
  RawDataset raw;
  raw.experimental = {{0.5, 0.5}, {0.5, 0.5}};
  raw.observational = {{0.5, 0.0}, {0.5, 0.0}};
  try {
    bound_query(validate_dataset(raw), parse_query("P(y1_x1 | y2)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroDenominator);
  }
}
