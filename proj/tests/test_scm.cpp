#include <gtest/gtest.h>

#include <cmath>

#include "poc/bounds.hpp"
#include "poc/harness.hpp"
#include "poc/lp_oracle.hpp"
#include "poc/scm.hpp"

using namespace poc;

TEST(Rng, MixSeedDistinguishesArguments) {
  EXPECT_NE(rng::mix_seed(1, 3, 3, 0), rng::mix_seed(1, 3, 3, 1));
  EXPECT_NE(rng::mix_seed(1, 3, 3, 0), rng::mix_seed(1, 4, 3, 0));
  EXPECT_NE(rng::mix_seed(1, 3, 3, 0), rng::mix_seed(1, 3, 2, 0));
  EXPECT_NE(rng::mix_seed(1, 3, 3, 0), rng::mix_seed(2, 3, 3, 0));
  EXPECT_EQ(rng::mix_seed(7, 3, 3, 5), rng::mix_seed(7, 3, 3, 5));
}

TEST(Rng, GammaMoments) {
  rng::Rng gen(3);
  for (double shape : {0.5, 1.0, 2.5}) {
    double m = 0, m2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double x = gen.gamma(shape);
      m += x;
      m2 += x * x;
    }
    m /= n;
    const double var = m2 / n - m * m;
    EXPECT_NEAR(m, shape, 0.02) << shape;
    EXPECT_NEAR(var, shape, 0.05) << shape;
  }
}

TEST(Joint, DeterministicAndNormalized) {
  const ScmJoint a = random_joint(3, 42), b = random_joint(3, 42), c = random_joint(3, 43);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_NE(a.weights, c.weights);
  double total = 0;
  for (double w : a.weights) {
    EXPECT_GE(w, 0.0);
    total += w;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(a.weights.size(), 81u);
}

TEST(Joint, BinarySeedOneDerivesValidDataset) {
  const ScmJoint g = random_joint(2, 1);
  const Dataset ds = derive_dataset(g);
  EXPECT_NO_THROW(validate_dataset(to_raw(ds), 1e-12));
}

TEST(Joint, SimplexUniformity) {
  const std::size_t cells = 81, draws = 1000;
  std::vector<double> mean(cells, 0.0), sq(cells, 0.0);
  for (std::size_t i = 0; i < draws; ++i) {
    const ScmJoint g = random_joint(3, rng::mix_seed(5, 3, 0, i));
    for (std::size_t c = 0; c < cells; ++c) {
      mean[c] += g.weights[c];
      sq[c] += g.weights[c] * g.weights[c];
    }
  }
  // Flat Dirichlet over 81 cells: mean 1/81, var (1/81)(80/81)/82.
  const double sd = std::sqrt((1.0 / 81) * (80.0 / 81) / 82.0);
  const double se = sd / std::sqrt(static_cast<double>(draws));
  std::size_t outside = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    mean[c] /= draws;
    if (std::abs(mean[c] - 1.0 / 81) > 3 * se) ++outside;
    EXPECT_LT(std::abs(mean[c] - 1.0 / 81), 4.5 * se) << c;
  }
  // 3-sigma misses are expected for about 0.27% of cells.
  EXPECT_LE(outside, 2u);
}

TEST(Derive, PointMassOnIdentity) {
  const std::size_t n = 3;
  const ResponseSpace space(n, n);
  std::size_t identity = 0;
  for (std::size_t r = 0; r < space.n_types(); ++r)
    if (space.digits(r) == std::vector<std::size_t>{0, 1, 2}) identity = r;
  ScmJoint g{n, std::vector<double>(space.n_cells(), 0.0)};
  g.weights[space.cell(identity, 0)] = 1.0;
  const Dataset ds = derive_dataset(g);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t o = 0; o < n; ++o) {
      EXPECT_EQ(ds.exp(t, o), t == o ? 1.0 : 0.0);
      EXPECT_EQ(ds.obs(t, o), t == 0 && o == 0 ? 1.0 : 0.0);
    }
}

TEST(Derive, UniformBinary) {
  const ScmJoint g{2, std::vector<double>(8, 1.0 / 8)};
  const Dataset ds = derive_dataset(g);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t o = 0; o < 2; ++o) {
      EXPECT_DOUBLE_EQ(ds.exp(t, o), 0.5);
      EXPECT_DOUBLE_EQ(ds.obs(t, o), 0.25);
    }
}

TEST(Derive, CompatibilityOnManyInstances) {
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const Dataset ds = derive_dataset(random_joint(2 + s % 2, s));
    for (std::size_t t = 0; t < ds.dims().n_treatments; ++t)
      for (std::size_t o = 0; o < ds.dims().n_outcomes; ++o) {
        ASSERT_LE(ds.obs(t, o), ds.exp(t, o) + 1e-15);
        ASSERT_LE(ds.exp(t, o), 1.0 - ds.px(t) + ds.obs(t, o) + 1e-15);
      }
  }
}

TEST(Truth, SingleAtomIsMarginal) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ScmJoint g = random_joint(3, s);
    const Dataset ds = derive_dataset(g);
    EXPECT_NEAR(true_probability(g, parse_query("P(y2_x1)")), ds.exp(0, 1), 1e-14);
  }
}

TEST(Truth, ConjunctionMonotone) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ScmJoint g = random_joint(3, s);
    const Query q = random_query(Family::PNS, 3, 3, s);
    Query shorter = q;
    shorter.atoms.pop_back();
    EXPECT_LE(true_probability(g, q), true_probability(g, shorter) + 1e-15);
  }
}

TEST(Truth, InsideClosedFormAndLp) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const ScmJoint g = random_joint(3, s);
    const Dataset ds = derive_dataset(g);
    const Query q = random_query(kAllFamilies[s % 4], 3, 3, s);
    const double v = true_probability(g, q);
    EXPECT_TRUE(bound_query(ds, q).interval.contains(v, 1e-9)) << render_query(q);
    EXPECT_TRUE(oracle_bounds(ds, q).contains(v, 1e-9)) << render_query(q);
  }
}

TEST(Truth, ZeroEvidenceConditional) {
  const ResponseSpace space(2, 2);
  ScmJoint g{2, std::vector<double>(space.n_cells(), 0.0)};
  g.weights[space.cell(0, 0)] = 1.0;  // everyone takes x1
  EXPECT_THROW(true_probability(g, parse_query("P(y1_x1 | x2)")), Error);
  EXPECT_EQ(true_probability(g, parse_query("P(y1_x1, x2)")), 0.0);
}

TEST(Factored, MatchesExpandedJoint) {
  // Expand a small factored model into its full joint and compare truths.
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 3;
    const FactoredScm f = random_factored(n, s);
    const ResponseSpace space(n, n);
    ScmJoint g{n, std::vector<double>(space.n_cells(), 0.0)};
    for (std::size_t r = 0; r < space.n_types(); ++r)
      for (std::size_t t = 0; t < n; ++t) {
        double w = f.px[t];
        for (std::size_t tp = 0; tp < n; ++tp) w *= f.resp[t][tp][space.outcome(r, tp)];
        g.weights[space.cell(r, t)] = w;
      }
    const Dataset a = derive_dataset(g), b = derive_dataset(f);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t o = 0; o < n; ++o) {
        EXPECT_NEAR(a.exp(t, o), b.exp(t, o), 1e-14);
        EXPECT_NEAR(a.obs(t, o), b.obs(t, o), 1e-14);
      }
    for (Family fam : kAllFamilies) {
      const Query q = random_query(fam, n, 2, s + 100 * static_cast<std::uint64_t>(fam));
      EXPECT_NEAR(true_probability(g, q), true_probability(f, q), 1e-14) << render_query(q);
    }
  }
}

TEST(Rejection, AcceptedDrawsAreValid) {
  std::size_t total_tries = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    std::size_t tries = 0;
    const Dataset ds = random_dataset_rejection(3, s, 1'000'000, 1.0, &tries);
    total_tries += tries;
    EXPECT_NO_THROW(validate_dataset(to_raw(ds), 1e-12));
  }
  const double rate = 200.0 / static_cast<double>(total_tries);
  std::printf("n=3 rejection acceptance rate: %.4f\n", rate);
  EXPECT_GT(rate, 0.0);
}

TEST(Rejection, OracleContainment) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Dataset ds = random_dataset_rejection(3, s);
    const Query q = random_query(kAllFamilies[s % 4], 3, 3, s);
    EXPECT_TRUE(oracle_bounds(ds, q).within(bound_query(ds, q).interval, 1e-9)) << render_query(q);
  }
}

TEST(Rejection, BudgetExceeded) {
  try {
    random_dataset_rejection(3, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RejectionBudgetExceeded);
  }
}
