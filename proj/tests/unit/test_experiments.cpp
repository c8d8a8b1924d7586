#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>

#include <cmath>
#include <cstdlib>

#include "helpers.hpp"
#include "l1svm/bounds.hpp"
#include "l1svm/datagen.hpp"
#include "l1svm/experiments.hpp"
#include "l1svm/formulation.hpp"

namespace l1svm {
namespace {

TEST(Train, ExactOnPairedReportsNorms) {
  const Dataset d = gen_paired({1.0}, 3);
  TrainOptions opts;
  opts.svm.lambda = 0.1;
  const TrainReport rep = train(d, opts);
  EXPECT_EQ(rep.status, SolveStatus::kOptimal);
  EXPECT_EQ(rep.solver, "exact");
  EXPECT_NEAR(rep.R, 6.0, 1e-9);
  EXPECT_NEAR(rep.r, 1.0, 1e-9);
  EXPECT_NEAR(rep.objective, 1.0, 1e-12);
  EXPECT_LE(rep.duality_gap, 1e-9);
  // Materializing the LP reads every entry once.
  EXPECT_EQ(rep.ledger.a_queries, 6u * (6u + 2u));
  EXPECT_EQ(rep.ledger.b_queries, 6u);
}

TEST(Train, MwuWithinEpsilonOfExact) {
  const Dataset d = gen_paired({1.0, -1.0}, 2);
  TrainOptions opts;
  opts.svm.lambda = 0.1;
  const TrainReport exact = train(d, opts);
  opts.solver = SolverKind::kMwu;
  opts.epsilon = 0.05;
  const TrainReport mwu = train(d, opts);
  EXPECT_EQ(mwu.status, SolveStatus::kOptimal);
  EXPECT_NEAR(mwu.objective, exact.objective, 0.05);
  EXPECT_GT(mwu.iterations, 0u);
  EXPECT_GT(mwu.width_bound, 0.0);
}

TEST(Train, HardMarginXorIsInfeasible) {
  TrainOptions opts;
  opts.svm.hard_margin = true;
  EXPECT_EQ(train(gen_xor(), opts).status, SolveStatus::kInfeasible);
  opts.solver = SolverKind::kMwu;
  EXPECT_THROW(train(gen_xor(), opts), Error);  // no default norm bounds
}

TEST(Train, DualSamplesAreSupportVectors) {
  const Dataset d = testing::random_dataset(20, 4, 3);
  TrainOptions opts;
  opts.svm.lambda = 0.05;
  opts.dual_samples = 50;
  opts.seed = 2;
  const TrainReport rep = train(d, opts);
  ASSERT_EQ(rep.dual_samples.size(), 50u);
  for (std::size_t i : rep.dual_samples) EXPECT_GT(rep.alpha[i], 0.0);
}

TEST(MaterializeLp, EqualsBuiltLp) {
  const Dataset d = testing::random_dataset(7, 3, 1);
  OracleSet o(d, {0.2, false});
  QueryLedger l;
  const LpInstance a = materialize_lp(o, l);
  const LpInstance b = build_soft_lp(d, {0.2, false});
  EXPECT_EQ(a.a_diags, b.a_diags);
  EXPECT_EQ(a.b, b.b);
  EXPECT_EQ(a.c_diag, b.c_diag);
  EXPECT_EQ(a.lambda, 0.2);
  EXPECT_EQ(l.a_queries, 7u * 13u);
  EXPECT_EQ(l.c_queries, 13u);
}

TEST(BinomialTail, MatchesBoost) {
  for (std::size_t n : {10u, 200u, 1000u}) {
    for (double q : {0.01, 0.1, 0.5}) {
      for (std::size_t k : {0u, 1u, 5u, 50u, 120u}) {
        if (k > n) continue;
        const boost::math::binomial dist(static_cast<double>(n), q);
        const double expect = k == 0 ? 1.0 : boost::math::cdf(boost::math::complement(dist, k - 1.0));
        EXPECT_NEAR(binomial_upper_tail(n, k, q), expect, 1e-10 + 1e-9 * expect)
            << n << " " << k << " " << q;
      }
    }
  }
  EXPECT_EQ(binomial_upper_tail(10, 11, 0.5), 0.0);
  EXPECT_THROW(binomial_upper_tail(10, 2, 1.5), Error);
}

TEST(LogLogSlope, RecoversPowerLaw) {
  std::vector<double> x = {1, 2, 4, 8, 16}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
  EXPECT_NEAR(log_log_slope(x, y), 1.7, 1e-12);
  EXPECT_THROW(log_log_slope({1.0}, {1.0}), Error);
  EXPECT_THROW(log_log_slope({1.0, 2.0}, {1.0, -1.0}), Error);
}

TEST(VerifyMargin, SmallGridPassesAndRoundTrips) {
  MarginGrid g;
  g.p = {16};
  g.p_prime = {1, 2};
  g.nu = {0.5, 1.0};
  g.trials = 3;
  g.seed = 5;
  const auto rows = verify_margin(g, 2);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_TRUE(all_mandatory_pass(rows));
  for (const auto& r : rows) {
    EXPECT_EQ(r.bound, "margin_l1_norm");
    // bound_value = sqrt(p')/nu, so 4 p'/nu^2 = 4 bound_value^2.
    EXPECT_EQ(static_cast<long>(r.m), std::lround(4.0 * r.bound_value * r.bound_value));
  }
  EXPECT_EQ(bound_rows_from_csv(bound_rows_csv(rows)), rows);
  EXPECT_EQ(verify_margin(g, 1), rows);
}

TEST(VerifyMargin, EmptyGridIsVacuous) {
  const auto rows = verify_margin(MarginGrid{}, 1);
  EXPECT_TRUE(rows.empty());
  EXPECT_TRUE(all_mandatory_pass(rows));
  EXPECT_TRUE(bound_rows_from_csv(bound_rows_csv(rows)).empty());
}

TEST(VerifySubgaussian, SummaryRowsAreMandatory) {
  SubgaussianGrid g;
  g.p = {32};
  g.trials = 6;
  g.seed = 1;
  const auto rows = verify_subgaussian(g, 2);
  std::size_t summaries = 0;
  for (const auto& r : rows) {
    EXPECT_EQ(r.mandatory, r.instance == "summary") << r.bound;
    summaries += r.mandatory;
  }
  EXPECT_EQ(summaries, 3u);
  EXPECT_EQ(rows.size(), 3u * 6u + 3u);
  EXPECT_TRUE(all_mandatory_pass(rows));
  EXPECT_EQ(verify_subgaussian(g, 1), rows);
}

TEST(Sweep, DeterministicAcrossJobsAndRoundTrips) {
  SweepGrid g;
  g.p = {16, 32};
  g.trials = 2;
  g.seed = 3;
  const auto a = run_sweep(g, 1);
  const auto b = run_sweep(g, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(sweep_rows_csv(a), sweep_rows_csv(b));
  EXPECT_EQ(sweep_rows_from_csv(sweep_rows_csv(a)), a);
  for (const auto& r : a) EXPECT_EQ(r.wall_ms, 0.0);
}

TEST(Sweep, PairedPrimalNormDoublesWithM) {
  SweepGrid g;
  g.family = "paired";
  g.p = {3};
  g.m = {2, 4, 8, 16};
  const auto rows = run_sweep(g, 1);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_NEAR(rows[k].R_measured / rows[k - 1].R_measured, 2.0, 1e-9);
    EXPECT_NEAR(rows[k].r_measured, 1.0, 1e-9);
  }
}

TEST(Sweep, MwuRowsPerEpsilon) {
  SweepGrid g;
  g.p = {16};
  g.solver = SolverKind::kMwu;
  g.epsilon = {0.4, 0.2};
  const auto rows = run_sweep(g, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_GT(rows[1].iterations, rows[0].iterations);
  g.epsilon.clear();
  EXPECT_THROW(run_sweep(g, 1), Error);
}

TEST(LossMoments, StayInRangeAndBelowBounds) {
  const auto lm = truncated_loss_moments(2.0, 10.0, 200000, 4);
  EXPECT_GE(lm.min, 0.0);
  EXPECT_LE(lm.max, 11.0);
  EXPECT_LE(lm.mean, bounds::risk_bound(2.0));
  EXPECT_LE(lm.variance, bounds::variance_bound(2.0));
}

TEST(DefaultJobs, ReadsEnvironment) {
  ::setenv("L1SVM_JOBS", "3", 1);
  EXPECT_EQ(default_jobs(), 3u);
  ::unsetenv("L1SVM_JOBS");
  EXPECT_EQ(default_jobs(), 1u);
}

}  // namespace
}  // namespace l1svm
