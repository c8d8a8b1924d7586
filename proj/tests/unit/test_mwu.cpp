#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "l1svm/datagen.hpp"
#include "l1svm/formulation.hpp"
#include "l1svm/mwu.hpp"
#include "l1svm/oracle.hpp"
#include "l1svm/simplex.hpp"

namespace l1svm {
namespace {

MwuResult run(const Dataset& d, const SparseSvmConfig& cfg, MwuConfig mc) {
  OracleSet oracle(d, cfg);
  const LpInstance lp = cfg.hard_margin ? build_hard_lp(d) : build_soft_lp(d, cfg);
  return solve_mwu(lp, mc, oracle);
}

TEST(SolveMwu, PairedObjectiveNearOne) {
  const Dataset d = gen_paired({1.0}, 1);
  MwuConfig mc;
  mc.epsilon = 0.05;
  mc.R_bound = 4.0;
  mc.r_bound = 2.0;
  const MwuResult r = run(d, {0.1, false}, mc);
  ASSERT_TRUE(r.ok()) << to_string(r.status);
  EXPECT_GE(r.primal.objective, 0.95);
  EXPECT_LE(r.primal.objective, 1.05);
}

TEST(SolveMwu, SandwichOnRandomSoftLps) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t m = 2 + seed % 9;
    const std::size_t p = 1 + (seed * 5) % 10;
    const Dataset d = testing::random_dataset(m, p, 900 + seed);
    const SparseSvmConfig cfg{0.1, false};
    const LpInstance lp = build_soft_lp(d, cfg);
    const ExactResult ex = solve_exact(lp);
    ASSERT_TRUE(ex.ok());
    MwuConfig mc;
    mc.epsilon = 0.1;
    mc.R_bound = std::max(1.0, ex.primal.norm_R);
    mc.r_bound = std::max(1.0, ex.dual.norm_r);
    const MwuResult r = run(d, cfg, mc);
    ASSERT_TRUE(r.ok()) << "seed " << seed << ": " << to_string(r.status);
    const double opt = ex.primal.objective;
    EXPECT_GE(r.dual.objective, opt - mc.epsilon - 1e-12) << "seed " << seed;
    EXPECT_LE(r.dual.objective, opt + 1e-9) << "seed " << seed;
    EXPECT_GE(r.primal.objective, opt - 1e-9) << "seed " << seed;
    EXPECT_LE(r.primal.objective, opt + mc.epsilon) << "seed " << seed;
    EXPECT_LE(max_constraint_violation(lp, r.x), mc.epsilon);
    EXPECT_GE(r.report.ledger.a_queries, r.report.iterations);
  }
}

TEST(SolveMwu, HardMarginWithinMarginCeiling) {
  const Dataset d = gen_margin(make_margin_spec(6, 2, 0.5), 16, 3);
  const ExactResult ex = solve_exact(build_hard_lp(d));
  ASSERT_TRUE(ex.ok());
  MwuConfig mc;
  mc.epsilon = 0.1;
  mc.R_bound = std::max(1.0, ex.primal.norm_R);
  mc.r_bound = std::max(1.0, ex.dual.norm_r);
  const MwuResult r = run(d, {0.0, true}, mc);
  ASSERT_TRUE(r.ok()) << to_string(r.status);
  EXPECT_LE(r.primal.objective, std::sqrt(2.0) / 0.5 + 0.1);
  EXPECT_LE(r.primal.objective, ex.primal.objective + 0.1);
}

TEST(SolveMwu, DeterministicIncludingLedger) {
  const Dataset d = testing::random_dataset(6, 4, 5);
  MwuConfig mc;
  mc.epsilon = 0.1;
  mc.R_bound = 6.0;
  mc.r_bound = 1.0;
  mc.seed = 17;
  const MwuResult a = run(d, {0.1, false}, mc);
  const MwuResult b = run(d, {0.1, false}, mc);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.dual.alpha, b.dual.alpha);
  EXPECT_EQ(a.report.ledger, b.report.ledger);
  EXPECT_EQ(a.report.iterations, b.report.iterations);
}

TEST(SolveMwu, LedgerGrowsWithAccuracy) {
  const Dataset d = testing::random_dataset(6, 4, 6);
  MwuConfig mc;
  mc.R_bound = 6.0;
  mc.r_bound = 1.0;
  mc.epsilon = 0.4;
  const MwuResult coarse = run(d, {0.1, false}, mc);
  mc.epsilon = 0.1;
  const MwuResult fine = run(d, {0.1, false}, mc);
  EXPECT_GT(fine.report.iterations, coarse.report.iterations);
  EXPECT_GT(fine.report.ledger.a_queries, coarse.report.ledger.a_queries);
  EXPECT_EQ(fine.report.ledger.b_queries, d.m());
}

TEST(SolveMwu, IterationCapIsReported) {
  const Dataset d = testing::random_dataset(6, 4, 7);
  MwuConfig mc;
  mc.epsilon = 0.01;
  mc.R_bound = 6.0;
  mc.max_iters = 10;
  EXPECT_EQ(run(d, {0.1, false}, mc).status, SolveStatus::kIterationLimit);
}

TEST(SolveMwu, TooSmallPrimalBoundOnHardMargin) {
  const Dataset d({1, -1}, {0.25, -0.25}, 1);
  MwuConfig mc;
  mc.epsilon = 0.05;
  mc.R_bound = 2.0;  // the optimum has norm 4
  const MwuResult r = run(d, {0.0, true}, mc);
  EXPECT_EQ(r.status, SolveStatus::kNoFeasibleWithinBounds);
}

TEST(SolveMwu, ConfigValidation) {
  MwuConfig mc;
  mc.epsilon = 0.0;
  EXPECT_THROW(validate(mc), Error);
  mc = {};
  mc.R_bound = -1.0;
  EXPECT_THROW(validate(mc), Error);
  mc = {};
  mc.r_bound = std::nan("");
  EXPECT_THROW(validate(mc), Error);

  const Dataset d = testing::random_dataset(4, 2, 1);
  const Dataset other = testing::random_dataset(5, 2, 1);
  OracleSet oracle(other, {0.1, false});
  EXPECT_THROW(solve_mwu(build_soft_lp(d, {0.1, false}), MwuConfig{}, oracle), Error);
}

}  // namespace
}  // namespace l1svm
