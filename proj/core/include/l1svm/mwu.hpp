#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "l1svm/oracle.hpp"
#include "l1svm/simplex.hpp"
#include "l1svm/types.hpp"

namespace l1svm {

struct MwuConfig {
  double epsilon = 0.05;
  /// Bound on the L1 norm of an optimal primal vector.
  double R_bound = 1.0;
  /// Bound on the L1 norm of an optimal dual vector.
  double r_bound = 1.0;
  std::size_t max_iters = 1'000'000'000;
  /// Seeds the sampling readout; the solve itself is deterministic.
  std::uint64_t seed = 0;
};

void validate(const MwuConfig& cfg);

struct WidthStats {
  double bound = 0.0;          // width used for the step size
  double max_observed = 0.0;   // largest |loss| seen in any iteration
  double mean_observed = 0.0;  // mean over iterations of max_i |loss_i|
};

/// One objective-level feasibility test of the binary search.
struct FeasibilityTest {
  double target = 0.0;
  bool feasible = false;
  std::size_t iterations = 0;
};

struct MwuReport {
  std::size_t iterations = 0;
  double duality_gap_estimate = 0.0;
  double lower_bound = 0.0;  // best certified lower bound on the optimum
  QueryLedger ledger;
  double wall_ms = 0.0;
  WidthStats width;
  double inner_accuracy = 0.0;  // per-test accuracy delta
  double learning_rate = 0.0;
  std::size_t iterations_per_test_cap = 0;
  std::vector<FeasibilityTest> tests;
};

struct MwuResult {
  SolveStatus status = SolveStatus::kNoFeasibleWithinBounds;
  PrimalSolution primal;
  DualSolution dual;
  std::vector<double> x;
  /// Largest constraint violation of the averaged iterate before repair.
  double raw_violation = 0.0;
  MwuReport report;

  bool ok() const { return status == SolveStatus::kOptimal; }
};

/// Primal-dual multiplicative-weights LP solver.
///
/// Binary search on the objective level t over [0, 1] (soft margin) or
/// [0, R_bound] (hard margin) until the bracket is at most epsilon/2. Each
/// level is tested by MWU over the m constraints plus the objective row
/// t - c.x >= 0, with the primal player answering on the L1 ball of radius
/// R_bound by putting all its mass on the single best coordinate (or on 0).
///
/// With W = max(|b| + R_bound |A|, |t - R_bound |c||, t, 1) and
/// delta = epsilon / (2 (1 + r_bound)), each test uses step
/// eta = delta / (2 W^2) and runs at most ceil(4 W^2 ln(m + 1) / delta^2)
/// iterations; it stops early on an oracle certificate of infeasibility or
/// once the running average satisfies every row to within delta. The total
/// iteration count is therefore at most
/// 16 W^2 (1 + r_bound)^2 ln(m + 1) / epsilon^2 per test, times
/// ceil(log2(2 t_max / epsilon)) + 1 tests.
///
/// Every entry of A, b and C is read through the oracle and charged to the
/// report's ledger. The soft-margin primal is repaired to exact feasibility by
/// raising slacks. The dual is the weight vector with the best certified lower
/// bound: either its Lagrangian value over the R_bound ball (valid whenever
/// R_bound covers an optimal primal) or, when larger, the objective of its
/// rescaling to exact dual feasibility. DualSolution::objective holds that
/// bound.
MwuResult solve_mwu(const LpInstance& lp, const MwuConfig& cfg, const OracleSet& oracle);

}  // namespace l1svm
