#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "l1svm/types.hpp"

namespace l1svm {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kNumericalFailure,
  kNoFeasibleWithinBounds,
};

std::string_view to_string(SolveStatus s);

enum class PricingRule {
  kBland,    // first improving column
  kDantzig,  // most negative reduced cost per unit column norm; Bland
             // during degenerate stalls
};

struct ExactOptions {
  /// Acceptance tolerance for primal, dual, complementarity and gap residuals.
  double tol = 1e-9;
  /// Pivot cap; 0 selects 50 * (n + m).
  std::size_t max_iterations = 0;
  /// Pivots between rebuilds of the basis inverse; 0 picks one from m.
  std::size_t refactor_interval = 0;
  PricingRule pricing = PricingRule::kDantzig;
};

struct ExactResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  PrimalSolution primal;
  DualSolution dual;
  std::vector<double> x;  // LP variable vector
  std::size_t iterations = 0;
  std::size_t phase1_iterations = 0;

  double primal_residual = 0.0;   // max(A x - b)+ and max(-x)+
  double dual_residual = 0.0;     // max(-(c + A^T alpha))+ and max(-alpha)+
  double complementarity = 0.0;   // max_i |alpha_i (b_i - A_i x)|, max_k |x_k d_k|
  double duality_gap = 0.0;       // |c.x - (-b.alpha)|

  bool ok() const { return status == SolveStatus::kOptimal; }
};

/// Two-phase revised simplex on the standard form of
/// min c.x s.t. A x <= b, x >= 0. Keeps a dense explicit basis inverse that
/// is rebuilt from an LU factorization at a fixed interval and before
/// optimality is declared.
ExactResult solve_exact(const LpInstance& lp, const ExactOptions& opts = {});

/// Indices i with alpha_i > tau * max_k alpha_k. Empty when alpha is zero.
std::vector<std::size_t> support_vectors(const DualSolution& dual, double tau);

}  // namespace l1svm
