#pragma once

#include "l1svm/types.hpp"

namespace l1svm {

/// Soft-margin LP with n = m + 2p variables.
///
/// Constraint i is y_i x_i.(beta+ - beta-) + xi_i >= 1, stored in the
/// A_i.x <= b_i orientation with b_i = -1. The slack block of A_i carries -1
/// only at position i.
LpInstance build_soft_lp(const Dataset& d, const SparseSvmConfig& cfg);

/// Hard-margin LP with n = 2p variables and unit costs; no slack block.
LpInstance build_hard_lp(const Dataset& d);

/// beta_j = beta+_j - beta-_j, with l1_norm = sum_j (beta+_j + beta-_j).
BetaVector read_beta(const PrimalSolution& sol);

/// Support of a coefficient vector under the relative sparsity threshold.
std::vector<std::size_t> support_of(std::span<const double> beta);

/// Average hinge loss plus lambda times the L1 norm of beta.
double hinge_objective(const Dataset& d, const BetaVector& beta, double lambda);

/// Average hinge loss alone.
double empirical_risk(const Dataset& d, std::span<const double> beta);

/// max_i (A_i.x - b_i), clipped below at zero.
double max_constraint_violation(const LpInstance& lp, std::span<const double> x);

}  // namespace l1svm
