#include "l1svm/formulation.hpp"

#include <algorithm>
#include <cmath>

namespace l1svm {

LpInstance build_soft_lp(const Dataset& d, const SparseSvmConfig& cfg) {
  validate_dataset(d);
  if (cfg.hard_margin) throw Error("build_soft_lp called with a hard-margin config");
  validate_config(cfg);

  const std::size_t m = d.m();
  const std::size_t p = d.p();
  LpInstance lp;
  lp.kind = LpKind::kSoftMargin;
  lp.n = m + 2 * p;
  lp.num_constraints = m;
  lp.num_features = p;
  lp.lambda = cfg.lambda;
  lp.c_diag.assign(lp.n, cfg.lambda);
  std::fill_n(lp.c_diag.begin(), m, 1.0 / static_cast<double>(m));
  lp.b.assign(m, -1.0);
  lp.a_diags.assign(m * lp.n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* row = lp.a_diags.data() + i * lp.n;
    row[i] = -1.0;
    const double y = d.y(i);
    for (std::size_t j = 0; j < p; ++j) {
      const double v = y * d.x(i, j);
      row[m + j] = -v;
      row[m + p + j] = v;
    }
  }
  return lp;
}

LpInstance build_hard_lp(const Dataset& d) {
  validate_dataset(d);
  const std::size_t m = d.m();
  const std::size_t p = d.p();
  LpInstance lp;
  lp.kind = LpKind::kHardMargin;
  lp.n = 2 * p;
  lp.num_constraints = m;
  lp.num_features = p;
  lp.lambda = 1.0;
  lp.c_diag.assign(lp.n, 1.0);
  lp.b.assign(m, -1.0);
  lp.a_diags.assign(m * lp.n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* row = lp.a_diags.data() + i * lp.n;
    const double y = d.y(i);
    for (std::size_t j = 0; j < p; ++j) {
      const double v = y * d.x(i, j);
      row[j] = -v;
      row[p + j] = v;
    }
  }
  return lp;
}

std::vector<std::size_t> support_of(std::span<const double> beta) {
  double inf_norm = 0.0;
  for (double v : beta) inf_norm = std::max(inf_norm, std::abs(v));
  const double cut = kSparsityThreshold * std::max(1.0, inf_norm);
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (std::abs(beta[j]) > cut) support.push_back(j);
  }
  return support;
}

BetaVector read_beta(const PrimalSolution& sol) {
  BetaVector out;
  const std::size_t p = sol.beta_plus.size();
  out.beta.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    out.beta[j] = sol.beta_plus[j] - sol.beta_minus[j];
    out.l1_norm += sol.beta_plus[j] + sol.beta_minus[j];
  }
  out.support = support_of(out.beta);
  return out;
}

double empirical_risk(const Dataset& d, std::span<const double> beta) {
  if (beta.size() != d.p()) throw Error("beta length does not match feature count");
  double total = 0.0;
  for (std::size_t i = 0; i < d.m(); ++i) {
    double margin = 0.0;
    const auto row = d.row(i);
    for (std::size_t j = 0; j < d.p(); ++j) margin += beta[j] * row[j];
    total += std::max(0.0, 1.0 - d.y(i) * margin);
  }
  return total / static_cast<double>(d.m());
}

double hinge_objective(const Dataset& d, const BetaVector& beta, double lambda) {
  double l1 = 0.0;
  for (double v : beta.beta) l1 += std::abs(v);
  return empirical_risk(d, beta.beta) + lambda * l1;
}

double max_constraint_violation(const LpInstance& lp, std::span<const double> x) {
  if (x.size() != lp.n) throw Error("primal vector length does not match LP");
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.num_constraints; ++i) {
    const auto row = lp.a_row(i);
    double lhs = 0.0;
    for (std::size_t k = 0; k < lp.n; ++k) lhs += row[k] * x[k];
    worst = std::max(worst, lhs - lp.b[i]);
  }
  return worst;
}

}  // namespace l1svm
