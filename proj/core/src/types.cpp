#include "l1svm/types.hpp"

#include <cmath>
#include <sstream>

namespace l1svm {

Dataset::Dataset(std::vector<int> labels, std::vector<double> features, std::size_t p)
    : labels_(std::move(labels)), features_(std::move(features)), p_(p) {}

Dataset Dataset::from_rows(std::vector<int> labels,
                           const std::vector<std::vector<double>>& rows) {
  std::size_t p = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * p);
  bool ragged = false;
  for (const auto& r : rows) {
    if (r.size() != p) ragged = true;
    flat.insert(flat.end(), r.begin(), r.end());
  }
  // A ragged matrix or a row count that differs from the label count leaves
  // flat.size() != m * p, which validate_dataset() reports.
  if (ragged && flat.size() == labels.size() * p) flat.push_back(0.0);
  return Dataset(std::move(labels), std::move(flat), p);
}

void validate_dataset(const Dataset& d) {
  using K = DatasetError::Kind;
  if (d.m() == 0 || d.p() == 0) {
    throw DatasetError(K::kEmpty, "dataset needs at least one sample and one feature");
  }
  if (d.features().size() != d.m() * d.p()) {
    std::ostringstream os;
    os << "feature matrix has " << d.features().size() << " entries, expected "
       << d.m() << " x " << d.p();
    throw DatasetError(K::kDimensionMismatch, os.str());
  }
  for (std::size_t i = 0; i < d.m(); ++i) {
    if (d.y(i) != 1 && d.y(i) != -1) {
      std::ostringstream os;
      os << "label " << d.y(i) << " at sample " << i << " is not -1 or +1";
      throw DatasetError(K::kNonBinaryLabel, os.str());
    }
  }
  for (std::size_t k = 0; k < d.features().size(); ++k) {
    if (!std::isfinite(d.features()[k])) {
      std::ostringstream os;
      os << "non-finite feature at sample " << k / d.p() << ", feature " << k % d.p();
      throw DatasetError(K::kNonFiniteFeature, os.str());
    }
  }
}

void validate_config(const SparseSvmConfig& cfg) {
  if (!cfg.hard_margin && !(cfg.lambda > 0.0)) {
    throw Error("lambda must be positive for the soft-margin problem");
  }
  if (!std::isfinite(cfg.lambda)) throw Error("lambda must be finite");
}

void validate_lp(const LpInstance& lp) {
  const std::size_t expected_n = lp.kind == LpKind::kSoftMargin
                                     ? lp.num_constraints + 2 * lp.num_features
                                     : 2 * lp.num_features;
  if (lp.n != expected_n) throw Error("LP variable count does not match its layout");
  if (lp.c_diag.size() != lp.n || lp.b.size() != lp.num_constraints ||
      lp.a_diags.size() != lp.n * lp.num_constraints) {
    throw Error("LP arrays have inconsistent sizes");
  }
  for (double v : lp.c_diag) {
    if (!std::isfinite(v)) throw Error("LP cost is not finite");
  }
  for (double v : lp.a_diags) {
    if (!std::isfinite(v)) throw Error("LP constraint entry is not finite");
  }
  for (double v : lp.b) {
    if (!std::isfinite(v)) throw Error("LP right-hand side is not finite");
  }
}

std::vector<double> PrimalSolution::variables() const {
  std::vector<double> x;
  x.reserve(xi.size() + beta_plus.size() + beta_minus.size());
  x.insert(x.end(), xi.begin(), xi.end());
  x.insert(x.end(), beta_plus.begin(), beta_plus.end());
  x.insert(x.end(), beta_minus.begin(), beta_minus.end());
  return x;
}

PrimalSolution make_primal(const LpInstance& lp, std::span<const double> x) {
  if (x.size() != lp.n) throw Error("primal vector length does not match LP");
  PrimalSolution s;
  const std::size_t slack = lp.slack_count();
  const std::size_t p = lp.num_features;
  s.xi.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(slack));
  s.beta_plus.assign(x.begin() + static_cast<std::ptrdiff_t>(slack),
                     x.begin() + static_cast<std::ptrdiff_t>(slack + p));
  s.beta_minus.assign(x.begin() + static_cast<std::ptrdiff_t>(slack + p), x.end());
  double obj = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < lp.n; ++k) {
    obj += lp.c_diag[k] * x[k];
    norm += std::abs(x[k]);
  }
  s.objective = obj;
  s.norm_R = norm;
  return s;
}

DualSolution make_dual(const LpInstance& lp, std::vector<double> alpha) {
  if (alpha.size() != lp.num_constraints) throw Error("dual vector length does not match LP");
  DualSolution d;
  double norm = 0.0;
  double obj = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    norm += std::abs(alpha[i]);
    obj += -lp.b[i] * alpha[i];
  }
  d.alpha = std::move(alpha);
  d.norm_r = norm;
  d.objective = obj;
  return d;
}

}  // namespace l1svm
