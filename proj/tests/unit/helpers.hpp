#pragma once

// Test-side reference implementations. None of these call into the library's
// solvers or formula code, so agreement with them is an independent check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "l1svm/types.hpp"

namespace l1svm::testing {

inline Dataset random_dataset(std::size_t m, std::size_t p, std::uint64_t seed,
                              double noise = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> w(p);
  for (auto& v : w) v = g(rng);
  std::vector<int> y(m);
  std::vector<double> x(m * p);
  for (std::size_t i = 0; i < m; ++i) {
    double s = noise * g(rng);
    for (std::size_t j = 0; j < p; ++j) {
      x[i * p + j] = u(rng);
      s += w[j] * x[i * p + j];
    }
    y[i] = s >= 0.0 ? 1 : -1;
  }
  return Dataset(std::move(y), std::move(x), p);
}

/// Entry A_i[k,k] of the soft-margin LP, written out from the block formulas.
inline double soft_entry(const Dataset& d, std::size_t i, std::size_t k) {
  const std::size_t m = d.m(), p = d.p();
  if (k < m) return k == i ? -1.0 : 0.0;
  if (k < m + p) return -d.y(i) * d.x(i, k - m);
  return d.y(i) * d.x(i, k - m - p);
}

/// A general LP in the library's container: the hard-margin layout places no
/// constraint on the entries, only on n = 2 * num_features.
inline LpInstance general_lp(std::size_t m, std::size_t half_n, std::vector<double> a,
                             std::vector<double> b, std::vector<double> c) {
  LpInstance lp;
  lp.kind = LpKind::kHardMargin;
  lp.n = 2 * half_n;
  lp.num_constraints = m;
  lp.num_features = half_n;
  lp.lambda = 1.0;
  lp.a_diags = std::move(a);
  lp.b = std::move(b);
  lp.c_diag = std::move(c);
  return lp;
}

struct BruteForce {
  bool feasible = false;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

/// Minimum of c.x over the vertices of {A x <= b, x >= 0}, found by solving
/// every choice of n tight constraints. Assumes the LP is bounded.
inline BruteForce brute_force_lp(const LpInstance& lp) {
  const std::size_t n = lp.n, m = lp.num_constraints, total = m + n;
  BruteForce best;
  std::vector<bool> pick(total, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd r(n);
    std::size_t row = 0;
    for (std::size_t t = 0; t < total; ++t) {
      if (!pick[t]) continue;
      if (t < m) {
        for (std::size_t k = 0; k < n; ++k) M(row, k) = lp.a(t, k);
        r(row) = lp.b[t];
      } else {
        M.row(row).setZero();
        M(row, t - m) = 1.0;
        r(row) = 0.0;
      }
      ++row;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.rank() < static_cast<Eigen::Index>(n)) continue;
    const Eigen::VectorXd x = lu.solve(r);
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) ok = x(k) >= -1e-9;
    for (std::size_t i = 0; i < m && ok; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += lp.a(i, k) * x(k);
      ok = s <= lp.b[i] + 1e-9;
    }
    if (!ok) continue;
    double obj = 0.0;
    for (std::size_t k = 0; k < n; ++k) obj += lp.c_diag[k] * x(k);
    best.feasible = true;
    if (obj < best.objective) {
      best.objective = obj;
      best.x.assign(x.data(), x.data() + n);
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

/// Average hinge loss plus lambda ||beta||_1, computed directly.
inline double direct_objective(const Dataset& d, const std::vector<double>& beta, double lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < d.m(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d.p(); ++j) s += beta[j] * d.x(i, j);
    loss += std::max(0.0, 1.0 - d.y(i) * s);
  }
  double l1 = 0.0;
  for (double b : beta) l1 += std::abs(b);
  return loss / static_cast<double>(d.m()) + lambda * l1;
}

}  // namespace l1svm::testing
