#include "l1svm/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>
#include <unordered_map>

namespace l1svm {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIterationLimit: return "iteration_limit";
    case SolveStatus::kNumericalFailure: return "numerical_failure";
    case SolveStatus::kNoFeasibleWithinBounds: return "no_feasible_solution_within_bounds";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptimalityTol = 1e-11;
constexpr double kZeroTol = 1e-12;
constexpr std::size_t kDegenerateRunBeforeBland = 50;

// Standard form: rows sign_i * (A_i x + s_i) = sign_i * b_i with the sign
// chosen so the right-hand side is nonnegative. Column layout is
// [structural n | logical m | artificial m].
class RevisedSimplex {
 public:
  RevisedSimplex(const LpInstance& lp, const ExactOptions& opts)
      : lp_(lp),
        m_(lp.num_constraints),
        n_(lp.n),
        rhs_(static_cast<Eigen::Index>(m_)),
        sign_(m_),
        basis_(m_),
        is_basic_(n_ + 2 * m_, false),
        cost_(n_ + 2 * m_, 0.0),
        pricing_(opts.pricing) {
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = lp.b[i] >= 0.0 ? 1.0 : -1.0;
      rhs_(idx(i)) = sign_[i] * lp.b[i];
    }
    index_columns();
    max_iterations_ = opts.max_iterations ? opts.max_iterations : 50 * (n_ + m_);
    refactor_interval_ = opts.refactor_interval
                             ? opts.refactor_interval
                             : std::max<std::size_t>(100, m_);
  }

  ExactResult run(double tol) {
    ExactResult res;
    if (m_ == 0) {
      // No constraints: x = 0 is optimal because c >= 0 for our LPs; any
      // negative cost makes the problem unbounded.
      for (double c : lp_.c_diag) {
        if (c < 0.0) {
          res.status = SolveStatus::kUnbounded;
          return res;
        }
      }
      return finish(res, tol);
    }
    const bool need_phase1 = crash_basis();

    if (need_phase1) {
      for (std::size_t i = 0; i < m_; ++i) cost_[artificial(i)] = 1.0;
      phase_ = 1;
      refactor();
      const SolveStatus s = iterate();
      res.phase1_iterations = iterations_;
      if (s != SolveStatus::kOptimal) {
        res.status = s;
        res.iterations = iterations_;
        return res;
      }
      double infeas = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        if (is_artificial(basis_[r])) infeas += std::max(0.0, xb_(idx(r)));
      }
      if (infeas > tol) {
        res.status = SolveStatus::kInfeasible;
        res.iterations = iterations_;
        return res;
      }
      for (std::size_t i = 0; i < m_; ++i) cost_[artificial(i)] = 0.0;
    }

    for (std::size_t k = 0; k < n_; ++k) cost_[k] = lp_.c_diag[k];
    phase_ = 2;
    refactor();
    const SolveStatus s = iterate();
    res.iterations = iterations_;
    if (s != SolveStatus::kOptimal) {
      res.status = s;
      return res;
    }
    return finish(res, tol);
  }

 private:
  static Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }
  std::size_t logical(std::size_t i) const { return n_ + i; }
  std::size_t artificial(std::size_t i) const { return n_ + m_ + i; }
  bool is_artificial(std::size_t j) const { return j >= n_ + m_; }

  // Fills basis_ with singleton structural columns or logicals where the sign
  // allows it, and artificials elsewhere. Returns true if any artificial is
  // basic.
  bool crash_basis() {
    std::vector<std::ptrdiff_t> singleton_for_row(m_, -1);
    for (std::size_t k = 0; k < n_; ++k) {
      const ColumnRef& ref = col_ref_[k];
      if (ref.kind == ColumnRef::kSingleton && ref.value > 0.0 && singleton_for_row[ref.index] < 0) {
        singleton_for_row[ref.index] = static_cast<std::ptrdiff_t>(k);
      }
    }
    bool any_artificial = false;
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t j;
      if (singleton_for_row[i] >= 0) {
        j = static_cast<std::size_t>(singleton_for_row[i]);
      } else if (sign_[i] > 0.0) {
        j = logical(i);
      } else {
        j = artificial(i);
        any_artificial = true;
      }
      basis_[i] = j;
      is_basic_[j] = true;
    }
    return any_artificial;
  }

  // Writes column j of the standard-form matrix into out.
  void load_column(std::size_t j, Eigen::VectorXd& out) const {
    if (j < n_) {
      const ColumnRef& ref = col_ref_[j];
      if (ref.kind == ColumnRef::kDense) {
        out = ref.value * dense_.col(idx(ref.index));
      } else {
        out.setZero(idx(m_));
        if (ref.kind == ColumnRef::kSingleton) out(idx(ref.index)) = ref.value;
      }
      return;
    }
    out.setZero(idx(m_));
    if (j < n_ + m_) {
      const std::size_t i = j - n_;
      out(idx(i)) = sign_[i];
    } else {
      out(idx(j - n_ - m_)) = 1.0;
    }
  }

  double reduced_cost(std::size_t j) const {
    if (j < n_) return cost_[j] - structural_dot(j, y_);
    if (j < n_ + m_) {
      const std::size_t i = j - n_;
      return cost_[j] - y_(idx(i)) * sign_[i];
    }
    return cost_[j] - y_(idx(j - n_ - m_));
  }

  double structural_dot(std::size_t j, const Eigen::VectorXd& v) const {
    const ColumnRef& ref = col_ref_[j];
    switch (ref.kind) {
      case ColumnRef::kZero: return 0.0;
      case ColumnRef::kSingleton: return ref.value * v(idx(ref.index));
      case ColumnRef::kDense: return ref.value * v.dot(dense_.col(idx(ref.index)));
    }
    return 0.0;
  }

  // Stores each structural column once: empty and single-entry columns
  // inline, the rest as a shared dense column up to sign. The soft-margin
  // LP's beta- block is the negation of its beta+ block, so this halves the
  // pricing work.
  void index_columns() {
    col_ref_.resize(n_);
    col_inv_norm_.assign(n_, 1.0);
    std::vector<std::vector<double>> unique;
    std::unordered_multimap<std::size_t, std::size_t> by_hash;
    std::vector<double> col(m_);
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t nnz = 0;
      std::size_t last = 0;
      double first_sign = 0.0;
      double sq = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double v = sign_[i] * lp_.a(i, k);
        col[i] = v == 0.0 ? 0.0 : v;
        if (v != 0.0) {
          if (first_sign == 0.0) first_sign = v > 0.0 ? 1.0 : -1.0;
          ++nnz;
          last = i;
          sq += v * v;
        }
      }
      ColumnRef& ref = col_ref_[k];
      if (nnz > 0) col_inv_norm_[k] = 1.0 / std::sqrt(sq);
      if (nnz == 0) {
        ref = {ColumnRef::kZero, 0, 0.0};
        continue;
      }
      if (nnz == 1) {
        ref = {ColumnRef::kSingleton, last, col[last]};
        continue;
      }
      for (double& v : col) v = v * first_sign + 0.0;
      const std::size_t h = std::hash<std::string_view>{}(std::string_view(
          reinterpret_cast<const char*>(col.data()), col.size() * sizeof(double)));
      std::optional<std::size_t> found;
      auto [lo, hi] = by_hash.equal_range(h);
      for (auto it = lo; it != hi; ++it) {
        if (unique[it->second] == col) {
          found = it->second;
          break;
        }
      }
      if (!found) {
        found = unique.size();
        unique.push_back(col);
        by_hash.emplace(h, *found);
      }
      ref = {ColumnRef::kDense, *found, first_sign};
    }
    dense_.resize(idx(m_), idx(unique.size()));
    for (std::size_t u = 0; u < unique.size(); ++u) {
      for (std::size_t i = 0; i < m_; ++i) dense_(idx(i), idx(u)) = unique[u][i];
    }
  }

  bool improving(std::size_t j, double d) const {
    return d < -kOptimalityTol * (1.0 + std::abs(cost_[j]));
  }

  // Bland: first improving column. Dantzig: most negative reduced cost per
  // unit column norm, falling back to Bland once pivots stall on degenerate
  // vertices and until one makes progress, which keeps the anti-cycling
  // guarantee.
  std::size_t choose_entering(std::size_t total_cols) {
    const bool bland =
        pricing_ == PricingRule::kBland || degenerate_run_ >= kDegenerateRunBeforeBland;
    if (bland) {
      for (std::size_t j = 0; j < total_cols; ++j) {
        if (!is_basic_[j] && improving(j, reduced_cost(j))) return j;
      }
      return total_cols;
    }
    reduced_.noalias() = dense_.transpose() * y_;
    std::size_t best_j = total_cols;
    double best_d = 0.0;
    for (std::size_t j = 0; j < total_cols; ++j) {
      if (is_basic_[j]) continue;
      double d;
      if (j < n_) {
        const ColumnRef& ref = col_ref_[j];
        double dot = 0.0;
        if (ref.kind == ColumnRef::kDense) {
          dot = ref.value * reduced_(idx(ref.index));
        } else if (ref.kind == ColumnRef::kSingleton) {
          dot = ref.value * y_(idx(ref.index));
        }
        d = cost_[j] - dot;
      } else {
        d = cost_[j] - y_(idx(j - n_)) * sign_[j - n_];
      }
      if (!improving(j, d)) continue;
      const double score = d * inv_norm(j);
      if (score < best_d) {
        best_d = score;
        best_j = j;
      }
    }
    return best_j;
  }

  double inv_norm(std::size_t j) const { return j < n_ ? col_inv_norm_[j] : 1.0; }

  void refactor() {
    Eigen::MatrixXd basis_matrix(idx(m_), idx(m_));
    Eigen::VectorXd col;
    Eigen::VectorXd cb(idx(m_));
    for (std::size_t r = 0; r < m_; ++r) {
      load_column(basis_[r], col);
      basis_matrix.col(idx(r)) = col;
      cb(idx(r)) = cost_[basis_[r]];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    binv_ = lu.inverse();
    xb_ = binv_ * rhs_;
    for (Eigen::Index r = 0; r < xb_.size(); ++r) {
      if (xb_(r) < 0.0 && xb_(r) > -1e-10) xb_(r) = 0.0;
    }
    y_ = binv_.transpose() * cb;
    since_refactor_ = 0;
  }

  SolveStatus iterate() {
    Eigen::VectorXd column;
    Eigen::VectorXd alpha;
    const std::size_t total_cols = n_ + m_;  // artificials never enter
    while (true) {
      if (since_refactor_ >= refactor_interval_) refactor();

      const std::size_t entering = choose_entering(total_cols);
      const double d_enter = entering < total_cols ? reduced_cost(entering) : 0.0;
      if (entering == total_cols) {
        if (since_refactor_ > 0) {
          // Confirm optimality against a fresh factorization.
          refactor();
          continue;
        }
        return SolveStatus::kOptimal;
      }
      if (iterations_ >= max_iterations_) return SolveStatus::kIterationLimit;

      load_column(entering, column);
      alpha.noalias() = binv_ * column;

      // Bland ratio test: minimum ratio, ties broken by smallest basic index.
      // A basic artificial left at zero in phase 2 leaves as soon as the
      // entering column touches its row.
      std::ptrdiff_t leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = alpha(idx(r));
        double ratio;
        if (phase_ == 2 && is_artificial(basis_[r])) {
          if (std::abs(a) <= kPivotTol) continue;
          ratio = 0.0;
        } else {
          if (a <= kPivotTol) continue;
          ratio = std::max(0.0, xb_(idx(r))) / a;
        }
        const double tie = kZeroTol * (1.0 + best);
        if (leave < 0 || ratio < best - tie) {
          best = ratio;
          leave = static_cast<std::ptrdiff_t>(r);
        } else if (ratio <= best + tie &&
                   basis_[r] < basis_[static_cast<std::size_t>(leave)]) {
          leave = static_cast<std::ptrdiff_t>(r);
        }
      }
      if (leave < 0) return SolveStatus::kUnbounded;

      const std::size_t r = static_cast<std::size_t>(leave);
      const double pivot = alpha(idx(r));
      const double theta = phase_ == 2 && is_artificial(basis_[r])
                               ? 0.0
                               : std::max(0.0, xb_(idx(r))) / pivot;

      xb_.noalias() -= theta * alpha;
      xb_(idx(r)) = theta;

      Eigen::RowVectorXd pivot_row = binv_.row(idx(r)) / pivot;
      y_.noalias() += d_enter * pivot_row.transpose();
      binv_.noalias() -= alpha * pivot_row;
      binv_.row(idx(r)) = pivot_row;

      if (theta > kZeroTol) {
        degenerate_run_ = 0;
      } else {
        ++degenerate_run_;
      }


      is_basic_[basis_[r]] = false;
      is_basic_[entering] = true;
      basis_[r] = entering;
      ++iterations_;
      ++since_refactor_;
    }
  }

  ExactResult& finish(ExactResult& res, double tol) {
    std::vector<double> x(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) x[basis_[r]] = std::max(0.0, xb_(idx(r)));
    }
    std::vector<double> alpha(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) alpha[i] = std::max(0.0, -sign_[i] * y_(idx(i)));

    res.x = x;
    res.primal = make_primal(lp_, x);
    res.dual = make_dual(lp_, std::move(alpha));
    res.iterations = iterations_;
    compute_residuals(res);
    const bool accepted = res.primal_residual <= tol && res.dual_residual <= tol &&
                          res.complementarity <= tol && res.duality_gap <= tol;
    res.status = accepted ? SolveStatus::kOptimal : SolveStatus::kNumericalFailure;
    return res;
  }

  void compute_residuals(ExactResult& res) const {
    const auto& x = res.x;
    const auto& alpha = res.dual.alpha;
    double primal = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto row = lp_.a_row(i);
      double lhs = 0.0;
      for (std::size_t k = 0; k < n_; ++k) lhs += row[k] * x[k];
      primal = std::max(primal, lhs - lp_.b[i]);
      comp = std::max(comp, std::abs(alpha[i] * (lp_.b[i] - lhs)));
    }
    double dual = 0.0;
    std::vector<double> d(lp_.c_diag);
    for (std::size_t i = 0; i < m_; ++i) {
      if (alpha[i] == 0.0) continue;
      const auto row = lp_.a_row(i);
      for (std::size_t k = 0; k < n_; ++k) d[k] += row[k] * alpha[i];
    }
    for (std::size_t k = 0; k < n_; ++k) {
      dual = std::max(dual, -d[k]);
      comp = std::max(comp, std::abs(x[k] * d[k]));
    }
    res.primal_residual = primal;
    res.dual_residual = dual;
    res.complementarity = comp;
    res.duality_gap = std::abs(res.primal.objective - res.dual.objective);
  }

  const LpInstance& lp_;
  std::size_t m_;
  std::size_t n_;
  struct ColumnRef {
    enum Kind { kZero, kSingleton, kDense };
    Kind kind;
    std::size_t index;  // row for a singleton, dense_ column otherwise
    double value;       // the entry for a singleton, the sign otherwise
  };
  std::vector<ColumnRef> col_ref_;
  Eigen::MatrixXd dense_;
  Eigen::VectorXd rhs_;
  std::vector<double> sign_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<double> cost_;

  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd y_;

  Eigen::VectorXd reduced_;
  std::vector<double> col_inv_norm_;
  PricingRule pricing_;
  std::size_t degenerate_run_ = 0;


  int phase_ = 2;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t max_iterations_ = 0;
  std::size_t refactor_interval_ = 0;
};

}  // namespace

ExactResult solve_exact(const LpInstance& lp, const ExactOptions& opts) {
  validate_lp(lp);
  if (!(opts.tol > 0.0)) throw Error("solve_exact: tolerance must be positive");
  RevisedSimplex solver(lp, opts);
  return solver.run(opts.tol);
}

std::vector<std::size_t> support_vectors(const DualSolution& dual, double tau) {
  if (!(tau > 0.0)) throw Error("support_vectors: tau must be positive");
  double top = 0.0;
  for (double a : dual.alpha) top = std::max(top, a);
  std::vector<std::size_t> out;
  if (top == 0.0) return out;
  for (std::size_t i = 0; i < dual.alpha.size(); ++i) {
    if (dual.alpha[i] > tau * top) out.push_back(i);
  }
  return out;
}

}  // namespace l1svm
