#include "l1svm/mwu.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

namespace l1svm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Everything the feasibility tests share. Holds the cached b and c and the
// scratch buffers so a test allocates nothing.
class MwuEngine {
 public:
  MwuEngine(const LpInstance& lp, const MwuConfig& cfg, const OracleSet& oracle,
            QueryLedger& ledger)
      : lp_(lp), cfg_(cfg), oracle_(oracle), ledger_(ledger),
        m_(oracle.m()), n_(oracle.n()) {
    b_.resize(m_);
    c_.resize(n_);
    for (std::size_t i = 0; i < m_; ++i) b_[i] = oracle_.query_b(i, ledger_);
    for (std::size_t k = 0; k < n_; ++k) c_[k] = oracle_.query_c(k, ledger_);
    col_.resize(m_);
    for (std::size_t k = 0; k < n_; ++k) {
      oracle_.column(k, col_, ledger_);
      for (double v : col_) a_max_ = std::max(a_max_, std::abs(v));
    }
    for (double v : b_) b_max_ = std::max(b_max_, std::abs(v));
    for (double v : c_) c_max_ = std::max(c_max_, v);
    g_.resize(n_);
    w_.resize(m_);
    ax_sum_.resize(m_);
    q_sum_.resize(m_);
    x_sum_.resize(n_);
  }

  struct Outcome {
    bool feasible = false;
    bool hit_cap = false;
    std::size_t iterations = 0;
    std::vector<double> x;   // averaged iterate when feasible
    std::vector<double> ax;  // A x for that iterate
    double raw_violation = 0.0;
  };

  /// Width of the losses at objective level t.
  double width(double t) const {
    const double rows = b_max_ + cfg_.R_bound * a_max_;
    const double obj = std::max(t, std::abs(t - cfg_.R_bound * c_max_));
    return std::max({rows, obj, 1.0});
  }

  double delta() const { return cfg_.epsilon / (2.0 * (1.0 + cfg_.r_bound)); }

  std::size_t cap(double t) const {
    const double w = width(t);
    const double d = delta();
    const double rows = static_cast<double>(m_ + 1);
    return static_cast<std::size_t>(std::ceil(4.0 * w * w * std::log(rows) / (d * d)));
  }

  Outcome run(double t, std::size_t budget) {
    const double w_bound = width(t);
    const double d = delta();
    const double eta = d / (2.0 * w_bound * w_bound);
    const double R = cfg_.R_bound;
    const std::size_t limit = cap(t);
    last_eta_ = eta;

    const double uniform = 1.0 / static_cast<double>(m_ + 1);
    std::fill(w_.begin(), w_.end(), uniform);
    double w_obj = uniform;
    std::fill(ax_sum_.begin(), ax_sum_.end(), 0.0);
    std::fill(q_sum_.begin(), q_sum_.end(), 0.0);
    std::fill(x_sum_.begin(), x_sum_.end(), 0.0);
    double cx_sum = 0.0;
    double q_obj_sum = 0.0;

    Outcome out;
    for (std::size_t it = 1; it <= limit; ++it) {
      if (iterations_ >= budget) {
        out.hit_cap = true;
        return out;
      }
      ++iterations_;
      ++out.iterations;

      // renormalize() keeps the weights summing to one, so they are the
      // distribution q itself.
      const std::vector<double>& q = w_;
      const double q_obj = w_obj;

      oracle_.weighted_column_sums(q, g_, ledger_);
      double base = q_obj * t;
      for (std::size_t i = 0; i < m_; ++i) base += q[i] * b_[i];

      // Payoff of R e_k is base - R (g_k + q_obj c_k); x = 0 pays base.
      std::optional<std::size_t> pick;
      double best = 0.0;
      for (std::size_t k = 0; k < n_; ++k) {
        const double coef = g_[k] + q_obj * c_[k];
        if (coef < best) {
          best = coef;
          pick = k;
        }
      }
      const double value = base - R * best;
      if (value < -1e-12 * w_bound) {
        record_dual_candidate(q, q_obj, t, value);
        return out;
      }

      for (std::size_t i = 0; i < m_; ++i) q_sum_[i] += q[i];
      q_obj_sum += q_obj;

      double max_loss = std::abs(t);
      if (pick) {
        oracle_.column(*pick, col_, ledger_);
        const double s_obj = t - R * c_[*pick];
        w_obj *= 1.0 - eta * s_obj;
        max_loss = std::abs(s_obj);
        for (std::size_t i = 0; i < m_; ++i) {
          const double ax = R * col_[i];
          const double s = b_[i] - ax;
          w_[i] *= 1.0 - eta * s;
          max_loss = std::max(max_loss, std::abs(s));
          ax_sum_[i] += ax;
        }
        x_sum_[*pick] += R;
        cx_sum += R * c_[*pick];
      } else {
        w_obj *= 1.0 - eta * t;
        for (std::size_t i = 0; i < m_; ++i) {
          w_[i] *= 1.0 - eta * b_[i];
          max_loss = std::max(max_loss, std::abs(b_[i]));
        }
      }
      note_width(max_loss);
      renormalize(w_obj);

      const double inv = 1.0 / static_cast<double>(out.iterations);
      double viol = cx_sum * inv - t;
      for (std::size_t i = 0; i < m_; ++i) {
        viol = std::max(viol, ax_sum_[i] * inv - b_[i]);
      }
      if (viol <= d || it == limit) {
        out.feasible = true;
        out.raw_violation = std::max(0.0, viol);
        out.x.assign(n_, 0.0);
        for (std::size_t k = 0; k < n_; ++k) out.x[k] = x_sum_[k] * inv;
        out.ax.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) out.ax[i] = ax_sum_[i] * inv;
        break;
      }
    }

    // The averaged weights give a lower bound whatever the outcome.
    if (q_obj_sum > 0.0) {
      std::vector<double> q_avg(q_sum_);
      const double scale = 1.0 / (q_obj_sum + sum(q_sum_));
      for (double& v : q_avg) v *= scale;
      evaluate_candidate(q_avg, q_obj_sum * scale, t);
    }
    return out;
  }

  /// Scales alpha >= 0 into exact dual feasibility c + A^T alpha >= 0 and
  /// returns it with its objective -b.alpha.
  std::pair<std::vector<double>, double> repair_dual(std::vector<double> alpha) {
    for (double& v : alpha) v = std::max(v, 0.0);
    // The slack columns hold a single -1, so alpha_i <= c_i settles them
    // without shrinking every other multiplier.
    if (lp_.kind == LpKind::kSoftMargin) {
      for (std::size_t i = 0; i < m_; ++i) alpha[i] = std::min(alpha[i], c_[i]);
    }
    oracle_.weighted_column_sums(alpha, g_, ledger_);
    double scale = 1.0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (g_[k] < 0.0 && c_[k] + g_[k] < 0.0) scale = std::min(scale, c_[k] / -g_[k]);
    }
    double obj = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      alpha[i] *= scale;
      obj -= b_[i] * alpha[i];
    }
    return {std::move(alpha), obj};
  }

  std::size_t iterations() const { return iterations_; }
  double lower_bound() const { return lower_bound_; }
  double eta() const { return last_eta_; }
  const std::vector<double>& best_dual() const { return best_dual_; }
  double best_dual_objective() const { return best_dual_obj_; }
  std::size_t m() const { return m_; }
  double b(std::size_t i) const { return b_[i]; }
  double c(std::size_t k) const { return c_[k]; }
  double width_max() const { return width_max_; }
  double width_mean() const {
    return width_count_ == 0 ? 0.0 : width_total_ / static_cast<double>(width_count_);
  }

 private:
  static double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }

  void renormalize(double& w_obj) {
    double total = w_obj;
    for (double v : w_) total += v;
    const double inv = 1.0 / total;
    for (double& v : w_) v *= inv;
    w_obj *= inv;
  }

  void note_width(double loss) {
    width_max_ = std::max(width_max_, loss);
    width_total_ += loss;
    ++width_count_;
  }

  // alpha = q / q_obj has Lagrangian value t - value / q_obj over the
  // R-ball, a lower bound on OPT whenever the optimum lies in the ball.
  void record_dual_candidate(const std::vector<double>& q, double q_obj, double t,
                             double value) {
    if (q_obj <= 0.0) return;
    std::vector<double> alpha(q);
    for (double& v : alpha) v /= q_obj;
    keep_dual(std::move(alpha), t - value / q_obj);
  }

  void evaluate_candidate(const std::vector<double>& q, double q_obj, double t) {
    oracle_.weighted_column_sums(q, g_, ledger_);
    double base = q_obj * t;
    for (std::size_t i = 0; i < m_; ++i) base += q[i] * b_[i];
    double best = 0.0;
    for (std::size_t k = 0; k < n_; ++k) best = std::min(best, g_[k] + q_obj * c_[k]);
    record_dual_candidate(q, q_obj, t, base - cfg_.R_bound * best);
  }

  // Keeps whichever of alpha (valued by its Lagrangian bound) and its exactly
  // feasible repair certifies more.
  void keep_dual(std::vector<double> alpha, double lagrangian) {
    auto [fixed, obj] = repair_dual(alpha);
    const bool use_fixed = obj >= lagrangian;
    const double value = use_fixed ? obj : lagrangian;
    lower_bound_ = std::max(lower_bound_, value);
    if (value > best_dual_obj_) {
      best_dual_obj_ = value;
      best_dual_ = use_fixed ? std::move(fixed) : std::move(alpha);
    }
  }

  const LpInstance& lp_;
  const MwuConfig& cfg_;
  const OracleSet& oracle_;
  QueryLedger& ledger_;
  std::size_t m_;
  std::size_t n_;

  std::vector<double> b_, c_;
  double a_max_ = 0.0, b_max_ = 0.0, c_max_ = 0.0;

  std::vector<double> col_, g_, w_, ax_sum_, q_sum_, x_sum_;

  std::size_t iterations_ = 0;
  double lower_bound_ = 0.0;
  double last_eta_ = 0.0;
  std::vector<double> best_dual_;
  double best_dual_obj_ = -kInf;
  double width_max_ = 0.0;
  double width_total_ = 0.0;
  std::size_t width_count_ = 0;
};

}  // namespace

void validate(const MwuConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) throw Error("epsilon must be positive");
  if (!(cfg.R_bound >= 1.0) || !std::isfinite(cfg.R_bound)) throw Error("R_bound must be at least 1");
  if (!(cfg.r_bound >= 1.0) || !std::isfinite(cfg.r_bound)) throw Error("r_bound must be at least 1");
  if (cfg.max_iters < 1) throw Error("max_iters must be at least 1");
}

MwuResult solve_mwu(const LpInstance& lp, const MwuConfig& cfg, const OracleSet& oracle) {
  validate(cfg);
  validate_lp(lp);
  const bool hard = lp.kind == LpKind::kHardMargin;
  if (oracle.hard_margin() != hard || oracle.m() != lp.num_constraints || oracle.n() != lp.n) {
    throw Error("solve_mwu: oracle does not describe this LP");
  }

  const auto start = std::chrono::steady_clock::now();
  MwuResult result;
  MwuReport& report = result.report;
  MwuEngine engine(lp, cfg, oracle, report.ledger);

  double lo = 0.0;
  double hi = hard ? cfg.R_bound : 1.0;
  std::optional<std::vector<double>> best_x;
  double best_objective = kInf;
  double best_raw_violation = 0.0;
  bool hit_cap = false;

  // A feasible soft-margin test yields an exactly feasible point once the
  // slacks absorb the violations, so its objective is a true upper bound.
  auto test = [&](double t) {
    auto outcome = engine.run(t, cfg.max_iters);
    report.tests.push_back({t, outcome.feasible, outcome.iterations});
    if (outcome.hit_cap) hit_cap = true;
    if (!outcome.feasible) return false;
    double objective = t;
    if (!hard) {
      for (std::size_t i = 0; i < engine.m(); ++i) {
        outcome.x[i] += std::max(0.0, outcome.ax[i] - engine.b(i));
      }
      objective = 0.0;
      for (std::size_t k = 0; k < outcome.x.size(); ++k) objective += engine.c(k) * outcome.x[k];
    }
    if (objective <= best_objective) {
      best_objective = objective;
      best_x = std::move(outcome.x);
      best_raw_violation = outcome.raw_violation;
    }
    return true;
  };

  while (hi - lo > cfg.epsilon / 2.0 && !hit_cap) {
    const double mid = 0.5 * (lo + hi);
    if (test(mid)) {
      hi = std::min(mid, best_objective);
    } else {
      lo = mid;
    }
    lo = std::max(lo, std::min(engine.lower_bound(), hi));
  }
  if (!best_x && !hit_cap) test(hi);

  report.iterations = engine.iterations();
  report.inner_accuracy = engine.delta();
  report.learning_rate = engine.eta();
  report.iterations_per_test_cap = engine.cap(hi);
  report.width = {engine.width(hi), engine.width_max(), engine.width_mean()};
  report.lower_bound = engine.lower_bound();

  if (best_x) {
    result.raw_violation = best_raw_violation;
    result.primal = make_primal(lp, *best_x);
    result.x = std::move(*best_x);
  }

  if (!engine.best_dual().empty()) {
    result.dual = make_dual(lp, engine.best_dual());
    result.dual.objective = engine.best_dual_objective();
  } else {
    result.dual = make_dual(lp, std::vector<double>(lp.num_constraints, 0.0));
  }

  if (hit_cap) {
    result.status = SolveStatus::kIterationLimit;
  } else if (!best_x) {
    result.status = SolveStatus::kNoFeasibleWithinBounds;
  } else {
    result.status = SolveStatus::kOptimal;
    report.duality_gap_estimate = result.primal.objective - result.dual.objective;
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace l1svm
