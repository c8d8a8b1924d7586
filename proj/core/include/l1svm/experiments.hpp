#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l1svm/bounds.hpp"
#include "l1svm/io.hpp"
#include "l1svm/oracle.hpp"
#include "l1svm/types.hpp"

namespace l1svm {

enum class SolverKind { kExact, kMwu };

/// A solve inside a sweep or bound check ended without an optimum.
class SolverError : public Error {
 public:
  using Error::Error;
};

struct TrainOptions {
  SolverKind solver = SolverKind::kExact;
  SparseSvmConfig svm;
  double exact_tol = 1e-9;
  double epsilon = 0.05;
  /// Norm bounds for the MWU solver. For the soft-margin LP they default to
  /// max(m, 1/lambda) and 1, which hold for every instance; the hard-margin
  /// LP has no such default.
  std::optional<double> R_bound;
  std::optional<double> r_bound;
  std::size_t max_iters = 2'000'000'000;
  std::uint64_t seed = 0;
  /// Number of support-vector identities to draw from the normalized dual.
  std::size_t dual_samples = 0;
  double support_tau = 1e-6;
  std::optional<int> quantize_bits;
};

/// Builds the LP by reading every entry through the oracle once, which is
/// what the exact solver's ledger is charged for.
LpInstance materialize_lp(const OracleSet& oracle, QueryLedger& ledger);

/// Trains on a validated dataset and summarizes the run. Solver outcomes
/// other than success are reported through TrainReport::status.
TrainReport train(const Dataset& d, const TrainOptions& opts);

/// Log-p scaling member of the truncated subgaussian family:
/// p' = round(1 + 2 ln p), mu = 1 + sqrt(2 ln p), c = mu / sqrt(p'),
/// Delta = 2 ln p.
SubgaussianProblemSpec log_scaling_spec(std::size_t p);

/// Upper tail P[X >= k] for X ~ Binomial(n, q).
double binomial_upper_tail(std::size_t n, std::size_t k, double q);

/// One (instance, bound) verdict.
struct BoundRow {
  std::string family;
  std::string instance;  // trial index, or "summary" for a per-cell aggregate
  std::size_t p = 0;
  std::size_t p_prime = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::string bound;
  double measured = 0.0;
  double bound_value = 0.0;
  bool mandatory = false;
  bool pass = false;

  bool operator==(const BoundRow&) const = default;
};

/// Margin grid: every instance's exact hard-margin ||beta||_1 against
/// sqrt(p')/nu, each row mandatory.
struct MarginGrid {
  std::vector<std::size_t> p;
  std::vector<std::size_t> p_prime;
  std::vector<double> nu;
  std::size_t trials = 1;
  /// m defaults to 4 p' / nu^2, capped at m_cap.
  std::optional<std::size_t> m;
  std::size_t m_cap = 500;
  std::uint64_t seed = 0;
  double slack = 1e-6;
};

/// Subgaussian grid: empirical risk of beta* against the Bernstein bound and
/// exact-solver norms against the soft-margin norm bounds. Per-instance rows
/// are informational; the per-cell summary rows are mandatory.
struct SubgaussianGrid {
  std::vector<std::size_t> p;
  /// Unset fields follow log_scaling_spec(p).
  std::optional<std::size_t> p_prime;
  std::optional<double> c;
  std::optional<double> delta_trunc;
  std::optional<std::size_t> m;
  double m_ratio = 0.5;  // m = ratio * p when m is unset
  std::optional<double> lambda;  // defaults to bounds::default_lambda(p)
  std::size_t trials = 1;
  double confidence_delta = 0.1;
  double significance = 0.001;
  std::uint64_t seed = 0;
  bool risk_check = true;
  bool norm_check = true;
  bounds::BernsteinMiddleTerm middle = bounds::BernsteinMiddleTerm::kVariance;
};

std::vector<BoundRow> verify_margin(const MarginGrid& grid, std::size_t jobs = 1);
std::vector<BoundRow> verify_subgaussian(const SubgaussianGrid& grid, std::size_t jobs = 1);

bool all_mandatory_pass(const std::vector<BoundRow>& rows);

std::string bound_rows_csv(const std::vector<BoundRow>& rows);
std::vector<BoundRow> bound_rows_from_csv(const std::string& text);

/// Scaling sweep over p (and m) and epsilon.
struct SweepGrid {
  std::string family = "subgaussian";  // subgaussian (log-p family) or paired
  std::vector<std::size_t> p;
  /// Explicit m values; when empty, m = m_ratio * p (paired: m = 2 copies).
  std::vector<std::size_t> m;
  double m_ratio = 0.5;
  std::vector<double> epsilon;
  SolverKind solver = SolverKind::kExact;
  std::optional<double> lambda;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Record wall-clock times; off by default so the CSV is reproducible.
  bool timing = false;
};

struct SweepRow {
  std::size_t p = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  double R_measured = 0.0;
  double r_measured = 0.0;
  std::size_t iterations = 0;
  std::uint64_t a_queries = 0;
  std::uint64_t data_queries = 0;
  double wall_ms = 0.0;

  bool operator==(const SweepRow&) const = default;
};

/// Runs every cell of the grid. R and r always come from the exact solver;
/// with the MWU solver the iteration and query columns come from an MWU run
/// given those norms as its bounds. Cells run on up to `jobs` threads and
/// cell k uses seed + k, so the output does not depend on `jobs`.
std::vector<SweepRow> run_sweep(const SweepGrid& grid, std::size_t jobs = 1);

std::string sweep_rows_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_rows_from_csv(const std::string& text);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Moments of the hinge loss L = max(0, 1 - v) for v ~ N(mu, 1) truncated
/// below at -Delta, estimated from `draws` samples.
struct LossMoments {
  double mean = 0.0;
  double variance = 0.0;
  double min = 0.0;
  double max = 0.0;
};

LossMoments truncated_loss_moments(double mu, double delta_trunc, std::size_t draws,
                                   std::uint64_t seed);

/// Default worker count: the L1SVM_JOBS environment variable, else 1.
std::size_t default_jobs();

}  // namespace l1svm
