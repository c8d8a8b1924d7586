#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1svm {

/// Base for every error the library reports through exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DatasetError : public Error {
 public:
  enum class Kind { kDimensionMismatch, kNonBinaryLabel, kNonFiniteFeature, kEmpty };

  DatasetError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// m labeled samples in p dimensions. Features are stored row-major.
///
/// Construction does not validate; call validate_dataset() before handing a
/// dataset to anything that assumes the invariants.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<int> labels, std::vector<double> features, std::size_t p);

  /// Builds from one vector per sample. Ragged rows are preserved as a
  /// dimension mismatch for validate_dataset() to report.
  static Dataset from_rows(std::vector<int> labels,
                           const std::vector<std::vector<double>>& rows);

  std::size_t m() const { return labels_.size(); }
  std::size_t p() const { return p_; }

  int y(std::size_t i) const { return labels_[i]; }
  double x(std::size_t i, std::size_t j) const { return features_[i * p_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * p_, p_};
  }

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& features() const { return features_; }

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<int> labels_;
  std::vector<double> features_;
  std::size_t p_ = 0;
};

/// Throws DatasetError when a Dataset invariant is broken.
void validate_dataset(const Dataset& d);

struct SparseSvmConfig {
  double lambda = 0.1;
  bool hard_margin = false;
};

void validate_config(const SparseSvmConfig& cfg);

enum class LpKind { kSoftMargin, kHardMargin };

/// Diagonal-SDP view of the training LP: minimize c.x subject to
/// A_i.x <= b_i for every constraint i, x >= 0.
///
/// Variable layout is [xi (m), beta+ (p), beta- (p)] for the soft-margin
/// problem and [beta+ (p), beta- (p)] for the hard-margin one.
struct LpInstance {
  LpKind kind = LpKind::kSoftMargin;
  std::size_t n = 0;                // variables
  std::size_t num_constraints = 0;  // m
  std::size_t num_features = 0;     // p
  double lambda = 0.0;
  std::vector<double> c_diag;   // length n
  std::vector<double> a_diags;  // num_constraints x n, row-major
  std::vector<double> b;        // length num_constraints

  double a(std::size_t i, std::size_t k) const { return a_diags[i * n + k]; }
  std::span<const double> a_row(std::size_t i) const {
    return {a_diags.data() + i * n, n};
  }
  std::size_t slack_count() const {
    return kind == LpKind::kSoftMargin ? num_constraints : 0;
  }
  std::size_t beta_plus_offset() const { return slack_count(); }
  std::size_t beta_minus_offset() const { return slack_count() + num_features; }
};

/// Throws Error when the layout invariants (sizes, finite entries) fail.
void validate_lp(const LpInstance& lp);

struct PrimalSolution {
  std::vector<double> xi;  // empty for the hard-margin problem
  std::vector<double> beta_plus;
  std::vector<double> beta_minus;
  double objective = 0.0;
  double norm_R = 0.0;

  /// Stacked (xi, beta+, beta-) vector in LP variable order.
  std::vector<double> variables() const;
};

/// Splits an LP variable vector into its blocks and fills objective and norm.
PrimalSolution make_primal(const LpInstance& lp, std::span<const double> x);

/// Dual multipliers of the A_i.x <= b_i constraints, stored as nonnegative
/// values. With b = -1 the dual objective -b.alpha equals the L1 norm.
struct DualSolution {
  std::vector<double> alpha;
  double norm_r = 0.0;
  double objective = 0.0;
};

DualSolution make_dual(const LpInstance& lp, std::vector<double> alpha);

struct BetaVector {
  std::vector<double> beta;
  std::vector<std::size_t> support;
  double l1_norm = 0.0;
};

/// Relative cut used to decide which coefficients count as nonzero.
inline constexpr double kSparsityThreshold = 1e-8;

/// Counts of oracle invocations. Only grows during a solve.
struct QueryLedger {
  std::uint64_t b_queries = 0;
  std::uint64_t c_queries = 0;
  std::uint64_t a_queries = 0;
  std::uint64_t data_queries = 0;

  void reset() { *this = QueryLedger{}; }
  std::uint64_t total() const { return b_queries + c_queries + a_queries + data_queries; }
  bool operator==(const QueryLedger&) const = default;
};

}  // namespace l1svm
