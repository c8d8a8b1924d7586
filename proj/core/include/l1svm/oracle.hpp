#pragma once

#include <optional>
#include <span>

#include "l1svm/types.hpp"

namespace l1svm {

/// Classical stand-in for the entrywise oracles O_b, O_C, O_A and the qRAM
/// reads of x_i^j. Every read is charged to the ledger passed in; the
/// OracleSet itself holds no counters.
///
/// Entries are computed from the bound dataset on every call, so rebinding to
/// another dataset takes effect immediately. Indices are zero-based.
class OracleSet {
 public:
  OracleSet(const Dataset& data, const SparseSvmConfig& cfg);

  /// Round every returned value to `bits` fractional binary digits.
  /// std::nullopt restores full double precision.
  void set_quantization(std::optional<int> bits);
  std::optional<int> quantization() const { return quant_bits_; }

  void rebind(const Dataset& data);

  std::size_t m() const { return data_->m(); }
  std::size_t p() const { return data_->p(); }
  std::size_t n() const;
  bool hard_margin() const { return cfg_.hard_margin; }

  double query_b(std::size_t i, QueryLedger& ledger) const;
  double query_c(std::size_t k, QueryLedger& ledger) const;
  double query_a(std::size_t i, std::size_t k, QueryLedger& ledger) const;
  double qram_read(std::size_t i, std::size_t j, QueryLedger& ledger) const;

  /// out[k] = sum_i weights[i] * A_i[k,k] for every k. Charged as m*n reads
  /// of O_A, each feature-block read also costing one qRAM read.
  void weighted_column_sums(std::span<const double> weights, std::span<double> out,
                            QueryLedger& ledger) const;

  /// out[i] = A_i[k,k] for every i. Charged as m reads of O_A.
  void column(std::size_t k, std::span<double> out, QueryLedger& ledger) const;

 private:
  double quantize(double v) const;
  std::size_t slack_count() const { return cfg_.hard_margin ? 0 : m(); }
  // Unquantized, uncounted entry.
  double entry(std::size_t i, std::size_t k) const;

  const Dataset* data_;
  SparseSvmConfig cfg_;
  std::optional<int> quant_bits_;
};

}  // namespace l1svm
