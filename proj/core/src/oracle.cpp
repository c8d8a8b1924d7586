#include "l1svm/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace l1svm {
namespace {

void check_index(std::size_t idx, std::size_t limit, const char* what) {
  if (idx >= limit) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(idx) +
                            " outside [0, " + std::to_string(limit) + ")");
  }
}

}  // namespace

OracleSet::OracleSet(const Dataset& data, const SparseSvmConfig& cfg)
    : data_(&data), cfg_(cfg) {
  validate_dataset(data);
  validate_config(cfg);
}

void OracleSet::set_quantization(std::optional<int> bits) {
  if (bits && (*bits < 0 || *bits > 52)) throw Error("quantization bits must be in [0, 52]");
  quant_bits_ = bits;
}

void OracleSet::rebind(const Dataset& data) {
  validate_dataset(data);
  data_ = &data;
}

std::size_t OracleSet::n() const { return slack_count() + 2 * p(); }

double OracleSet::quantize(double v) const {
  if (!quant_bits_) return v;
  const double scale = std::ldexp(1.0, *quant_bits_);
  return std::round(v * scale) / scale;
}

double OracleSet::entry(std::size_t i, std::size_t k) const {
  const std::size_t s = slack_count();
  if (k < s) return k == i ? -1.0 : 0.0;
  const std::size_t j = k - s;
  const double yx = data_->y(i) * data_->x(i, j < p() ? j : j - p());
  return j < p() ? -yx : yx;
}

double OracleSet::query_b(std::size_t i, QueryLedger& ledger) const {
  check_index(i, m(), "b");
  ++ledger.b_queries;
  return quantize(-1.0);
}

double OracleSet::query_c(std::size_t k, QueryLedger& ledger) const {
  check_index(k, n(), "C");
  ++ledger.c_queries;
  if (k < slack_count()) return quantize(1.0 / static_cast<double>(m()));
  return quantize(cfg_.hard_margin ? 1.0 : cfg_.lambda);
}

double OracleSet::query_a(std::size_t i, std::size_t k, QueryLedger& ledger) const {
  check_index(i, m(), "A row");
  check_index(k, n(), "A diagonal");
  ++ledger.a_queries;
  if (k >= slack_count()) ++ledger.data_queries;
  return quantize(entry(i, k));
}

double OracleSet::qram_read(std::size_t i, std::size_t j, QueryLedger& ledger) const {
  check_index(i, m(), "sample");
  check_index(j, p(), "feature");
  ++ledger.data_queries;
  return quantize(data_->x(i, j));
}

void OracleSet::weighted_column_sums(std::span<const double> weights, std::span<double> out,
                                     QueryLedger& ledger) const {
  const std::size_t mm = m();
  const std::size_t pp = p();
  const std::size_t s = slack_count();
  if (weights.size() != mm || out.size() != n()) {
    throw Error("weighted_column_sums: span sizes do not match the oracle");
  }
  for (std::size_t k = 0; k < s; ++k) out[k] = -quantize(1.0) * weights[k];
  double* plus = out.data() + s;
  double* minus = plus + pp;
  for (std::size_t j = 0; j < pp; ++j) plus[j] = 0.0;
  for (std::size_t i = 0; i < mm; ++i) {
    const double wy = weights[i] * data_->y(i);
    if (wy == 0.0) continue;
    const auto row = data_->row(i);
    if (quant_bits_) {
      for (std::size_t j = 0; j < pp; ++j) plus[j] += wy * quantize(row[j]);
    } else {
      for (std::size_t j = 0; j < pp; ++j) plus[j] += wy * row[j];
    }
  }
  for (std::size_t j = 0; j < pp; ++j) {
    minus[j] = plus[j];
    plus[j] = -plus[j];
  }
  ledger.a_queries += mm * n();
  ledger.data_queries += mm * 2 * pp;
}

void OracleSet::column(std::size_t k, std::span<double> out, QueryLedger& ledger) const {
  check_index(k, n(), "A diagonal");
  if (out.size() != m()) throw Error("column: output span has wrong size");
  for (std::size_t i = 0; i < m(); ++i) out[i] = quantize(entry(i, k));
  ledger.a_queries += m();
  if (k >= slack_count()) ledger.data_queries += m();
}

}  // namespace l1svm
