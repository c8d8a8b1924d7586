#include "l1svm/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace l1svm {
namespace {

std::vector<std::size_t> support_positions(std::size_t p, std::size_t p_prime,
                                           std::optional<std::uint64_t> placement_seed) {
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  if (placement_seed) {
    std::mt19937_64 rng(*placement_seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(p_prime);
    std::sort(idx.begin(), idx.end());
  } else {
    idx.resize(p_prime);
  }
  return idx;
}

std::vector<int> draw_labels(LabelBalance balance, std::size_t m, std::mt19937_64& rng) {
  std::vector<int> y(m);
  if (balance == LabelBalance::kStratified) {
    for (std::size_t i = 0; i < m; ++i) y[i] = i % 2 == 0 ? 1 : -1;
  } else {
    std::bernoulli_distribution coin(0.5);
    for (auto& v : y) v = coin(rng) ? 1 : -1;
  }
  return y;
}

double dot(const std::vector<double>& a, const double* b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

void check_unit_sparse(const std::vector<double>& beta, std::size_t p, std::size_t p_prime) {
  if (beta.size() != p) throw Error("beta* length must equal p");
  double sq = 0.0;
  std::size_t nnz = 0;
  for (double v : beta) {
    sq += v * v;
    if (v != 0.0) ++nnz;
  }
  if (std::abs(std::sqrt(sq) - 1.0) > 1e-12) throw Error("beta* must have unit L2 norm");
  if (nnz != p_prime) throw Error("beta* must have exactly p' nonzero entries");
}

}  // namespace

MarginProblemSpec make_margin_spec(std::size_t p, std::size_t p_prime, double nu,
                                   std::optional<std::uint64_t> placement_seed,
                                   std::optional<double> box) {
  if (p_prime == 0 || p_prime > p) throw Error("margin family needs 1 <= p' <= p");
  if (!(nu > 0.0)) throw Error("margin nu must be positive");
  MarginProblemSpec spec;
  spec.p = p;
  spec.p_prime = p_prime;
  spec.nu = nu;
  spec.box = box.value_or(10.0 / nu);
  spec.beta_star.assign(p, 0.0);
  const double v = 1.0 / std::sqrt(static_cast<double>(p_prime));
  for (std::size_t j : support_positions(p, p_prime, placement_seed)) spec.beta_star[j] = v;
  validate(spec);
  return spec;
}

void validate(const MarginProblemSpec& spec) {
  if (!(spec.nu > 0.0)) throw Error("margin nu must be positive");
  if (!(spec.box > 0.0)) throw Error("margin box must be positive");
  check_unit_sparse(spec.beta_star, spec.p, spec.p_prime);
}

SubgaussianProblemSpec make_subgaussian_spec(std::size_t p, std::size_t p_prime, double c,
                                             double delta_trunc, bool swap_signs,
                                             std::optional<std::uint64_t> placement_seed) {
  if (p_prime == 0 || p_prime > p) throw Error("subgaussian family needs 1 <= p' <= p");
  SubgaussianProblemSpec spec;
  spec.p = p;
  spec.p_prime = p_prime;
  spec.c = c;
  spec.mu = c * std::sqrt(static_cast<double>(p_prime));
  spec.delta_trunc = delta_trunc;
  spec.beta_star.assign(p, 0.0);
  const double v = 1.0 / std::sqrt(static_cast<double>(p_prime));
  std::size_t count = 0;
  for (std::size_t j : support_positions(p, p_prime, placement_seed)) {
    spec.beta_star[j] = (swap_signs && count % 2 == 1) ? -v : v;
    ++count;
  }
  validate(spec);
  return spec;
}

void validate(const SubgaussianProblemSpec& spec) {
  if (!(spec.c > 1.0)) throw Error("subgaussian c must exceed 1");
  if (!(spec.delta_trunc > 0.0)) throw Error("truncation radius must be positive");
  if (!(spec.mu > 1.0)) throw Error("projected mean mu must exceed 1");
  const double floor = spec.c * std::sqrt(static_cast<double>(spec.p_prime));
  if (spec.mu < floor * (1.0 - 1e-12)) throw Error("mu must be at least c sqrt(p')");
  check_unit_sparse(spec.beta_star, spec.p, spec.p_prime);
}

Dataset gen_margin(const MarginProblemSpec& spec, std::size_t m, std::uint64_t seed) {
  validate(spec);
  if (m == 0) throw Error("gen_margin: m must be positive");
  std::mt19937_64 rng(seed);
  const std::vector<int> labels = draw_labels(spec.balance, m, rng);
  std::uniform_real_distribution<double> box(-spec.box, spec.box);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> features(m * spec.p);
  std::size_t attempts = 0;
  const std::size_t cap = kRejectionAttemptsPerSample * m;
  for (std::size_t i = 0; i < m; ++i) {
    double* row = features.data() + i * spec.p;
    while (true) {
      if (++attempts > cap) throw Error("gen_margin: rejection cap exceeded (box too small for nu?)");
      for (std::size_t j = 0; j < spec.p; ++j) {
        row[j] = spec.beta_star[j] != 0.0 ? box(rng) : gauss(rng);
      }
      const double proj = dot(spec.beta_star, row);
      if (std::abs(proj) < spec.nu) continue;
      // The sampling law is symmetric, so reflecting x gives the requested label.
      if ((proj > 0.0 ? 1 : -1) != labels[i]) {
        for (std::size_t j = 0; j < spec.p; ++j) row[j] = -row[j];
      }
      break;
    }
  }
  return Dataset(labels, std::move(features), spec.p);
}

Dataset gen_subgaussian(const SubgaussianProblemSpec& spec, std::size_t m, std::uint64_t seed) {
  validate(spec);
  if (m == 0) throw Error("gen_subgaussian: m must be positive");
  std::mt19937_64 rng(seed);
  const std::vector<int> labels = draw_labels(spec.balance, m, rng);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> mean_sign(spec.p, 0.0);
  for (std::size_t j = 0; j < spec.p; ++j) {
    if (spec.beta_star[j] > 0.0) mean_sign[j] = 1.0;
    if (spec.beta_star[j] < 0.0) mean_sign[j] = -1.0;
  }

  std::vector<double> features(m * spec.p);
  std::size_t attempts = 0;
  const std::size_t cap = kRejectionAttemptsPerSample * m;
  for (std::size_t i = 0; i < m; ++i) {
    double* row = features.data() + i * spec.p;
    const double y = labels[i];
    while (true) {
      if (++attempts > cap) throw Error("gen_subgaussian: rejection cap exceeded");
      // Flipping a planted coordinate reflects it whole, so the projected
      // margin v does not depend on the signs of beta*.
      for (std::size_t j = 0; j < spec.p; ++j) {
        const double z = gauss(rng);
        row[j] = mean_sign[j] != 0.0 ? mean_sign[j] * (y * spec.c + z) : z;
      }
      const double v = y * dot(spec.beta_star, row);
      if (v >= -spec.delta_trunc) break;
    }
  }
  return Dataset(labels, std::move(features), spec.p);
}

Dataset gen_xor() {
  return Dataset({1, 1, -1, -1}, {1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0, 1.0}, 2);
}

Dataset gen_paired(const std::vector<double>& x, std::size_t copies) {
  if (copies == 0) throw Error("gen_paired: copies must be at least 1");
  if (x.empty()) throw Error("gen_paired: feature vector is empty");
  std::vector<int> labels;
  std::vector<double> features;
  labels.reserve(2 * copies);
  features.reserve(2 * copies * x.size());
  for (std::size_t k = 0; k < copies; ++k) {
    for (int y : {1, -1}) {
      labels.push_back(y);
      features.insert(features.end(), x.begin(), x.end());
    }
  }
  return Dataset(std::move(labels), std::move(features), x.size());
}

std::size_t log_scaling_support(std::size_t p) {
  if (p < 2) throw Error("log_scaling_support: p must be at least 2");
  return static_cast<std::size_t>(std::lround(1.0 + 2.0 * std::log(static_cast<double>(p))));
}

}  // namespace l1svm
