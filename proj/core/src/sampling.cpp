#include "l1svm/sampling.hpp"

#include <cmath>
#include <random>
#include <string>

namespace l1svm {
namespace {

std::vector<std::size_t> draw(const std::vector<double>& mass, std::size_t k, std::uint64_t seed,
                              const char* what) {
  double total = 0.0;
  for (double v : mass) {
    if (!std::isfinite(v)) throw Error(std::string(what) + ": non-finite entry");
    total += std::abs(v);
  }
  if (!(total > 0.0)) throw Error(std::string(what) + ": vector has no mass to sample from");
  std::vector<double> weights(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i) weights[i] = std::abs(mass[i]);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<std::size_t> out(k);
  for (auto& v : out) v = pick(rng);
  return out;
}

}  // namespace

std::vector<std::size_t> sample_dual(const DualSolution& dual, std::size_t k, std::uint64_t seed) {
  for (double a : dual.alpha) {
    if (a < 0.0) throw Error("sample_dual: negative multiplier");
  }
  return draw(dual.alpha, k, seed, "sample_dual");
}

std::vector<PrimalDraw> sample_primal_support(const PrimalSolution& primal, std::size_t k,
                                              std::uint64_t seed) {
  const std::vector<double> stacked = primal.variables();
  const std::size_t s = primal.xi.size();
  const std::size_t p = primal.beta_plus.size();
  std::vector<PrimalDraw> out;
  out.reserve(k);
  for (std::size_t idx : draw(stacked, k, seed, "sample_primal_support")) {
    if (idx < s) {
      out.push_back({VariableBlock::kSlack, idx});
    } else if (idx < s + p) {
      out.push_back({VariableBlock::kBetaPlus, idx - s});
    } else {
      out.push_back({VariableBlock::kBetaMinus, idx - s - p});
    }
  }
  return out;
}

}  // namespace l1svm
