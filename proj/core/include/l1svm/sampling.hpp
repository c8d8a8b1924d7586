#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "l1svm/types.hpp"

namespace l1svm {

/// k i.i.d. sample indices drawn with probability alpha_i / ||alpha||_1.
/// Throws Error when alpha has no positive mass.
std::vector<std::size_t> sample_dual(const DualSolution& dual, std::size_t k, std::uint64_t seed);

enum class VariableBlock { kSlack, kBetaPlus, kBetaMinus };

/// A draw from the stacked (xi, beta+, beta-) vector. `index` is the sample
/// index for slacks and the feature index for the beta blocks.
struct PrimalDraw {
  VariableBlock block;
  std::size_t index;

  bool operator==(const PrimalDraw&) const = default;
};

/// k i.i.d. draws proportional to |x_k| over the stacked primal vector.
/// Throws Error when every variable is zero.
std::vector<PrimalDraw> sample_primal_support(const PrimalSolution& primal, std::size_t k,
                                              std::uint64_t seed);

}  // namespace l1svm
