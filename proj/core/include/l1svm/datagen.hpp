#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "l1svm/types.hpp"

namespace l1svm {

enum class LabelBalance {
  kStratified,  // exactly ceil(m/2) positive labels
  kBernoulli,   // each label an independent fair coin
};

/// nu-margin linearly separable family with a planted sparse direction.
struct MarginProblemSpec {
  std::size_t p = 0;
  std::size_t p_prime = 0;
  double nu = 0.0;
  std::vector<double> beta_star;
  /// Half-width of the uniform box used for support coordinates.
  double box = 0.0;
  LabelBalance balance = LabelBalance::kStratified;
};

/// beta* has value 1/sqrt(p') on p' coordinates: the first p' by default, or a
/// uniformly random subset when placement_seed is set. box defaults to 10/nu.
MarginProblemSpec make_margin_spec(std::size_t p, std::size_t p_prime, double nu,
                                   std::optional<std::uint64_t> placement_seed = {},
                                   std::optional<double> box = {});

void validate(const MarginProblemSpec& spec);

/// (Delta, mu)-truncated subgaussian family. Support features have class
/// means +-c (sign given by beta*), everything has unit variance, and the
/// projected margin v = y beta*.x is N(mu, 1) truncated below at -Delta with
/// mu = c sqrt(p').
struct SubgaussianProblemSpec {
  std::size_t p = 0;
  std::size_t p_prime = 0;
  double c = 0.0;
  double mu = 0.0;
  double delta_trunc = 0.0;
  std::vector<double> beta_star;
  LabelBalance balance = LabelBalance::kStratified;
};

/// swap_signs alternates the sign of the planted coordinates (and with it the
/// sign of the class means on those features).
SubgaussianProblemSpec make_subgaussian_spec(std::size_t p, std::size_t p_prime, double c,
                                             double delta_trunc, bool swap_signs = false,
                                             std::optional<std::uint64_t> placement_seed = {});

void validate(const SubgaussianProblemSpec& spec);

/// Rejection sampling gives up after this many draws per requested sample.
inline constexpr std::size_t kRejectionAttemptsPerSample = 1000;

Dataset gen_margin(const MarginProblemSpec& spec, std::size_t m, std::uint64_t seed);
Dataset gen_subgaussian(const SubgaussianProblemSpec& spec, std::size_t m, std::uint64_t seed);

/// The four corners of [-1,1]^2; +1 on the diagonal, -1 off it.
Dataset gen_xor();

/// `copies` pairs (x, +1), (x, -1).
Dataset gen_paired(const std::vector<double>& x, std::size_t copies);

/// p' = round(1 + 2 ln p), the planted support size used by the
/// log-p scaling family.
std::size_t log_scaling_support(std::size_t p);

}  // namespace l1svm
