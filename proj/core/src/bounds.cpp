#include "l1svm/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "l1svm/types.hpp"

namespace l1svm::bounds {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/sqrt(2 pi)

void require(bool ok, const char* what) {
  if (!ok) throw Error(what);
}

double log_two_over(double delta) { return std::log(2.0 / delta); }

}  // namespace

double gauss_density(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

GaussMoments gauss_moments(double x) {
  require(!std::isnan(x), "gauss_moments: x is NaN");
  if (x == -std::numeric_limits<double>::infinity()) return {0.0, 0.0, 0.0};
  // erfc keeps G0 accurate deep in the left tail where 1 + erf cancels.
  const double g0 = 0.5 * std::erfc(-x / std::numbers::sqrt2);
  const double g = gauss_density(x);
  return {g0, -g, g0 - x * g};
}

double risk_bound(double mu) {
  require(mu > 1.0, "risk_bound: mu must exceed 1");
  return gauss_density(1.0 - mu);
}

double variance_bound(double mu) {
  require(mu >= 1.0, "variance_bound: mu must be at least 1");
  const double t = 1.0 - mu;
  return (t * t + 1.0) * std::erfc(-t / std::numbers::sqrt2);
}

double bernstein_bound(double mu, double delta_trunc, std::size_t m, double confidence_delta,
                       BernsteinMiddleTerm middle) {
  require(mu > 1.0, "bernstein_bound: mu must exceed 1");
  require(delta_trunc > 0.0, "bernstein_bound: truncation radius must be positive");
  require(m >= 1, "bernstein_bound: m must be at least 1");
  require(confidence_delta > 0.0 && confidence_delta < 1.0,
          "bernstein_bound: confidence delta must lie in (0, 1)");
  const double md = static_cast<double>(m);
  const double lg = log_two_over(confidence_delta);
  double spread = variance_bound(mu);
  if (middle == BernsteinMiddleTerm::kStdDev) spread = std::sqrt(spread);
  return risk_bound(mu) + 4.0 * spread * std::sqrt(lg / md) +
         4.0 * (delta_trunc + 1.0) * lg / md;
}

double log_family_risk_bound(double p, std::size_t m, double confidence_delta) {
  require(p >= 2.0, "log_family_risk_bound: p must be at least 2");
  require(m >= 1, "log_family_risk_bound: m must be at least 1");
  require(confidence_delta > 0.0 && confidence_delta < 1.0,
          "log_family_risk_bound: confidence delta must lie in (0, 1)");
  return kInvSqrt2Pi / p +
         4.0 * (2.0 * std::log(p) + 1.0) * log_two_over(confidence_delta) /
             static_cast<double>(m);
}

double hard_margin_norm_bound(double p_prime, double nu) {
  require(p_prime >= 1.0, "hard_margin_norm_bound: p' must be at least 1");
  require(nu > 0.0, "hard_margin_norm_bound: nu must be positive");
  return std::sqrt(p_prime) / nu;
}

NormBounds soft_margin_norm_bounds(double p, std::size_t m, double lambda,
                                   double confidence_delta) {
  require(p >= 2.0, "soft_margin_norm_bounds: p must be at least 2");
  require(m >= 1, "soft_margin_norm_bounds: m must be at least 1");
  require(lambda >= 0.0, "soft_margin_norm_bounds: lambda must be nonnegative");
  require(confidence_delta > 0.0 && confidence_delta < 1.0,
          "soft_margin_norm_bounds: confidence delta must lie in (0, 1)");
  const double md = static_cast<double>(m);
  const double spread = 1.0 + 2.0 * std::log(p);
  const double lg = log_two_over(confidence_delta);
  const double penalty = lambda * std::sqrt(spread);
  return {kInvSqrt2Pi * md / p + 4.0 * spread * lg + penalty,
          kInvSqrt2Pi / p + 4.0 * spread * lg / md + penalty};
}

double default_lambda(double p) {
  require(p >= 1.0, "default_lambda: p must be at least 1");
  return 1.0 / std::sqrt(1.0 + 2.0 * std::log(p));
}

double erf_tail_ratio(double p) {
  require(p > 1.0, "erf_tail_ratio: p must exceed 1");
  return std::erfc(std::sqrt(2.0 * std::log(p))) * p * p;
}

}  // namespace l1svm::bounds
