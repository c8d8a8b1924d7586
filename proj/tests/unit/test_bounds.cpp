#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "l1svm/bounds.hpp"
#include "l1svm/experiments.hpp"

namespace l1svm {
namespace {

namespace b = bounds;
constexpr double kPi = 3.14159265358979323846;

// int_{-inf}^{x} t^k N_0(t) dt by adaptive Gauss-Kronrod. The density is
// below 1e-300 left of -38, so that is where the integral starts.
double quad_moment(int k, double x) {
  auto f = [k](double t) { return std::pow(t, k) * std::exp(-0.5 * t * t) / std::sqrt(2 * kPi); };
  if (x <= -38.0) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -38.0, x, 20, 1e-14,
                                                                       &err);
}

TEST(GaussMoments, AtZero) {
  const auto g = b::gauss_moments(0.0);
  EXPECT_DOUBLE_EQ(g.g0, 0.5);
  EXPECT_NEAR(g.g1, -0.3989422804014327, 1e-15);
  EXPECT_DOUBLE_EQ(g.g2, 0.5);
}

TEST(GaussMoments, VanishInLeftTail) {
  const auto g = b::gauss_moments(-std::numeric_limits<double>::infinity());
  EXPECT_EQ(g.g0, 0.0);
  EXPECT_EQ(g.g1, 0.0);
  EXPECT_EQ(g.g2, 0.0);
  const auto far = b::gauss_moments(-40.0);
  EXPECT_LT(std::abs(far.g0) + std::abs(far.g1) + std::abs(far.g2), 1e-300);
  EXPECT_THROW(b::gauss_moments(std::nan("")), Error);
}

TEST(GaussMoments, MatchQuadratureOnGrid) {
  for (int s = 0; s < 100; ++s) {
    const double x = -8.0 + 16.0 * s / 99.0;
    const auto g = b::gauss_moments(x);
    EXPECT_NEAR(g.g0, quad_moment(0, x), 1e-8) << x;
    EXPECT_NEAR(g.g1, quad_moment(1, x), 1e-8) << x;
    EXPECT_NEAR(g.g2, quad_moment(2, x), 1e-8) << x;
  }
  const auto one = b::gauss_moments(1.0);
  EXPECT_NEAR(one.g0, quad_moment(0, 1.0), 1e-8);
}

TEST(RiskBound, KnownValues) {
  EXPECT_NEAR(b::risk_bound(1.0 + 1e-9), 1.0 / std::sqrt(2 * kPi), 1e-12);
  EXPECT_NEAR(b::risk_bound(3.0), std::exp(-2.0) / std::sqrt(2 * kPi), 1e-15);
  EXPECT_NEAR(b::risk_bound(3.0), 0.05399, 1e-5);
  const double mu = 1.0 + std::sqrt(2.0 * std::log(100.0));
  EXPECT_NEAR(b::risk_bound(mu), 1.0 / (std::sqrt(2 * kPi) * 100.0), 1e-15);
  EXPECT_THROW(b::risk_bound(1.0), Error);
}

TEST(RiskBound, DominatesExpectedHingeLoss) {
  // E[max(0, 1 - v)] for v ~ N(mu, 1), by quadrature of (1 - v) N_mu(v).
  for (double mu : {1.5, 2.0, 3.0, 5.0}) {
    auto f = [mu](double v) {
      return (1.0 - v) * std::exp(-0.5 * (v - mu) * (v - mu)) / std::sqrt(2 * kPi);
    };
    const double loss =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, mu - 40.0, 1.0, 20, 1e-14);
    EXPECT_LE(loss, b::risk_bound(mu));
  }
}

TEST(VarianceBound, BoundaryAndKnownValue) {
  EXPECT_DOUBLE_EQ(b::variance_bound(1.0), 1.0);
  EXPECT_NEAR(b::variance_bound(3.0), 5.0 * (1.0 + boost::math::erf(-std::sqrt(2.0))), 1e-14);
  EXPECT_NEAR(b::variance_bound(3.0), 0.2275, 1e-4);
  EXPECT_THROW(b::variance_bound(0.5), Error);
}

TEST(VarianceBound, DecreasesOnGrid) {
  double prev = b::variance_bound(2.0);
  for (int s = 1; s <= 160; ++s) {
    const double v = b::variance_bound(2.0 + 0.05 * s);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 1e-16);
}

// Second transcription of the Bernstein bound, kept apart from the library.
double bernstein_reference(double mu, double delta_trunc, double m, double delta, bool s_form) {
  const double t = 1.0 - mu;
  const double risk = std::exp(-t * t / 2.0) / std::sqrt(2.0 * kPi);
  double var = (t * t + 1.0) * (1.0 + boost::math::erf(t / std::sqrt(2.0)));
  if (s_form) var = std::sqrt(var);
  const double l = std::log(2.0 / delta);
  return risk + 4.0 * var * std::sqrt(l / m) + 4.0 * (delta_trunc + 1.0) * l / m;
}

TEST(BernsteinBound, MatchesReference) {
  const double p = std::exp(1.0);
  const double mu = 1.0 + std::sqrt(2.0 * std::log(p));
  const double delta = 2.0 * std::log(p);
  EXPECT_NEAR(b::bernstein_bound(mu, delta, 100, 0.1),
              bernstein_reference(mu, delta, 100.0, 0.1, false), 1e-13);
  EXPECT_NEAR(b::bernstein_bound(mu, delta, 100, 0.1, b::BernsteinMiddleTerm::kStdDev),
              bernstein_reference(mu, delta, 100.0, 0.1, true), 1e-13);
  for (double c : {1.2, 2.0, 4.0}) {
    for (std::size_t m : {10u, 1000u}) {
      EXPECT_NEAR(b::bernstein_bound(c, 3.0, m, 0.05), bernstein_reference(c, 3.0, m, 0.05, false),
                  1e-13);
    }
  }
}

TEST(BernsteinBound, ConvergesToRiskBound) {
  EXPECT_NEAR(b::bernstein_bound(2.5, 6.0, 1'000'000'000'000ULL, 0.1), b::risk_bound(2.5), 1e-5);
  EXPECT_THROW(b::bernstein_bound(2.5, 6.0, 10, 1.5), Error);
}

TEST(LogFamilyRiskBound, DirectEvaluation) {
  const double expect =
      1.0 / (std::sqrt(2 * kPi) * 100.0) + 4.0 * (2.0 * std::log(100.0) + 1.0) * std::log(20.0) / 1000.0;
  EXPECT_NEAR(b::log_family_risk_bound(100.0, 1000, 0.1), expect, 1e-14);
  // On the log-p family the dropped Bernstein middle term is small next to
  // the retained terms.
  const double p = 100.0;
  const double mu = 1.0 + std::sqrt(2.0 * std::log(p));
  const double full = b::bernstein_bound(mu, 2.0 * std::log(p), 1000, 0.1);
  const double middle = full - b::risk_bound(mu) - 4.0 * (2.0 * std::log(p) + 1.0) * std::log(20.0) / 1000.0;
  EXPECT_LT(middle, 0.2 * b::log_family_risk_bound(p, 1000, 0.1));
}

TEST(LogFamilyRiskBound, LargePDominatedBySampleTerm) {
  const double p = 1e12;
  const double sample_term = 4.0 * (2.0 * std::log(p) + 1.0) * std::log(20.0) / 50.0;
  EXPECT_NEAR(b::log_family_risk_bound(p, 50, 0.1) / sample_term, 1.0, 1e-10);
}

TEST(HardMarginNormBound, Arithmetic) {
  EXPECT_DOUBLE_EQ(b::hard_margin_norm_bound(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(b::hard_margin_norm_bound(4.0, 0.5), 4.0);
  EXPECT_THROW(b::hard_margin_norm_bound(4.0, 0.0), Error);
}

TEST(SoftMarginNormBounds, ReferenceAndZeroLambda) {
  const double p = 256.0, lambda = 0.3, delta = 0.1;
  const std::size_t m = 128;
  const double s = 1.0 + 2.0 * std::log(p);
  const double l = std::log(2.0 / delta);
  const auto nb = b::soft_margin_norm_bounds(p, m, lambda, delta);
  EXPECT_NEAR(nb.R, m / (std::sqrt(2 * kPi) * p) + 4.0 * s * l + lambda * std::sqrt(s), 1e-12);
  EXPECT_NEAR(nb.r, 1.0 / (std::sqrt(2 * kPi) * p) + 4.0 * s * l / m + lambda * std::sqrt(s),
              1e-12);
  const auto z = b::soft_margin_norm_bounds(p, m, 0.0, delta);
  EXPECT_NEAR(nb.R - z.R, lambda * std::sqrt(s), 1e-12);
  EXPECT_NEAR(nb.r - z.r, lambda * std::sqrt(s), 1e-12);
}

TEST(SoftMarginNormBounds, PrimalGrowsLikeLogP) {
  std::vector<double> logp, R, r, ratio;
  for (double p = 100.0; p <= 1e6; p *= 10.0) {
    const auto nb = b::soft_margin_norm_bounds(p, static_cast<std::size_t>(p / 2), b::default_lambda(p), 0.1);
    logp.push_back(std::log(p));
    R.push_back(nb.R);
    ratio.push_back(nb.r / std::log(p));
  }
  EXPECT_NEAR(log_log_slope(logp, R), 1.0, 0.1);
  for (std::size_t k = 1; k < ratio.size(); ++k) EXPECT_LT(ratio[k], ratio[k - 1]);
}

TEST(DefaultLambda, MakesPenaltyTermConstant) {
  for (double p : {16.0, 256.0, 4096.0}) {
    EXPECT_NEAR(b::default_lambda(p) * std::sqrt(1.0 + 2.0 * std::log(p)), 1.0, 1e-14);
  }
}

TEST(ErfTailRatio, DecaysMonotonically) {
  double prev = b::erf_tail_ratio(16.0);
  for (double p = 32.0; p <= 1e8; p *= 2.0) {
    const double v = b::erf_tail_ratio(p);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_NEAR(b::erf_tail_ratio(100.0), (1.0 + boost::math::erf(-std::sqrt(2.0 * std::log(100.0)))) * 1e4,
              1e-9);
}

}  // namespace
}  // namespace l1svm
