#pragma once

#include <cstddef>

namespace l1svm::bounds {

/// Truncated Gaussian moments G_k(x) = int_{-inf}^x t^k N_0(t) dt.
struct GaussMoments {
  double g0;
  double g1;
  double g2;
};

/// Standard normal density N_0(x).
double gauss_density(double x);

/// Closed forms: G0 = (1 + erf(x/sqrt 2))/2, G1 = -N_0(x), G2 = G0 - x N_0(x).
GaussMoments gauss_moments(double x);

/// Upper bound on the expected hinge loss of beta* on a (Delta, mu)-truncated
/// subgaussian problem: N_mu(1). Requires mu > 1.
double risk_bound(double mu);

/// Upper bound on the variance of that loss,
/// [(1 - mu)^2 + 1][1 + erf((1 - mu)/sqrt 2)]. Requires mu >= 1; mu = 1 is the
/// boundary value 1.
double variance_bound(double mu);

/// How the middle Bernstein term uses the variance bound.
enum class BernsteinMiddleTerm {
  kVariance,  // 4 Var sqrt(log(2/delta)/m), as the bound is stated
  kStdDev,    // 4 sqrt(Var) sqrt(log(2/delta)/m), the textbook form
};

/// High-probability bound on the empirical hinge risk of beta* over m samples:
/// risk_bound + 4 V sqrt(log(2/delta)/m) + 4 (Delta + 1) log(2/delta) / m.
double bernstein_bound(double mu, double delta_trunc, std::size_t m, double confidence_delta,
                       BernsteinMiddleTerm middle = BernsteinMiddleTerm::kVariance);

/// 1/(sqrt(2 pi) p) + 4 (2 ln p + 1) ln(2/delta) / m.
double log_family_risk_bound(double p, std::size_t m, double confidence_delta);

/// sqrt(p') / nu: the largest L1 norm of the hard-margin optimum.
double hard_margin_norm_bound(double p_prime, double nu);

struct NormBounds {
  double R;
  double r;
};

/// Upper bounds on the primal and dual L1 norms of the soft-margin optimum
/// in the log-p scaling regime.
NormBounds soft_margin_norm_bounds(double p, std::size_t m, double lambda,
                                   double confidence_delta);

/// Default regularization for the log-p family: 1 / sqrt(1 + 2 ln p).
double default_lambda(double p);

/// [1 + erf(-sqrt(2 ln p))] p^2, which decays to zero as p grows.
double erf_tail_ratio(double p);

}  // namespace l1svm::bounds
