#pragma once

#include "tvgap/model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>

namespace tvgap {

/// TV(N(mu_a, Sigma), N(mu_b, Sigma)) = 2 Phi(Delta/2) - 1, Delta the
/// Mahalanobis distance. Computed as erf(Delta / (2 sqrt 2)).
double tv_exact_gaussians(std::span<const double> mu_a, std::span<const double> mu_b, const SpdMatrix& sigma);
double tv_exact_gaussians(double mu_a, double mu_b, double sigma);

/// Triangle-inequality upper bound: half the smaller of the two matched sums
/// of component TVs.
BoundResult tv_upper_bound(const MixtureND& f, const MixtureND& g);
BoundResult tv_upper_bound(const Mixture1D& f, const Mixture1D& g);

struct QuadratureOptions {
    double tol = 1e-10;
    std::size_t max_intervals = 1'000'000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t intervals = 0;
};

/// Adaptive Simpson on [lo, hi] split into `panels` equal pieces. An
/// interval is accepted once |S2 - S1| <= 15 * tol * width / (hi - lo).
/// Throws QuadratureFailure when more than max_intervals are needed.
QuadratureResult adaptive_simpson(const std::function<double(double)>& fn, double lo, double hi,
                                  std::size_t panels, const QuadratureOptions& opts = {});

/// 1/2 integral |f - g| over the union of [m - 12 sigma, m + 12 sigma].
double tv_oracle_1d(const Mixture1D& f, const Mixture1D& g, double tol = 1e-10);
/// 1/2 integral (sqrt f - sqrt g)^2, same domain.
double hellinger_sq_oracle_1d(const Mixture1D& f, const Mixture1D& g, double tol = 1e-10);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultMcSamples = 200'000;
inline constexpr std::size_t kMinMcSamples = 10'000;

/// E_{x~f}[max(0, 1 - g(x)/f(x))] with n draws from f. Results depend only
/// on (f, g, n, seed), not on the worker count.
McEstimate tv_oracle_nd(const MixtureND& f, const MixtureND& g, std::size_t n = kDefaultMcSamples,
                        std::uint64_t seed = 0, int workers = 0);
McEstimate tv_oracle_nd(const Mixture1D& f, const Mixture1D& g, std::size_t n = kDefaultMcSamples,
                        std::uint64_t seed = 0, int workers = 0);

/// max over l in {1, 2, 3} of ||M_l(f) - M_l(g)||_F^2 with
/// M_l = (mu0^{(x)l} + mu1^{(x)l}) / 2. Sigma is not used.
double moment_distance(const MixtureND& f, const MixtureND& g);
double moment_distance(const Mixture1D& f, const Mixture1D& g);

MixtureND embed(const Mixture1D& m);

}  // namespace tvgap
