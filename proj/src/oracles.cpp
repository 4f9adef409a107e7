#include "tvgap/oracles.hpp"

#include "tvgap/errors.hpp"
#include "tvgap/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace tvgap {

namespace {

double mahalanobis(std::span<const double> a, std::span<const double> b, const SpdMatrix& sigma) {
    return linalg::norm2(linalg::forward_substitute(sigma.cholesky_factor(), linalg::subtract(a, b)));
}

double tv_from_delta(double delta) { return std::erf(delta / (2.0 * std::numbers::sqrt2)); }

double normal_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

struct Panel {
    double lo, hi;
};

// Union of the 12-sigma windows around all four means.
std::vector<Panel> support_windows(const Mixture1D& f, const Mixture1D& g) {
    std::array<double, 4> m{f.mu0, f.mu1, g.mu0, g.mu1};
    std::sort(m.begin(), m.end());
    const double w = 12.0 * f.sigma;
    std::vector<Panel> out;
    for (double x : m) {
        if (!out.empty() && x - w <= out.back().hi)
            out.back().hi = std::max(out.back().hi, x + w);
        else
            out.push_back({x - w, x + w});
    }
    return out;
}

double mixture_difference(const Mixture1D& f, const Mixture1D& g, double x) {
    const double s = f.sigma;
    return normal_pdf(x, f.mu0, s) + normal_pdf(x, f.mu1, s) - normal_pdf(x, g.mu0, s) - normal_pdf(x, g.mu1, s);
}

// Sign changes of f - g inside [lo, hi], bracketed on a sigma/16 scan and
// refined by bisection. |f - g| has a kink at each one, which Simpson's
// error estimate does not see.
std::vector<double> crossings(const Mixture1D& f, const Mixture1D& g, double lo, double hi) {
    std::vector<double> out;
    const double step = f.sigma / 16.0;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    double a = lo, da = mixture_difference(f, g, a);
    for (std::size_t k = 1; k <= n; ++k) {
        const double b = k == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
        const double db = mixture_difference(f, g, b);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
            double l = a, r = b, dl = da;
            for (int it = 0; it < 200 && r - l > 4 * std::numeric_limits<double>::epsilon() * std::abs(l + r); ++it) {
                const double m = 0.5 * (l + r);
                const double dm = mixture_difference(f, g, m);
                if ((dm < 0.0) == (dl < 0.0)) {
                    l = m;
                    dl = dm;
                } else {
                    r = m;
                }
            }
            out.push_back(0.5 * (l + r));
        }
        a = b;
        da = db;
    }
    return out;
}

double integrate_1d(const Mixture1D& f, const Mixture1D& g, double tol,
                    const std::function<double(double)>& integrand) {
    require_shared_sigma(f, g);
    if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    std::vector<Panel> pieces;
    for (const Panel& w : support_windows(f, g)) {
        double a = w.lo;
        for (double x : crossings(f, g, w.lo, w.hi)) {
            if (x > a && x < w.hi) {
                pieces.push_back({a, x});
                a = x;
            }
        }
        pieces.push_back({a, w.hi});
    }
    double total_width = 0.0;
    for (const Panel& p : pieces) total_width += p.hi - p.lo;
    double sum = 0.0;
    QuadratureOptions opts;
    for (const Panel& p : pieces) {
        const double width = p.hi - p.lo;
        // Simpson's error estimate is heuristic; aim below the requested tolerance.
        opts.tol = tol / 8.0 * width / total_width;
        const auto panels = static_cast<std::size_t>(std::ceil(width / (0.5 * f.sigma)));
        sum += adaptive_simpson(integrand, p.lo, p.hi, panels, opts).value;
    }
    return sum;
}

}  // namespace

double tv_exact_gaussians(std::span<const double> mu_a, std::span<const double> mu_b, const SpdMatrix& sigma) {
    if (mu_a.size() != sigma.dim() || mu_b.size() != sigma.dim())
        throw DimensionMismatch("mean and covariance dimensions differ");
    return tv_from_delta(mahalanobis(mu_a, mu_b, sigma));
}

double tv_exact_gaussians(double mu_a, double mu_b, double sigma) {
    if (!std::isfinite(mu_a) || !std::isfinite(mu_b) || !std::isfinite(sigma))
        throw NonFiniteInput("non-finite Gaussian parameter");
    if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
    return tv_from_delta(std::abs(mu_a - mu_b) / sigma);
}

BoundResult tv_upper_bound(const MixtureND& f, const MixtureND& g) {
    require_shared_sigma(f, g);
    const SpdMatrix& s = f.sigma;
    const double straight = tv_exact_gaussians(f.mu0, g.mu0, s) + tv_exact_gaussians(f.mu1, g.mu1, s);
    const double crossed = tv_exact_gaussians(f.mu1, g.mu0, s) + tv_exact_gaussians(f.mu0, g.mu1, s);
    return BoundResult::make(0.5 * std::min(straight, crossed), BoundKind::upper, BoundSource::triangle_upper, 0.5);
}

BoundResult tv_upper_bound(const Mixture1D& f, const Mixture1D& g) {
    require_shared_sigma(f, g);
    const double s = f.sigma;
    const double straight = tv_exact_gaussians(f.mu0, g.mu0, s) + tv_exact_gaussians(f.mu1, g.mu1, s);
    const double crossed = tv_exact_gaussians(f.mu1, g.mu0, s) + tv_exact_gaussians(f.mu0, g.mu1, s);
    return BoundResult::make(0.5 * std::min(straight, crossed), BoundKind::upper, BoundSource::triangle_upper, 0.5);
}

QuadratureResult adaptive_simpson(const std::function<double(double)>& fn, double lo, double hi,
                                  std::size_t panels, const QuadratureOptions& opts) {
    if (!(hi > lo)) throw DomainError("quadrature interval is empty");
    if (!(opts.tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    panels = std::max<std::size_t>(panels, 1);

    struct Item {
        double a, b, fa, fm, fb, whole;
    };
    const double span = hi - lo;
    const auto simpson = [](double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    };

    QuadratureResult out;
    std::vector<Item> stack;
    std::size_t intervals = panels;
    const double h = span / static_cast<double>(panels);
    for (std::size_t k = panels; k-- > 0;) {
        const double a = lo + h * static_cast<double>(k);
        const double b = k + 1 == panels ? hi : lo + h * static_cast<double>(k + 1);
        const double fa = fn(a), fm = fn(0.5 * (a + b)), fb = fn(b);
        stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)});
    }

    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        const double m = 0.5 * (it.a + it.b);
        const double lm = 0.5 * (it.a + m), rm = 0.5 * (m + it.b);
        const double flm = fn(lm), frm = fn(rm);
        const double left = simpson(it.a, m, it.fa, flm, it.fm);
        const double right = simpson(m, it.b, it.fm, frm, it.fb);
        const double diff = left + right - it.whole;
        const double local_tol = opts.tol * (it.b - it.a) / span;
        // Past this width the midpoint no longer separates from the ends.
        const bool tiny = (it.b - it.a) <= 1e-13 * std::max(1.0, std::abs(m));
        if (std::abs(diff) <= 15.0 * local_tol || tiny) {
            out.value += left + right + diff / 15.0;
            out.error_estimate += std::abs(diff) / 15.0;
            continue;
        }
        if (++intervals > opts.max_intervals)
            throw QuadratureFailure("adaptive Simpson exceeded the subdivision cap");
        stack.push_back({m, it.b, it.fm, frm, it.fb, right});
        stack.push_back({it.a, m, it.fa, flm, it.fm, left});
    }
    out.intervals = intervals;
    return out;
}

double tv_oracle_1d(const Mixture1D& f, const Mixture1D& g, double tol) {
    return integrate_1d(f, g, tol, [&](double x) { return 0.25 * std::abs(mixture_difference(f, g, x)); });
}

double hellinger_sq_oracle_1d(const Mixture1D& f, const Mixture1D& g, double tol) {
    const double s = f.sigma;
    return integrate_1d(f, g, tol, [&](double x) {
        const double p = 0.5 * (normal_pdf(x, f.mu0, s) + normal_pdf(x, f.mu1, s));
        const double q = 0.5 * (normal_pdf(x, g.mu0, s) + normal_pdf(x, g.mu1, s));
        const double root = std::sqrt(p) + std::sqrt(q);
        if (root == 0.0) return 0.0;
        const double d = (p - q) / root;
        return 0.5 * d * d;
    });
}

McEstimate tv_oracle_nd(const MixtureND& f, const MixtureND& g, std::size_t n, std::uint64_t seed, int workers) {
    require_shared_sigma(f, g);
    if (n < kMinMcSamples) throw DomainError("Monte Carlo oracle needs at least 10000 samples");
    const kernels::WhitenedMeans w = kernels::whiten_means(f, g);
    const kernels::McSums s = kernels::mc_tv_sums(w, n, RandomStream(seed), workers);
    const double nn = static_cast<double>(s.n);
    const double mean = s.sum / nn;
    const double var = std::max(0.0, (s.sum_sq - nn * mean * mean) / (nn - 1.0));
    return McEstimate{mean, std::sqrt(var / nn), s.n, seed};
}

MixtureND embed(const Mixture1D& m) {
    return MixtureND(Vector{m.mu0}, Vector{m.mu1}, SpdMatrix(Matrix::diagonal(Vector{m.sigma * m.sigma})));
}

McEstimate tv_oracle_nd(const Mixture1D& f, const Mixture1D& g, std::size_t n, std::uint64_t seed, int workers) {
    require_shared_sigma(f, g);
    return tv_oracle_nd(embed(f), embed(g), n, seed, workers);
}

double moment_distance(const MixtureND& f, const MixtureND& g) {
    const std::size_t d = f.dim();
    if (g.dim() != d) throw DimensionMismatch("mixtures have different dimensions");
    const std::array<const Vector*, 4> p{&f.mu0, &f.mu1, &g.mu0, &g.mu1};
    constexpr std::array<double, 4> c{0.5, 0.5, -0.5, -0.5};

    double best = 0.0;
    // Entries of the order-l tensor difference, enumerated by multi-index.
    for (int order = 1; order <= 3; ++order) {
        std::size_t count = 1;
        for (int k = 0; k < order; ++k) count *= d;
        double sq = 0.0;
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::array<std::size_t, 3> ix{};
            std::size_t rest = idx;
            for (int k = 0; k < order; ++k) {
                ix[k] = rest % d;
                rest /= d;
            }
            double entry = 0.0;
            for (int i = 0; i < 4; ++i) {
                double prod = c[i];
                for (int k = 0; k < order; ++k) prod *= (*p[i])[ix[k]];
                entry += prod;
            }
            sq += entry * entry;
        }
        best = std::max(best, sq);
    }
    return best;
}

double moment_distance(const Mixture1D& f, const Mixture1D& g) {
    return moment_distance(embed(f), embed(g));
}

}  // namespace tvgap
