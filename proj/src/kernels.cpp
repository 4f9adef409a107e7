#include "tvgap/kernels.hpp"

#include "tvgap/bounds1d.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tvgap::kernels {

namespace {

std::atomic<int> g_default_workers{0};

int resolve(int workers) {
    if (workers > 0) return workers;
    const int d = g_default_workers.load();
    if (d > 0) return d;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool better(const GridMax& cand, const GridMax& best) {
    return cand.value > best.value || (cand.value == best.value && cand.t < best.t);
}

// log(exp(a) + exp(b))
double log_add(double a, double b) {
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double sq_dist(std::span<const double> x, std::span<const double> m) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - m[i];
        s += d * d;
    }
    return s;
}

McSums run_chunk(const WhitenedMeans& w, std::size_t count, RandomStream stream) {
    McSums out;
    Vector x(w.dim);
    for (std::size_t s = 0; s < count; ++s) {
        const Vector& centre = stream.coin() ? w.f1 : w.f0;
        for (std::size_t i = 0; i < w.dim; ++i) x[i] = centre[i] + stream.normal();
        // Shared covariance: normalising constants cancel in the ratio.
        const double log_f = log_add(-0.5 * sq_dist(x, w.f0), -0.5 * sq_dist(x, w.f1));
        const double log_g = log_add(-0.5 * sq_dist(x, w.g0), -0.5 * sq_dist(x, w.g1));
        const double v = std::max(0.0, -std::expm1(log_g - log_f));
        out.sum += v;
        out.sum_sq += v * v;
    }
    out.n = count;
    return out;
}

std::size_t chunk_count(std::size_t n) { return (n + kMcChunk - 1) / kMcChunk; }

std::size_t chunk_size(std::size_t n, std::size_t k) {
    return std::min(kMcChunk, n - k * kMcChunk);
}

McSums combine(const std::vector<McSums>& parts) {
    McSums total;
    for (const McSums& p : parts) {
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
        total.n += p.n;
    }
    return total;
}

}  // namespace

void set_default_workers(int workers) { g_default_workers.store(std::max(0, workers)); }
int default_workers() { return resolve(0); }

GridMax char_gap_max_serial(const CanonicalPair1D& cp, std::span<const double> ts) {
    GridMax best{-1.0, 0.0};
    for (double t : ts) {
        const GridMax cand{char_gap(cp, t), t};
        if (better(cand, best)) best = cand;
    }
    return best;
}

GridMax char_gap_max(const CanonicalPair1D& cp, std::span<const double> ts, int workers) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ts.size());
    GridMax best{-1.0, 0.0};
#pragma omp parallel num_threads(resolve(workers))
    {
        GridMax local{-1.0, 0.0};
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t k = 0; k < n; ++k) {
            const GridMax cand{char_gap(cp, ts[k]), ts[k]};
            if (better(cand, local)) local = cand;
        }
#pragma omp critical(tvgap_grid_max)
        if (better(local, best)) best = local;
    }
    return best;
}

WhitenedMeans whiten_means(const MixtureND& f, const MixtureND& g) {
    require_shared_sigma(f, g);
    const Matrix& l = f.sigma.cholesky_factor();
    return WhitenedMeans{f.dim(), linalg::forward_substitute(l, f.mu0), linalg::forward_substitute(l, f.mu1),
                         linalg::forward_substitute(l, g.mu0), linalg::forward_substitute(l, g.mu1)};
}

McSums mc_tv_sums_serial(const WhitenedMeans& w, std::size_t n, const RandomStream& stream) {
    std::vector<McSums> parts(chunk_count(n));
    for (std::size_t k = 0; k < parts.size(); ++k) parts[k] = run_chunk(w, chunk_size(n, k), stream.split(k));
    return combine(parts);
}

McSums mc_tv_sums(const WhitenedMeans& w, std::size_t n, const RandomStream& stream, int workers) {
    const std::ptrdiff_t chunks = static_cast<std::ptrdiff_t>(chunk_count(n));
    std::vector<McSums> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve(workers))
    for (std::ptrdiff_t k = 0; k < chunks; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        parts[uk] = run_chunk(w, chunk_size(n, uk), stream.split(uk));
    }
    return combine(parts);
}

}  // namespace tvgap::kernels
