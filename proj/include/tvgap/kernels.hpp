#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial twin with the
// same arithmetic; tests hold the two to bit-identical results.

#include "tvgap/model.hpp"
#include "tvgap/rng.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tvgap::kernels {

/// Thread count for the parallel kernels; 0 means the OpenMP default.
void set_default_workers(int workers);
int default_workers();

struct GridMax {
    double value = 0.0;
    double t = 0.0;
};

/// max over ts of char_gap(cp, t); ties resolved towards the smallest t so
/// the answer does not depend on how the grid is partitioned.
GridMax char_gap_max(const CanonicalPair1D& cp, std::span<const double> ts, int workers = 0);
GridMax char_gap_max_serial(const CanonicalPair1D& cp, std::span<const double> ts);

/// Means of both mixtures expressed in coordinates where the shared
/// covariance is the identity (L^{-1} mu for the Cholesky factor L).
struct WhitenedMeans {
    std::size_t dim = 0;
    Vector f0, f1, g0, g1;
};

WhitenedMeans whiten_means(const MixtureND& f, const MixtureND& g);

struct McSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;
};

/// Samples per Monte Carlo chunk. Chunk k draws from stream.split(k), and
/// chunk sums are combined in chunk order, so the totals are identical for
/// every thread count.
inline constexpr std::size_t kMcChunk = 8192;

/// Sums of max(0, 1 - g(x)/f(x)) and its square over n draws x ~ f.
McSums mc_tv_sums(const WhitenedMeans& w, std::size_t n, const RandomStream& stream, int workers = 0);
McSums mc_tv_sums_serial(const WhitenedMeans& w, std::size_t n, const RandomStream& stream);

}  // namespace tvgap::kernels
