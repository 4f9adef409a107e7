#pragma once

#include "tvgap/linalg.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace tvgap {

using linalg::Matrix;
using linalg::SpdMatrix;
using linalg::Vector;

/// 1/2 N(mu0, sigma^2) + 1/2 N(mu1, sigma^2). `sigma` is the standard deviation.
struct Mixture1D {
    double mu0;
    double mu1;
    double sigma;

    Mixture1D(double mu0, double mu1, double sigma);

    friend bool operator==(const Mixture1D&, const Mixture1D&) = default;
};

/// 1/2 N(mu0, Sigma) + 1/2 N(mu1, Sigma) in d dimensions.
struct MixtureND {
    Vector mu0;
    Vector mu1;
    SpdMatrix sigma;

    MixtureND(Vector mu0, Vector mu1, SpdMatrix sigma);

    std::size_t dim() const noexcept { return mu0.size(); }
};

/// Throws SigmaMismatch unless the two standard deviations are identical.
void require_shared_sigma(const Mixture1D& f, const Mixture1D& g);
/// Throws DimensionMismatch / SigmaMismatch unless dimensions agree and the
/// covariance matrices are bit-for-bit identical.
void require_shared_sigma(const MixtureND& f, const MixtureND& g);

/// A pair reordered so that a.mu0 <= min(a.mu1, b.mu0, b.mu1) and
/// b.mu0 <= b.mu1. The flags say which relabelings were applied; the
/// within-mixture flags refer to the mixtures as stored in `a` and `b`.
struct CanonicalPair1D {
    Mixture1D a;
    Mixture1D b;
    bool swapped_mixtures = false;
    bool swapped_within_a = false;
    bool swapped_within_b = false;

    double sigma() const noexcept { return a.sigma; }
    /// [b.mu0, b.mu1] inside [a.mu0, a.mu1].
    bool contained() const noexcept { return b.mu1 <= a.mu1; }
    bool identical() const noexcept { return a == b; }
};

CanonicalPair1D canonicalize_1d(const Mixture1D& f, const Mixture1D& g);

/// Undoes the recorded relabelings, returning the original (f, g).
std::pair<Mixture1D, Mixture1D> restore_original(const CanonicalPair1D& cp);

struct DeltaStats {
    double delta1;  ///< largest within-mixture gap
    double delta2;  ///< largest matched cross-mixture gap
    double delta3;  ///< |sum of means difference|
    double delta4;  ///< smallest matched cross-mixture gap
};

DeltaStats delta_stats(const CanonicalPair1D& cp);

struct DirectionData {
    Vector v1;
    Vector v2;
    Vector v3;
    std::vector<Vector> basis;  ///< orthonormal, spans {v1, v2, v3}
    double lambda = 0.0;        ///< max u^T Sigma u over unit u in span(basis)
};

/// v1, v2, v3 are the longest members of
///   S1 = {mu1 - mu0, mu1' - mu0'}, S2 = {mu0' - mu0, mu1' - mu1},
///   S3 = {mu0' - mu1, mu1' - mu0};
/// ties go to the first listed member.
DirectionData direction_vectors(const MixtureND& f, const MixtureND& g);

enum class BoundKind { lower, upper };

enum class BoundSource {
    case1_contained,
    case1_outside,
    case2_large_gap,
    case3_small_prec,
    char_numeric,
    projection_nd,
    triangle_upper,
    trivial_zero,
};

std::string_view to_string(BoundKind kind);
std::string_view to_string(BoundSource source);

struct BoundResult {
    double value = 0.0;      ///< clamped to [0, 1]
    double raw_value = 0.0;  ///< before clamping
    BoundKind kind = BoundKind::lower;
    BoundSource source = BoundSource::trivial_zero;
    std::optional<double> witness_t;
    std::optional<Vector> witness_direction;
    double constant_used = 0.0;

    static BoundResult make(double raw, BoundKind kind, BoundSource source, double constant);
};

}  // namespace tvgap
