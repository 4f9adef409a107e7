#include "tvgap/model.hpp"

#include "tvgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tvgap {

namespace {

void require_finite(std::span<const double> xs, const char* what) {
    for (double x : xs)
        if (!std::isfinite(x)) throw NonFiniteInput(std::string(what) + " has a non-finite entry");
}

// Longest member, first one on ties.
Vector longest(Vector first, Vector second) {
    return linalg::norm2(second) > linalg::norm2(first) ? second : first;
}

}  // namespace

Mixture1D::Mixture1D(double mu0_, double mu1_, double sigma_) : mu0(mu0_), mu1(mu1_), sigma(sigma_) {
    if (!std::isfinite(mu0) || !std::isfinite(mu1)) throw NonFiniteInput("mixture mean is not finite");
    if (!std::isfinite(sigma)) throw NonFiniteInput("mixture sigma is not finite");
    if (!(sigma > 0.0)) throw DomainError("mixture sigma must be positive");
}

MixtureND::MixtureND(Vector mu0_, Vector mu1_, SpdMatrix sigma_)
    : mu0(std::move(mu0_)), mu1(std::move(mu1_)), sigma(std::move(sigma_)) {
    if (mu0.empty()) throw DimensionMismatch("mixture dimension must be at least 1");
    if (mu0.size() != mu1.size() || mu0.size() != sigma.dim())
        throw DimensionMismatch("mixture means and covariance disagree in dimension");
    require_finite(mu0, "mu0");
    require_finite(mu1, "mu1");
}

void require_shared_sigma(const Mixture1D& f, const Mixture1D& g) {
    if (f.sigma != g.sigma) throw SigmaMismatch("mixtures do not share sigma");
}

void require_shared_sigma(const MixtureND& f, const MixtureND& g) {
    if (f.dim() != g.dim()) throw DimensionMismatch("mixtures differ in dimension");
    if (!linalg::bitwise_equal(f.sigma.matrix(), g.sigma.matrix()))
        throw SigmaMismatch("mixtures do not share a covariance matrix");
}

CanonicalPair1D canonicalize_1d(const Mixture1D& f, const Mixture1D& g) {
    require_shared_sigma(f, g);
    const bool flip_f = f.mu0 > f.mu1;
    const bool flip_g = g.mu0 > g.mu1;
    const Mixture1D fs = flip_f ? Mixture1D(f.mu1, f.mu0, f.sigma) : f;
    const Mixture1D gs = flip_g ? Mixture1D(g.mu1, g.mu0, g.sigma) : g;
    // Ties on the smallest mean put the wider mixture first so that
    // containment is detected whichever order the inputs arrive in.
    const bool swap = gs.mu0 < fs.mu0 || (gs.mu0 == fs.mu0 && gs.mu1 > fs.mu1);
    if (swap) return CanonicalPair1D{gs, fs, true, flip_g, flip_f};
    return CanonicalPair1D{fs, gs, false, flip_f, flip_g};
}

std::pair<Mixture1D, Mixture1D> restore_original(const CanonicalPair1D& cp) {
    const auto unflip = [](const Mixture1D& m, bool flipped) {
        return flipped ? Mixture1D(m.mu1, m.mu0, m.sigma) : m;
    };
    Mixture1D a = unflip(cp.a, cp.swapped_within_a);
    Mixture1D b = unflip(cp.b, cp.swapped_within_b);
    if (cp.swapped_mixtures) return {b, a};
    return {a, b};
}

DeltaStats delta_stats(const CanonicalPair1D& cp) {
    const double m0 = cp.a.mu0, m1 = cp.a.mu1, n0 = cp.b.mu0, n1 = cp.b.mu1;
    return DeltaStats{
        std::max(std::abs(m0 - m1), std::abs(n0 - n1)),
        std::max(std::abs(n0 - m0), std::abs(m1 - n1)),
        std::abs(m0 + m1 - n0 - n1),
        std::min(std::abs(n0 - m0), std::abs(n1 - m1)),
    };
}

DirectionData direction_vectors(const MixtureND& f, const MixtureND& g) {
    require_shared_sigma(f, g);
    using linalg::subtract;
    DirectionData dd;
    dd.v1 = longest(subtract(f.mu1, f.mu0), subtract(g.mu1, g.mu0));
    dd.v2 = longest(subtract(g.mu0, f.mu0), subtract(g.mu1, f.mu1));
    dd.v3 = longest(subtract(g.mu0, f.mu1), subtract(g.mu1, f.mu0));

    const std::vector<Vector> vs{dd.v1, dd.v2, dd.v3};
    dd.basis = linalg::orthonormal_basis(vs);
    if (dd.basis.empty()) return dd;

    // Restricted Rayleigh quotient: top eigenvalue of B^T Sigma B.
    const std::size_t k = dd.basis.size();
    Matrix projected(k, k);
    const Matrix& sigma = f.sigma.matrix();
    for (std::size_t i = 0; i < k; ++i) {
        const Vector si = linalg::multiply(sigma, dd.basis[i]);
        for (std::size_t j = 0; j < k; ++j) projected(j, i) = linalg::dot(dd.basis[j], si);
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            projected(i, j) = projected(j, i) = 0.5 * (projected(i, j) + projected(j, i));
    dd.lambda = std::max(0.0, linalg::sym_eig(projected).values.front());
    return dd;
}

std::string_view to_string(BoundKind kind) {
    return kind == BoundKind::lower ? "lower" : "upper";
}

std::string_view to_string(BoundSource source) {
    switch (source) {
        case BoundSource::case1_contained: return "case1_contained";
        case BoundSource::case1_outside: return "case1_outside";
        case BoundSource::case2_large_gap: return "case2_large_gap";
        case BoundSource::case3_small_prec: return "case3_small_prec";
        case BoundSource::char_numeric: return "char_numeric";
        case BoundSource::projection_nd: return "projection_nd";
        case BoundSource::triangle_upper: return "triangle_upper";
        case BoundSource::trivial_zero: return "trivial_zero";
    }
    return "unknown";
}

BoundResult BoundResult::make(double raw, BoundKind kind, BoundSource source, double constant) {
    BoundResult r;
    r.raw_value = raw;
    r.value = std::clamp(raw, 0.0, 1.0);
    r.kind = kind;
    r.source = source;
    r.constant_used = constant;
    return r;
}

}  // namespace tvgap
