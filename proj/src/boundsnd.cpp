#include "tvgap/boundsnd.hpp"

#include "tvgap/errors.hpp"
#include "tvgap/rng.hpp"

#include <algorithm>
#include <cmath>

namespace tvgap {

namespace {

bool is_zero(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

Vector sigma_normalized(const Vector& v, const SpdMatrix& sigma) {
    const double q = linalg::quadratic_form(sigma.matrix(), v);
    if (!(q > 0.0)) throw DomainError("direction has zero projected variance");
    return linalg::scaled(v, 1.0 / std::sqrt(q));
}

// Candidates closer than this (relative) count as tied; the earlier
// construction is kept.
constexpr double kTieRel = 1e-12;

}  // namespace

std::string_view to_string(DirectionConstruction c) {
    switch (c) {
        case DirectionConstruction::deterministic_v: return "deterministic_v";
        case DirectionConstruction::random_z: return "random_z";
        case DirectionConstruction::coordinate_fallback: return "coordinate_fallback";
    }
    return "unknown";
}

ProjectionWitness project(const MixtureND& f, const MixtureND& g, std::span<const double> t,
                          DirectionConstruction construction) {
    require_shared_sigma(f, g);
    if (t.size() != f.dim()) throw DimensionMismatch("projection direction has the wrong length");
    if (is_zero(t)) throw DomainError("projection direction is zero");
    const double var = linalg::quadratic_form(f.sigma.matrix(), t);
    if (!(var > 0.0)) throw DomainError("projection direction has zero variance");
    const double s = std::sqrt(var);
    using linalg::dot;
    return ProjectionWitness{Vector(t.begin(), t.end()), Mixture1D(dot(f.mu0, t), dot(f.mu1, t), s),
                             Mixture1D(dot(g.mu0, t), dot(g.mu1, t), s), construction};
}

Vector sample_direction_z(const DirectionData& dd, std::uint64_t seed) {
    if (dd.basis.empty()) throw DomainError("sample_direction_z needs a non-empty basis");
    const std::size_t d = dd.basis.front().size();
    const double zero = linalg::default_tolerances().zero_abs;

    std::vector<std::pair<const Vector*, double>> targets;
    for (const Vector* v : {&dd.v1, &dd.v2, &dd.v3}) {
        const double n = linalg::norm2(*v);
        if (n >= zero) targets.emplace_back(v, n);
    }

    RandomStream stream(seed);
    for (int round = 0; round < kDirectionRetryLimit; ++round) {
        Vector z(d, 0.0);
        for (const Vector& u : dd.basis) {
            const double p = stream.normal();
            for (std::size_t i = 0; i < d; ++i) z[i] += p * u[i];
        }
        if (linalg::norm2(z) > 10.0) continue;
        const bool correlated = std::all_of(targets.begin(), targets.end(), [&](const auto& tv) {
            return std::abs(linalg::dot(z, *tv.first)) >= tv.second / 6.0;
        });
        if (correlated) return z;
    }
    throw RetryLimitExceeded("no admissible direction z after 1000 rounds");
}

Vector case2_direction(const DirectionData& dd) {
    const double n2 = linalg::norm2(dd.v2);
    const double n3 = linalg::norm2(dd.v3);
    if (n2 == 0.0 || n3 == 0.0) throw DomainError("case2_direction needs nonzero v2 and v3");
    const double s = linalg::dot(dd.v2, dd.v3) >= 0.0 ? 1.0 : -1.0;
    Vector v(dd.v2.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = dd.v2[i] / n2 + s * dd.v3[i] / n3;
    return v;
}

Vector coordinate_fallback_direction(const MixtureND& f, const MixtureND& g) {
    require_shared_sigma(f, g);
    const std::size_t d = f.dim();
    std::size_t best_axis = 0;
    double best_score = -1.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double s = std::sqrt(f.sigma(k, k));
        const CanonicalPair1D cp =
            canonicalize_1d(Mixture1D(f.mu0[k], f.mu1[k], s), Mixture1D(g.mu0[k], g.mu1[k], s));
        const double score = delta_stats(cp).delta2 / s;
        if (score > best_score) {
            best_score = score;
            best_axis = k;
        }
    }
    Vector e(d, 0.0);
    e[best_axis] = 1.0;
    return e;
}

std::pair<MixtureND, MixtureND> whiten(const MixtureND& f, const MixtureND& g) {
    require_shared_sigma(f, g);
    const SpdMatrix r = linalg::inv_sqrt(f.sigma);
    Matrix cov = linalg::multiply(linalg::multiply(r.matrix(), f.sigma.matrix()), r.matrix());
    for (std::size_t i = 0; i < cov.rows(); ++i)
        for (std::size_t j = i + 1; j < cov.cols(); ++j) cov(i, j) = cov(j, i) = 0.5 * (cov(i, j) + cov(j, i));
    const SpdMatrix shared(std::move(cov));
    const auto map = [&](const Vector& mu) { return linalg::multiply(r.matrix(), mu); };
    return {MixtureND(map(f.mu0), map(f.mu1), shared), MixtureND(map(g.mu0), map(g.mu1), shared)};
}

NdDiagnostics nd_diagnostics(const DirectionData& dd) {
    NdDiagnostics out;
    out.v1_norm = linalg::norm2(dd.v1);
    out.v2_norm = linalg::norm2(dd.v2);
    out.v3_norm = linalg::norm2(dd.v3);
    out.lambda = dd.lambda;
    const double m = std::min(out.v2_norm, out.v3_norm);
    out.first_regime = 2.0 * out.v1_norm >= m;
    if (dd.lambda > 0.0) {
        out.first_expression = std::min(1.0, out.v1_norm * m / dd.lambda);
        out.second_expression = std::min(1.0, m / std::sqrt(dd.lambda));
    }
    return out;
}

const ProjectionCandidate* LowerBoundND::candidate(DirectionConstruction c) const {
    for (const ProjectionCandidate& pc : candidates)
        if (pc.witness.construction == c) return &pc;
    return nullptr;
}

std::uint64_t direction_z_seed(std::uint64_t seed) { return RandomStream(seed).split("direction_z").key(); }

LowerBoundND tv_lower_nd_detail(const MixtureND& f, const MixtureND& g, std::uint64_t seed,
                                const GridSpec& grid) {
    require_shared_sigma(f, g);
    LowerBoundND out;
    out.directions = direction_vectors(f, g);
    out.diagnostics = nd_diagnostics(out.directions);
    const DirectionData& dd = out.directions;

    // v2 = 0 or v3 = 0 means the mixtures coincide up to component labels.
    if (is_zero(dd.v2) || is_zero(dd.v3)) {
        out.best = BoundResult::make(0.0, BoundKind::lower, BoundSource::trivial_zero, 0.0);
        return out;
    }

    std::vector<std::pair<Vector, DirectionConstruction>> directions;
    directions.emplace_back(case2_direction(dd), DirectionConstruction::deterministic_v);
    // With v1 = 0 both mixtures are single Gaussians and v2 = v3 already
    // points along the mean difference.
    if (!is_zero(dd.v1) && !dd.basis.empty())
        directions.emplace_back(sample_direction_z(dd, direction_z_seed(seed)),
                                DirectionConstruction::random_z);
    if (directions.empty())
        directions.emplace_back(coordinate_fallback_direction(f, g), DirectionConstruction::coordinate_fallback);

    for (const auto& [dir, construction] : directions) {
        ProjectionWitness w = project(f, g, sigma_normalized(dir, f.sigma), construction);
        LowerBound1D b = tv_lower_1d_detail(w.f, w.g, grid);
        out.candidates.push_back(ProjectionCandidate{std::move(w), std::move(b)});
    }

    std::size_t win = 0;
    for (std::size_t k = 1; k < out.candidates.size(); ++k) {
        const double incumbent = out.candidates[win].bound.best.value;
        if (out.candidates[k].bound.best.value > incumbent * (1.0 + kTieRel)) win = k;
    }
    out.winner = win;

    const ProjectionCandidate& w = out.candidates[win];
    out.best = BoundResult::make(w.bound.best.raw_value, BoundKind::lower, BoundSource::projection_nd,
                                 w.bound.best.constant_used);
    out.best.witness_t = w.bound.best.witness_t;
    out.best.witness_direction = w.witness.direction;
    return out;
}

BoundResult tv_lower_nd(const MixtureND& f, const MixtureND& g, std::uint64_t seed, const GridSpec& grid) {
    return tv_lower_nd_detail(f, g, seed, grid).best;
}

}  // namespace tvgap
