#pragma once

#include "tvgap/bounds1d.hpp"
#include "tvgap/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace tvgap {

enum class DirectionConstruction { deterministic_v, random_z, coordinate_fallback };

std::string_view to_string(DirectionConstruction c);

/// The pair seen through x -> <t, x>: each mixture becomes
/// 1/2 N(<mu0, t>, t^T Sigma t) + 1/2 N(<mu1, t>, t^T Sigma t).
struct ProjectionWitness {
    Vector direction;
    Mixture1D f;
    Mixture1D g;
    DirectionConstruction construction;
};

ProjectionWitness project(const MixtureND& f, const MixtureND& g, std::span<const double> t,
                          DirectionConstruction construction = DirectionConstruction::random_z);

inline constexpr int kDirectionRetryLimit = 1000;

/// Rejection sampler for a short direction z in span(dd.basis) that keeps a
/// sixth of every v_i: ||z|| <= 10 and |<z, v>| >= ||v|| / 6 for each
/// nonzero v in {v1, v2, v3}. z = sum_k p_k basis_k with p_k ~ N(0, 1)
/// drawn from RandomStream(seed).
Vector sample_direction_z(const DirectionData& dd, std::uint64_t seed);

/// v2/||v2|| + s v3/||v3|| with s = sign(<v2, v3>) (s = +1 when orthogonal).
Vector case2_direction(const DirectionData& dd);

/// Coordinate axis whose projection has the largest delta2 / sigma; the
/// lowest index wins ties.
Vector coordinate_fallback_direction(const MixtureND& f, const MixtureND& g);

/// x -> Sigma^{-1/2} x applied to both mixtures.
std::pair<MixtureND, MixtureND> whiten(const MixtureND& f, const MixtureND& g);

/// Asymptotic expressions for the d-dimensional case. Reported for
/// comparison only; they carry unspecified constants.
struct NdDiagnostics {
    double v1_norm = 0.0;
    double v2_norm = 0.0;
    double v3_norm = 0.0;
    double lambda = 0.0;
    bool first_regime = false;        ///< 2 ||v1|| >= min(||v2||, ||v3||)
    double first_expression = 0.0;    ///< min(1, ||v1|| min(||v2||, ||v3||) / lambda)
    double second_expression = 0.0;   ///< min(1, min(||v2||, ||v3||) / sqrt(lambda))
};

NdDiagnostics nd_diagnostics(const DirectionData& dd);

struct ProjectionCandidate {
    ProjectionWitness witness;
    LowerBound1D bound;
};

struct LowerBoundND {
    BoundResult best;
    DirectionData directions;
    NdDiagnostics diagnostics;
    std::vector<ProjectionCandidate> candidates;
    std::optional<std::size_t> winner;

    const ProjectionCandidate* candidate(DirectionConstruction c) const;
};

/// Seed handed to sample_direction_z by tv_lower_nd for a given top-level seed.
std::uint64_t direction_z_seed(std::uint64_t seed);

LowerBoundND tv_lower_nd_detail(const MixtureND& f, const MixtureND& g, std::uint64_t seed,
                                const GridSpec& grid = {});
BoundResult tv_lower_nd(const MixtureND& f, const MixtureND& g, std::uint64_t seed,
                        const GridSpec& grid = {});

}  // namespace tvgap
