#pragma once

#include "tvgap/model.hpp"

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace tvgap {

/// Constants of the one-dimensional case analysis, already expressed as
/// bounds on TV itself (chains that bound 2 TV are divided by two).
struct Constants1D {
    static constexpr double k_large_gap = 0.137;
    static constexpr double k_case1_contained =
        std::numbers::pi * std::numbers::pi / (5120000.0 * std::numbers::e);
    static constexpr double k_case1_contained_alt =
        std::numbers::pi / (12800.0 * std::numbers::sqrt2 * std::numbers::e);
    static constexpr double k_case1_outside =
        std::numbers::pi / (3200.0 * std::numbers::sqrt2 * std::numbers::e);
    static constexpr double k_case3 = std::numbers::pi * std::numbers::pi / (480.0 * std::numbers::e);

    /// Evaluation point used when all four means lie within 100 sigma.
    static constexpr double t_case1(double sigma) { return std::numbers::pi / (400.0 * sigma); }
};

/// Logarithmically spaced t values, expressed in units of 1/sigma so the
/// grid scales with the mixtures.
struct GridSpec {
    std::size_t count = 2048;
    double lo = 1e-3;
    double hi = 10.0;
    std::vector<double> extra;  ///< additional points, also in units of 1/sigma
    /// When false the numeric branch only runs if no closed form applies.
    bool numeric = true;

    std::vector<double> points(double sigma) const;

    static GridSpec closed_form_only() {
        GridSpec g;
        g.numeric = false;
        return g;
    }
};

/// C_f(t) = 1/2 exp(-sigma^2 t^2 / 2) (exp(i t mu0) + exp(i t mu1)).
std::complex<double> char_fn(const Mixture1D& m, double t);

/// exp(-sigma^2 t^2 / 2) |h(t)| with h(t) = e^{it mu0} + e^{it mu1} - e^{it mu0'} - e^{it mu1'}.
/// Phases are taken relative to a.mu0, which leaves |h| unchanged.
double char_gap(const CanonicalPair1D& cp, double t);

/// |h(t)| alone (no Gaussian damping).
double char_modulus(const CanonicalPair1D& cp, double t);

/// 1/4 max over `ts` of char_gap; a valid lower bound on TV for any grid.
/// Ties go to the smallest t.
BoundResult char_tv_lower(const CanonicalPair1D& cp, std::span<const double> ts);
BoundResult char_tv_lower(const CanonicalPair1D& cp, const GridSpec& grid);

/// Lower bound on |h(t)| for t within pi/4 of every offset from a.mu0.
/// Throws DomainError outside that range.
double lemma_sepmeans_bound(const CanonicalPair1D& cp, double t);

/// 0.137 when a matched pair of means is at least 2 sigma apart.
std::optional<BoundResult> lemma_large_gap(const CanonicalPair1D& cp);

/// Scale c of the witness t = 1/(c sigma) for the far-apart, close-matched
/// regime, or empty if that regime does not apply.
std::optional<double> small_prec_witness_c(const CanonicalPair1D& cp);

std::optional<BoundResult> lemma_small_prec(const CanonicalPair1D& cp);

/// Closed form at t = pi/(400 sigma) when every offset from a.mu0 is within
/// 100 sigma.
std::optional<BoundResult> case1_bound(const CanonicalPair1D& cp);

/// Every candidate bound that applied, plus the winner.
struct LowerBound1D {
    CanonicalPair1D pair;
    BoundResult best;
    std::vector<BoundResult> branches;

    /// Largest closed-form (non-numeric) branch, if any applied.
    std::optional<BoundResult> best_closed_form() const;
    const BoundResult* branch(BoundSource source) const;
};

LowerBound1D tv_lower_1d_detail(const Mixture1D& f, const Mixture1D& g, const GridSpec& grid = {});
BoundResult tv_lower_1d(const Mixture1D& f, const Mixture1D& g, const GridSpec& grid = {});

/// Grid points the numeric branch always includes: pi/(400 sigma) and the
/// 1/(c sigma) witnesses of both small-precision constructions where defined.
std::vector<double> proof_witness_points(const CanonicalPair1D& cp);

enum class TrigFact { I, II, III };

/// LHS - RHS of the named inequality on 0 <= y <= x <= pi/4:
///   I:   cos(x - y) - cos(x) >= 0
///   II:  -sin(x + y) + 2 sin(x) >= sin((x - y)/2) cos(y/2)
///   III: -1 - cos(x) + cos(y) + cos(x - y) >= (x - y) y / 2
double trig_fact_residual(TrigFact fact, double x, double y);

}  // namespace tvgap
