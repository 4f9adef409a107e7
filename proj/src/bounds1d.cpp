#include "tvgap/bounds1d.hpp"

#include "tvgap/errors.hpp"
#include "tvgap/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace tvgap {

namespace {

constexpr double kPi = std::numbers::pi;

double sin_half_sq(double x) {
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;  // 1 - cos(x)
}

BoundResult lower(double raw, BoundSource source, double constant, std::optional<double> t) {
    BoundResult r = BoundResult::make(raw, BoundKind::lower, source, constant);
    r.witness_t = t;
    return r;
}

double floor_count(double gap, double sigma) { return std::floor(gap * kPi / (80.0 * sigma)); }

// Construction used when mu1' > mu1: c = gap / (2 pi sigma floor(gap pi / 80 sigma)).
std::optional<double> witness_c_shifted(double gap, double sigma) {
    const double k = floor_count(gap, sigma);
    if (!(k >= 1.0)) return std::nullopt;
    return gap / (2.0 * kPi * sigma * k);
}

// Construction used when mu1' <= mu1: the 3 pi / 2 offset keeps one phase at -i.
std::optional<double> witness_c_offset(double gap, double sigma) {
    if (!(gap > 0.0)) return std::nullopt;
    return gap / (1.5 * kPi * sigma + 2.0 * kPi * sigma * floor_count(gap, sigma));
}

// Gap that the offset construction is built on, chosen by which matched
// pair of means is further apart.
double offset_gap(const CanonicalPair1D& cp) {
    const double alpha = cp.b.mu0 - cp.a.mu0;
    const double beta = std::abs(cp.a.mu1 - cp.b.mu1);
    return beta <= alpha ? cp.b.mu1 - cp.a.mu0 : cp.a.mu1 - cp.b.mu0;
}

bool far_apart_close_matched(const CanonicalPair1D& cp) {
    const DeltaStats ds = delta_stats(cp);
    const double s = cp.sigma();
    return ds.delta1 >= 100.0 * s && ds.delta2 <= 2.0 * s;
}

}  // namespace

std::vector<double> GridSpec::points(double sigma) const {
    std::vector<double> ts;
    ts.reserve(count + extra.size());
    if (count == 1) {
        ts.push_back(lo / sigma);
    } else if (count > 1) {
        const double ratio = std::log(hi / lo);
        for (std::size_t k = 0; k < count; ++k) {
            const double frac = static_cast<double>(k) / static_cast<double>(count - 1);
            ts.push_back(lo * std::exp(ratio * frac) / sigma);
        }
        ts.back() = hi / sigma;
    }
    for (double e : extra) ts.push_back(e / sigma);
    return ts;
}

std::complex<double> char_fn(const Mixture1D& m, double t) {
    const double damp = std::exp(-0.5 * m.sigma * m.sigma * t * t);
    return 0.5 * damp * (std::polar(1.0, t * m.mu0) + std::polar(1.0, t * m.mu1));
}

double char_modulus(const CanonicalPair1D& cp, double t) {
    const double p1 = t * (cp.a.mu1 - cp.a.mu0);
    const double q0 = t * (cp.b.mu0 - cp.a.mu0);
    const double q1 = t * (cp.b.mu1 - cp.a.mu0);
    // 1 + cos p1 - cos q0 - cos q1, written without cancellation for small phases.
    const double re = sin_half_sq(q0) + sin_half_sq(q1) - sin_half_sq(p1);
    const double im = std::sin(p1) - std::sin(q0) - std::sin(q1);
    return std::hypot(re, im);
}

double char_gap(const CanonicalPair1D& cp, double t) {
    const double s = cp.sigma();
    return std::exp(-0.5 * s * s * t * t) * char_modulus(cp, t);
}

BoundResult char_tv_lower(const CanonicalPair1D& cp, std::span<const double> ts) {
    if (ts.empty()) throw DomainError("char_tv_lower needs a non-empty grid");
    const kernels::GridMax gm = kernels::char_gap_max(cp, ts);
    return lower(0.25 * gm.value, BoundSource::char_numeric, 0.25, gm.t);
}

BoundResult char_tv_lower(const CanonicalPair1D& cp, const GridSpec& grid) {
    const std::vector<double> ts = grid.points(cp.sigma());
    return char_tv_lower(cp, ts);
}

double lemma_sepmeans_bound(const CanonicalPair1D& cp, double t) {
    const double phi1 = cp.a.mu1 - cp.a.mu0;
    const double phi0p = cp.b.mu0 - cp.a.mu0;
    const double phi1p = cp.b.mu1 - cp.a.mu0;
    if (!(t > 0.0)) throw DomainError("lemma_sepmeans_bound requires t > 0");
    constexpr double quarter_pi = kPi / 4.0;
    for (double phi : {phi1, phi1p, phi0p})
        if (!(t * phi >= 0.0 && t * phi <= quarter_pi))
            throw DomainError("lemma_sepmeans_bound requires every t * offset in [0, pi/4]");

    const DeltaStats ds = delta_stats(cp);
    if (cp.contained()) {
        const double quad = t * t * (ds.delta1 - ds.delta4) * ds.delta4 / 2.0;
        const double lin = t * ds.delta3 / (4.0 * std::numbers::sqrt2);
        return std::max(quad, lin);
    }
    return t * ds.delta2 / (2.0 * std::numbers::sqrt2);
}

std::optional<BoundResult> lemma_large_gap(const CanonicalPair1D& cp) {
    const double gap = std::max(std::abs(cp.a.mu0 - cp.b.mu0), std::abs(cp.a.mu1 - cp.b.mu1));
    if (!(gap >= 2.0 * cp.sigma())) return std::nullopt;
    return lower(Constants1D::k_large_gap, BoundSource::case2_large_gap, Constants1D::k_large_gap,
                 std::nullopt);
}

std::optional<double> small_prec_witness_c(const CanonicalPair1D& cp) {
    if (!far_apart_close_matched(cp)) return std::nullopt;
    const double s = cp.sigma();
    if (cp.b.mu1 > cp.a.mu1) return witness_c_shifted(cp.a.mu1 - cp.a.mu0, s);
    return witness_c_offset(offset_gap(cp), s);
}

std::optional<BoundResult> lemma_small_prec(const CanonicalPair1D& cp) {
    const auto c = small_prec_witness_c(cp);
    if (!c) return std::nullopt;
    const double s = cp.sigma();
    const DeltaStats ds = delta_stats(cp);
    return lower(Constants1D::k_case3 * ds.delta2 / s, BoundSource::case3_small_prec,
                 Constants1D::k_case3, 1.0 / (*c * s));
}

std::optional<BoundResult> case1_bound(const CanonicalPair1D& cp) {
    const double s = cp.sigma();
    const double span = std::max({cp.b.mu1 - cp.a.mu0, cp.a.mu1 - cp.a.mu0, cp.b.mu0 - cp.a.mu0});
    if (!(span <= 100.0 * s)) return std::nullopt;

    const DeltaStats ds = delta_stats(cp);
    const double t = Constants1D::t_case1(s);
    if (cp.contained()) {
        const double quadratic = Constants1D::k_case1_contained * ds.delta1 * ds.delta2 / (s * s);
        const double linear = Constants1D::k_case1_contained_alt * ds.delta2 / s;
        if (quadratic <= linear)
            return lower(quadratic, BoundSource::case1_contained, Constants1D::k_case1_contained, t);
        return lower(linear, BoundSource::case1_contained, Constants1D::k_case1_contained_alt, t);
    }
    return lower(Constants1D::k_case1_outside * ds.delta2 / s, BoundSource::case1_outside,
                 Constants1D::k_case1_outside, t);
}

std::vector<double> proof_witness_points(const CanonicalPair1D& cp) {
    const double s = cp.sigma();
    std::vector<double> ts{Constants1D::t_case1(s)};
    if (auto c = witness_c_shifted(cp.a.mu1 - cp.a.mu0, s)) ts.push_back(1.0 / (*c * s));
    if (auto c = witness_c_offset(offset_gap(cp), s)) ts.push_back(1.0 / (*c * s));
    return ts;
}

std::optional<BoundResult> LowerBound1D::best_closed_form() const {
    std::optional<BoundResult> out;
    for (const BoundResult& b : branches) {
        if (b.source == BoundSource::char_numeric || b.source == BoundSource::trivial_zero) continue;
        if (!out || b.value > out->value) out = b;
    }
    return out;
}

const BoundResult* LowerBound1D::branch(BoundSource source) const {
    for (const BoundResult& b : branches)
        if (b.source == source) return &b;
    return nullptr;
}

LowerBound1D tv_lower_1d_detail(const Mixture1D& f, const Mixture1D& g, const GridSpec& grid) {
    LowerBound1D out{canonicalize_1d(f, g), {}, {}};
    const CanonicalPair1D& cp = out.pair;
    if (cp.identical()) {
        out.best = lower(0.0, BoundSource::trivial_zero, 0.0, std::nullopt);
        out.branches.push_back(out.best);
        return out;
    }

    if (auto r = lemma_large_gap(cp)) out.branches.push_back(*r);
    if (auto r = case1_bound(cp)) out.branches.push_back(*r);
    if (auto r = lemma_small_prec(cp)) out.branches.push_back(*r);

    if (grid.numeric || out.branches.empty()) {
        std::vector<double> ts = grid.points(cp.sigma());
        const std::vector<double> witnesses = proof_witness_points(cp);
        ts.insert(ts.end(), witnesses.begin(), witnesses.end());
        out.branches.push_back(char_tv_lower(cp, ts));
    }

    out.best = out.branches.front();
    for (const BoundResult& b : out.branches)
        if (b.value > out.best.value) out.best = b;
    return out;
}

BoundResult tv_lower_1d(const Mixture1D& f, const Mixture1D& g, const GridSpec& grid) {
    return tv_lower_1d_detail(f, g, grid).best;
}

double trig_fact_residual(TrigFact fact, double x, double y) {
    if (!(y >= 0.0 && y <= x + 1e-12 && x <= kPi / 4.0 + 1e-12))
        throw DomainError("trig facts hold only on 0 <= y <= x <= pi/4");
    switch (fact) {
        case TrigFact::I: return std::cos(x - y) - std::cos(x);
        case TrigFact::II:
            return -std::sin(x + y) + 2.0 * std::sin(x) - std::sin((x - y) / 2.0) * std::cos(y / 2.0);
        case TrigFact::III:
            return -1.0 - std::cos(x) + std::cos(y) + std::cos(x - y) - (x - y) * y / 2.0;
    }
    throw DomainError("unknown trig fact");
}

}  // namespace tvgap
