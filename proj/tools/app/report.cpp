#include "report.hpp"

#include "tvgap/rng.hpp"

#include <algorithm>
#include <cstdio>

namespace tvgap::app {

using nlohmann::json;

json to_json(const BoundResult& r, std::string_view operation, json params) {
    json j;
    j["operation"] = operation;
    j["params"] = std::move(params);
    j["value"] = r.value;
    j["raw_value"] = r.raw_value;
    j["kind"] = to_string(r.kind);
    j["source"] = to_string(r.source);
    j["constant_used"] = r.constant_used;
    j["witness_t"] = r.witness_t ? json(*r.witness_t) : json(nullptr);
    j["witness_direction"] = r.witness_direction ? json(*r.witness_direction) : json(nullptr);
    return j;
}

json to_json(const GridSpec& grid) {
    return {{"count", grid.count}, {"lo", grid.lo}, {"hi", grid.hi}, {"extra", grid.extra},
            {"numeric", grid.numeric}, {"units", "1/sigma"}};
}

json to_json(const McEstimate& e, std::string_view operation) {
    return {{"operation", operation}, {"value", e.value}, {"std_error", e.std_error},
            {"n_samples", e.n_samples}, {"seed", e.seed}};
}

json to_json(const Mixture1D& m) { return {{"mu0", m.mu0}, {"mu1", m.mu1}, {"sigma", m.sigma}}; }

double mc_band(const McEstimate& e) { return 3.0 * e.std_error + 6.0 / static_cast<double>(e.n_samples); }

Sandwich check_sandwich(double lower, double oracle, double upper, double tol) {
    Sandwich s;
    s.lower_ok = lower <= oracle + tol;
    s.upper_ok = oracle - tol <= upper;
    s.slack = std::min(oracle + tol - lower, upper + tol - oracle);
    return s;
}

json report_header(std::string_view command, std::uint64_t seed) {
    return {{"schema_version", kSchemaVersion}, {"command", command}, {"seed", seed}};
}

namespace {

BoundReport bound_1d(const PairSpec& spec, const BoundOptions& opts, json doc) {
    const auto [f, g] = spec.mixtures_1d();
    const LowerBound1D lb = tv_lower_1d_detail(f, g, opts.grid);
    const json grid = {{"grid", to_json(opts.grid)}};

    doc["lower"] = to_json(lb.best, "tv_lower_1d", grid);
    json branches = json::array();
    for (const BoundResult& b : lb.branches) branches.push_back(to_json(b, "tv_lower_1d.branch", json::object()));
    doc["lower_branches"] = branches;
    if (auto cf = lb.best_closed_form()) doc["closed_form_lower"] = to_json(*cf, "tv_lower_1d.closed_form");
    else doc["closed_form_lower"] = nullptr;

    const BoundResult up = tv_upper_bound(f, g);
    doc["upper"] = to_json(up, "tv_upper_bound");
    doc["moment_distance"] = {{"operation", "moment_distance"}, {"value", moment_distance(f, g)}};

    BoundReport out;
    if (opts.oracle) {
        const double tv = tv_oracle_1d(f, g, opts.quad_tol);
        const double h2 = hellinger_sq_oracle_1d(f, g, opts.quad_tol);
        doc["oracle"] = {{"operation", "tv_oracle_1d"}, {"params", {{"tol", opts.quad_tol}}}, {"value", tv}};
        doc["hellinger_sq"] = {{"operation", "hellinger_sq_oracle_1d"}, {"params", {{"tol", opts.quad_tol}}},
                               {"value", h2}};
        const Sandwich sw = check_sandwich(lb.best.value, tv, up.value, opts.quad_tol);
        out.violation = !sw.pass();
        doc["sandwich"] = {{"tolerance", opts.quad_tol},
                           {"lower_le_oracle", sw.lower_ok},
                           {"oracle_le_upper", sw.upper_ok},
                           {"slack", sw.slack},
                           {"pass", sw.pass()}};
    } else {
        doc["oracle"] = nullptr;
        const bool ok = lb.best.value <= up.value;
        out.violation = !ok;
        doc["sandwich"] = {{"tolerance", 0.0}, {"lower_le_upper", ok}, {"pass", ok}};
    }
    out.doc = std::move(doc);
    return out;
}

BoundReport bound_nd(const PairSpec& spec, const BoundOptions& opts, json doc) {
    const auto [f, g] = spec.mixtures_nd();
    const RandomStream root(opts.seed);
    const std::uint64_t lower_seed = root.split("lower_nd").key();
    const LowerBoundND lb = tv_lower_nd_detail(f, g, lower_seed, opts.grid);

    doc["lower"] = to_json(lb.best, "tv_lower_nd", {{"seed", lower_seed}, {"grid", to_json(opts.grid)}});
    json cands = json::array();
    for (std::size_t k = 0; k < lb.candidates.size(); ++k) {
        const ProjectionCandidate& c = lb.candidates[k];
        cands.push_back({{"construction", to_string(c.witness.construction)},
                         {"direction", c.witness.direction},
                         {"projected_f", to_json(c.witness.f)},
                         {"projected_g", to_json(c.witness.g)},
                         {"bound", to_json(c.bound.best, "tv_lower_1d")},
                         {"winner", lb.winner && *lb.winner == k}});
    }
    doc["lower_candidates"] = cands;
    const NdDiagnostics& dg = lb.diagnostics;
    doc["diagnostics"] = {{"v1_norm", dg.v1_norm},
                          {"v2_norm", dg.v2_norm},
                          {"v3_norm", dg.v3_norm},
                          {"lambda", dg.lambda},
                          {"first_regime", dg.first_regime},
                          {"first_expression", dg.first_expression},
                          {"second_expression", dg.second_expression},
                          {"certified", false}};

    const BoundResult up = tv_upper_bound(f, g);
    doc["upper"] = to_json(up, "tv_upper_bound");
    doc["moment_distance"] = {{"operation", "moment_distance"}, {"value", moment_distance(f, g)}};

    BoundReport out;
    if (opts.oracle) {
        const std::uint64_t mc_seed = root.split("mc_oracle").key();
        const McEstimate mc = tv_oracle_nd(f, g, opts.mc_samples, mc_seed, opts.workers);
        doc["oracle"] = to_json(mc, "tv_oracle_nd");
        const double band = mc_band(mc);
        const Sandwich sw = check_sandwich(lb.best.value, mc.value, up.value, band);
        out.violation = !sw.pass();
        doc["sandwich"] = {{"tolerance", band},
                           {"tolerance_rule", "3 * std_error + 6 / n_samples"},
                           {"lower_le_oracle", sw.lower_ok},
                           {"oracle_le_upper", sw.upper_ok},
                           {"slack", sw.slack},
                           {"pass", sw.pass()}};
    } else {
        doc["oracle"] = nullptr;
        const bool ok = lb.best.value <= up.value;
        out.violation = !ok;
        doc["sandwich"] = {{"tolerance", 0.0}, {"lower_le_upper", ok}, {"pass", ok}};
    }
    out.doc = std::move(doc);
    return out;
}

}  // namespace

BoundReport run_bound(const PairSpec& spec, const BoundOptions& opts) {
    json doc = report_header("bound", opts.seed);
    doc["input"] = to_json(spec);
    doc["options"] = {{"mc_samples", opts.mc_samples}, {"quad_tol", opts.quad_tol}, {"oracle", opts.oracle}};
    return spec.d == 1 ? bound_1d(spec, opts, std::move(doc)) : bound_nd(spec, opts, std::move(doc));
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace tvgap::app
