#include "verify.hpp"

#include "tvgap/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <map>
#include <numbers>

namespace tvgap::app {

using nlohmann::json;

namespace {

struct Observation {
    std::string check;
    double lhs;
    double rhs;
};

struct InstanceOutcome {
    std::string id;
    std::vector<Observation> obs;
    double sandwich_slack = std::numeric_limits<double>::infinity();
    std::exception_ptr error;
};

double log_uniform(RandomStream& s, double lo, double hi) {
    return std::exp(s.uniform(std::log(lo), std::log(hi)));
}

double signed_unit(RandomStream& s) { return s.coin() ? 1.0 : -1.0; }

constexpr double kPi = std::numbers::pi;

void check_witness_c(const CanonicalPair1D& cp, std::vector<Observation>& obs) {
    if (auto c = small_prec_witness_c(cp)) {
        obs.push_back({"small_prec_witness_c", 25.0 / (kPi * kPi), *c});
        obs.push_back({"small_prec_witness_c", *c, 80.0 / (kPi * kPi)});
    }
}

InstanceOutcome check_1d(const RandomStream& root, std::size_t i, const VerifyOptions& opts) {
    InstanceOutcome out;
    out.id = "1d/" + std::to_string(i);
    const auto [f, g] = verify_instance_1d(root, i);
    const double tol = opts.quad_tol;

    const LowerBound1D lb = tv_lower_1d_detail(f, g);
    const double tv = tv_oracle_1d(f, g, tol);
    const double up = tv_upper_bound(f, g).value;
    const double h2 = hellinger_sq_oracle_1d(f, g, tol);
    const BoundResult* numeric = lb.branch(BoundSource::char_numeric);

    out.obs.push_back({"lower_le_oracle", lb.best.value, tv + tol});
    out.obs.push_back({"oracle_le_upper", tv, up + tol});
    if (numeric) out.obs.push_back({"char_le_oracle", numeric->value, tv + tol});
    out.obs.push_back({"hellinger_le_tv", h2, tv + 2.0 * tol});
    for (const BoundResult& b : lb.branches) out.obs.push_back({"branch_le_oracle", b.value, tv + tol});

    // Relabelings must not move the bound.
    const double v = lb.best.value;
    for (const auto& [p, q] : {std::pair{g, f}, std::pair{Mixture1D(f.mu1, f.mu0, f.sigma), g},
                               std::pair{f, Mixture1D(g.mu1, g.mu0, g.sigma)}}) {
        const double w = tv_lower_1d(p, q).value;
        out.obs.push_back({"relabel_invariance", std::abs(w - v), 0.0});
    }
    check_witness_c(lb.pair, out.obs);
    out.sandwich_slack = std::min(tv + tol - lb.best.value, up + tol - tv);
    return out;
}

InstanceOutcome check_nd(const RandomStream& root, std::size_t i, const VerifyOptions& opts) {
    InstanceOutcome out;
    out.id = "nd/" + std::to_string(i);
    const auto [f, g] = verify_instance_nd(root, i);
    const RandomStream s = root.split("verify_nd").split(static_cast<std::uint64_t>(i));
    const std::uint64_t lower_seed = s.split("lower_nd").key();

    const LowerBoundND lb = tv_lower_nd_detail(f, g, lower_seed);
    const McEstimate mc = tv_oracle_nd(f, g, opts.mc_samples, s.split("mc_oracle").key(), 1);
    const double band = mc_band(mc);
    const double up = tv_upper_bound(f, g).value;

    out.obs.push_back({"nd_lower_le_oracle", lb.best.value, mc.value + band});
    out.obs.push_back({"nd_oracle_le_upper", mc.value - band, up});
    for (const ProjectionCandidate& c : lb.candidates) {
        const BoundResult* numeric = c.bound.branch(BoundSource::char_numeric);
        if (numeric) out.obs.push_back({"nd_char_le_oracle", numeric->value, mc.value + band});
        check_witness_c(c.bound.pair, out.obs);
    }

    RandomStream dirs = s.split("projections");
    for (int k = 0; k < opts.projections; ++k) {
        Vector t(f.dim());
        for (double& x : t) x = dirs.normal();
        const ProjectionWitness w = project(f, g, t);
        out.obs.push_back(
            {"data_processing", tv_oracle_1d(w.f, w.g, opts.quad_tol), mc.value + band + opts.quad_tol});
    }

    if (lb.candidate(DirectionConstruction::random_z)) {
        const Vector z = sample_direction_z(lb.directions, direction_z_seed(lower_seed));
        out.obs.push_back({"direction_z_norm", linalg::norm2(z), 10.0});
        for (const Vector* v : {&lb.directions.v1, &lb.directions.v2, &lb.directions.v3}) {
            const double n = linalg::norm2(*v);
            if (n >= linalg::default_tolerances().zero_abs)
                out.obs.push_back({"direction_z_floor", n / 6.0, std::abs(linalg::dot(z, *v))});
        }
    }
    out.sandwich_slack = std::min(mc.value + band - lb.best.value, up + band - mc.value);
    return out;
}

Matrix random_spd(RandomStream& s, std::size_t d) {
    std::vector<Vector> raw(d, Vector(d));
    for (Vector& v : raw)
        for (double& x : v) x = s.normal();
    std::vector<Vector> q = linalg::orthonormal_basis(raw);
    // Gaussian draws are linearly dependent with probability zero; keep a
    // deterministic completion anyway.
    for (std::size_t k = 0; q.size() < d; ++k) {
        raw.push_back(Vector(d, 0.0));
        raw.back()[k % d] = 1.0;
        q = linalg::orthonormal_basis(raw);
    }
    Vector lambda(d);
    for (double& l : lambda) l = std::pow(10.0, s.uniform(0.0, 2.0));
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += q[k][i] * lambda[k] * q[k][j];
            m(i, j) = m(j, i) = acc;
        }
    return m;
}

}  // namespace

std::pair<Mixture1D, Mixture1D> verify_instance_1d(const RandomStream& root, std::size_t i) {
    RandomStream s = root.split("verify_1d").split(static_cast<std::uint64_t>(i));
    const double sigma = log_uniform(s, 0.25, 4.0);
    const double base = s.uniform(-20.0, 20.0) * sigma;
    double a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    switch (i % 4) {
        case 0:
            a0 = base;
            a1 = s.uniform(-20.0, 20.0) * sigma;
            b0 = s.uniform(-20.0, 20.0) * sigma;
            b1 = s.uniform(-20.0, 20.0) * sigma;
            break;
        case 1: {
            a0 = base;
            a1 = base + s.uniform(0.0, 20.0) * sigma;
            const double scale = std::pow(10.0, s.uniform(-3.0, 0.0)) * sigma;
            b0 = a0 + s.uniform(-1.0, 1.0) * scale;
            b1 = a1 + s.uniform(-1.0, 1.0) * scale;
            break;
        }
        case 2:
            a0 = base;
            a1 = base + s.uniform(0.0, 20.0) * sigma;
            b0 = a0 + signed_unit(s) * s.uniform(2.0, 10.0) * sigma;
            b1 = a1 + s.uniform(-10.0, 10.0) * sigma;
            break;
        default: {
            a0 = base;
            a1 = base + s.uniform(100.0, 150.0) * sigma;
            const double scale = std::pow(10.0, s.uniform(-2.0, 0.0)) * 2.0 * sigma;
            b0 = a0 + s.uniform(-1.0, 1.0) * scale;
            b1 = a1 + s.uniform(-1.0, 1.0) * scale;
            break;
        }
    }
    // Random labels so canonicalization is exercised.
    if (s.coin()) std::swap(a0, a1);
    if (s.coin()) std::swap(b0, b1);
    Mixture1D f(a0, a1, sigma), g(b0, b1, sigma);
    if (s.coin()) std::swap(f, g);
    return {f, g};
}

std::pair<MixtureND, MixtureND> verify_instance_nd(const RandomStream& root, std::size_t i) {
    constexpr std::array<std::size_t, 3> dims{2, 3, 5};
    const std::size_t d = dims[i % 3];
    RandomStream s = root.split("verify_nd").split(static_cast<std::uint64_t>(i)).split("instance");
    const SpdMatrix sigma(random_spd(s, d));
    const Matrix& l = sigma.cholesky_factor();

    // Offsets are drawn in whitened units and mapped through the Cholesky
    // factor, so "scale" is measured in standard deviations.
    const auto colour = [&](const Vector& w) { return linalg::multiply(l, w); };
    const auto draw = [&](double lo, double hi) {
        Vector w(d);
        for (double& x : w) x = s.uniform(lo, hi);
        return w;
    };
    const auto add = [](Vector a, const Vector& b) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
        return a;
    };

    Vector a0, a1, b0, b1;
    switch ((i / 3) % 3) {
        case 0:
            a0 = colour(draw(-20, 20));
            a1 = colour(draw(-20, 20));
            b0 = colour(draw(-20, 20));
            b1 = colour(draw(-20, 20));
            break;
        case 1: {
            const double scale = std::pow(10.0, s.uniform(-2.0, 0.5));
            a0 = colour(draw(-3, 3));
            a1 = add(a0, colour(draw(-5, 5)));
            b0 = add(a0, colour(draw(-scale, scale)));
            b1 = add(a1, colour(draw(-scale, scale)));
            break;
        }
        default:
            a0 = colour(draw(-2, 2));
            a1 = colour(draw(-2, 2));
            b0 = colour(draw(-2, 2));
            b1 = colour(draw(-2, 2));
            break;
    }
    return {MixtureND(a0, a1, sigma), MixtureND(b0, b1, sigma)};
}

const CheckStat* VerifyResult::check(std::string_view name) const {
    for (const CheckStat& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerifyResult run_verify(const VerifyOptions& opts) {
    if (opts.n_1d < 1 || opts.n_nd < 1) throw InputError("verify: counts must be at least 1");
    const RandomStream root(opts.seed);
    const std::size_t total = opts.n_1d + opts.n_nd;
    std::vector<InstanceOutcome> outcomes(total);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < total; ++k) {
        try {
            outcomes[k] = k < opts.n_1d ? check_1d(root, k, opts) : check_nd(root, k - opts.n_1d, opts);
        } catch (...) {
            outcomes[k].id = k < opts.n_1d ? "1d/" + std::to_string(k) : "nd/" + std::to_string(k - opts.n_1d);
            outcomes[k].error = std::current_exception();
        }
    }

    VerifyResult res;
    std::map<std::string, std::size_t> index;
    json failures = json::array();
    json errors = json::array();
    double worst_slack = std::numeric_limits<double>::infinity();
    std::string worst_slack_id;

    for (const InstanceOutcome& o : outcomes) {
        if (o.error) {
            try {
                std::rethrow_exception(o.error);
            } catch (const std::exception& e) {
                errors.push_back({{"instance", o.id}, {"error", e.what()}});
            }
            ++res.violations;
            continue;
        }
        if (o.sandwich_slack < worst_slack) {
            worst_slack = o.sandwich_slack;
            worst_slack_id = o.id;
        }
        for (const Observation& ob : o.obs) {
            auto [it, fresh] = index.try_emplace(ob.check, res.checks.size());
            if (fresh) res.checks.push_back(CheckStat{ob.check});
            CheckStat& c = res.checks[it->second];
            const double margin = ob.rhs - ob.lhs;
            ++c.checked;
            if (margin < c.worst_margin) {
                c.worst_margin = margin;
                c.worst_instance = o.id;
            }
            if (!(margin >= 0.0)) {
                ++c.violations;
                ++res.violations;
                failures.push_back({{"instance", o.id}, {"check", ob.check}, {"lhs", ob.lhs}, {"rhs", ob.rhs}});
            }
        }
    }

    json doc = report_header("verify", opts.seed);
    doc["options"] = {{"n_1d", opts.n_1d},
                      {"n_nd", opts.n_nd},
                      {"quad_tol", opts.quad_tol},
                      {"mc_samples", opts.mc_samples},
                      {"projections", opts.projections},
                      {"mc_band", "3 * std_error + 6 / n_samples"}};
    doc["generator"] = {
        {"sigma_1d", "log-uniform in [0.25, 4]"},
        {"kinds_1d", {"means uniform in [-20, 20] sigma", "shifts below sigma within 20 sigma",
                      "matched gap of 2 to 10 sigma", "components 100 to 150 sigma apart, shifts below 2 sigma"}},
        {"dims_nd", {2, 3, 5}},
        {"sigma_nd", "Q diag(10^U(0,2)) Q^T, condition number <= 100"},
        {"kinds_nd", {"whitened means uniform in [-20, 20]", "small perturbations of a random pair",
                      "whitened means uniform in [-2, 2]"}}};
    json checks = json::array();
    for (const CheckStat& c : res.checks)
        checks.push_back({{"name", c.name},
                          {"checked", c.checked},
                          {"violations", c.violations},
                          {"worst_margin", c.worst_margin},
                          {"worst_instance", c.worst_instance}});
    doc["checks"] = checks;
    doc["worst_sandwich_slack"] = {{"value", worst_slack}, {"instance", worst_slack_id}};
    doc["failures"] = failures;
    doc["errors"] = errors;
    doc["violations"] = res.violations;
    doc["pass"] = res.violations == 0;
    res.doc = std::move(doc);
    return res;
}

}  // namespace tvgap::app
