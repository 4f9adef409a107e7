// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "app/examples.hpp"
#include "app/report.hpp"
#include "app/verify.hpp"

#include "tvgap/bounds1d.hpp"
#include "tvgap/boundsnd.hpp"
#include "tvgap/oracles.hpp"

#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace tvgap;
using namespace tvgap::app;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " FAILED(" << what << ")";
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < budget_s, "runtime");
    if (!o.pass) ++failures;
    std::printf("%s %d %s [%.2fs / %.0fs]%s\n", o.pass ? "PASS" : "FAIL", id, name, secs, budget_s,
                o.detail.str().c_str());
    std::fflush(stdout);
}

std::pair<Mixture1D, Mixture1D> eq2(double u) { return {Mixture1D(-u, u, 1), Mixture1D(-2 * u, 2 * u, 1)}; }

std::pair<Mixture1D, Mixture1D> eq3(double eps) {
    return {Mixture1D(-0.5, 0.5, 1), Mixture1D(-(0.5 + eps), 0.5 + eps, 1)};
}

std::pair<MixtureND, MixtureND> highdim(double u) {
    const SpdMatrix id(Matrix::identity(3));
    return {MixtureND({-u, 0, 0}, {u, 0, 0}, id), MixtureND({-2 * u, 0, 0}, {2 * u, 0, 0}, id)};
}

double band(const McEstimate& e) { return mc_band(e); }

}  // namespace

int main() {
    criterion(1, "large-gap constant", 1, [](Outcome& o) {
        const Mixture1D f(0, 10, 1), g(3, 13, 1);
        const double lower = tv_lower_1d(f, g, GridSpec::closed_form_only()).value;
        const double tv = tv_oracle_1d(f, g, 1e-10);
        o.detail << " lower=" << lower << " oracle=" << tv;
        o.require(lower == 0.137, "lower == 0.137");
        o.require(tv >= 0.137, "oracle >= 0.137");
    });

    criterion(2, "quadratic scaling, +-u vs +-2u", 5, [](Outcome& o) {
        const double us[] = {0.05, 0.1, 0.2};
        double bound[3], oracle[3];
        for (int k = 0; k < 3; ++k) {
            const auto [f, g] = eq2(us[k]);
            const LowerBound1D lb = tv_lower_1d_detail(f, g, GridSpec::closed_form_only());
            const auto cf = lb.best_closed_form();
            o.require(cf && cf->source == BoundSource::case1_contained, "winning branch");
            bound[k] = lb.best.value;
            oracle[k] = tv_oracle_1d(f, g, 1e-10);
        }
        for (int k = 0; k < 2; ++k) {
            const double rb = bound[k + 1] / bound[k], ro = oracle[k + 1] / oracle[k];
            o.detail << " u=" << us[k] << ":bound_ratio=" << rb << ",oracle_ratio=" << ro;
            o.require(ratio_is(bound[k + 1], bound[k], 4.0), "bound ratio 4");
            o.require(ro >= 3.5 && ro <= 4.5, "oracle ratio");
        }
    });

    criterion(3, "linear-in-eps scaling, +-0.5 vs +-(0.5+eps)", 5, [](Outcome& o) {
        const double eps[] = {0.01, 0.02, 0.04};
        double bound[3];
        for (int k = 0; k < 3; ++k) {
            const auto [f, g] = eq3(eps[k]);
            bound[k] = tv_lower_1d(f, g).value;
        }
        for (int k = 0; k < 2; ++k) {
            const double r = bound[k + 1] / bound[k];
            o.detail << " eps=" << eps[k] << ":ratio=" << r;
            o.require(r >= 1.95 && r <= 2.05, "ratio in [1.95, 2.05]");
        }
    });

    criterion(4, "d = 3 tightness instance", 30, [](Outcome& o) {
        const double us[] = {0.1, 0.2};
        double closed[2];
        for (int k = 0; k < 2; ++k) {
            const auto [f, g] = highdim(us[k]);
            closed[k] = tv_lower_nd(f, g, 0, GridSpec::closed_form_only()).value;
            const double lower = tv_lower_nd(f, g, 0).value;
            const McEstimate mc = tv_oracle_nd(f, g, kDefaultMcSamples, RandomStream(0).split("mc_oracle").key());
            const double upper = tv_upper_bound(f, g).value;
            o.detail << " |u|=" << us[k] << ":lower=" << lower << ",mc=" << mc.value << "+-" << mc.std_error
                     << ",upper=" << upper;
            o.require(lower <= mc.value + 3 * mc.std_error, "lower <= mc + 3 se");
            o.require(mc.value + 3 * mc.std_error <= upper, "mc + 3 se <= upper");
        }
        o.detail << " closed_form_ratio=" << closed[1] / closed[0];
        o.require(ratio_is(closed[1], closed[0], 4.0), "closed-form ratio 4");
    });

    VerifyResult sweep;
    criterion(5, "soundness sweep (500 + 200 instances, seed 0)", 600, [&](Outcome& o) {
        VerifyOptions opts;
        opts.n_1d = 500;
        opts.n_nd = 200;
        opts.seed = 0;
        sweep = run_verify(opts);
        const char* names[] = {"lower_le_oracle",    "oracle_le_upper",    "char_le_oracle",
                               "hellinger_le_tv",    "branch_le_oracle",   "nd_lower_le_oracle",
                               "nd_oracle_le_upper", "nd_char_le_oracle",  "data_processing"};
        for (const char* n : names) {
            const CheckStat* c = sweep.check(n);
            o.require(c && c->checked > 0, std::string(n) + " ran");
            if (!c) continue;
            o.detail << " " << n << "=" << c->violations << "/" << c->checked;
            o.require(c->violations == 0, n);
        }
        o.require(sweep.violations == 0, "total violations");
        o.require(sweep.doc.value("errors", nlohmann::json::array()).empty(), "instance errors");
    });

    criterion(6, "trig facts on a 100 x 100 grid", 1, [](Outcome& o) {
        double worst = INFINITY;
        for (TrigFact fact : {TrigFact::I, TrigFact::II, TrigFact::III})
            for (int i = 0; i < 100; ++i)
                for (int j = 0; j < 100; ++j) {
                    const double x = std::numbers::pi / 4 * i / 99.0;
                    const double y = x * j / 99.0;
                    worst = std::min(worst, trig_fact_residual(fact, x, y));
                }
        o.detail << " worst_residual=" << worst;
        o.require(worst >= -1e-12, "residual >= -1e-12");
    });

    criterion(7, "witness validity across the sweep", 600, [&](Outcome& o) {
        for (const char* n : {"small_prec_witness_c", "direction_z_norm", "direction_z_floor"}) {
            const CheckStat* c = sweep.check(n);
            o.require(c && c->checked > 0, std::string(n) + " ran");
            if (!c) continue;
            o.detail << " " << n << "=" << c->violations << "/" << c->checked;
            o.require(c->violations == 0, n);
        }
    });

    criterion(8, "moment statistic on +-0.1 vs +-0.2", 1, [](Outcome& o) {
        const auto [f, g] = eq2(0.1);
        const double m = moment_distance(f, g);
        o.detail << " moment_distance=" << m;
        o.require(std::abs(m - 9e-4) <= 8 * std::numeric_limits<double>::epsilon() * 9e-4, "9 u^4");
    });

    criterion(9, "cross-oracle and invariance (100 instances each)", 300, [](Outcome& o) {
        const int n = 100;
        RandomStream s(9);
        int cross = 0, affine = 0, white = 0;
        for (int i = 0; i < n; ++i) {
            const auto [f, g] = testutil::random_pair_1d(s);
            const double q = tv_oracle_1d(f, g, 1e-10);
            const McEstimate mc = tv_oracle_nd(f, g, kDefaultMcSamples, s.next_u64());
            if (std::abs(q - mc.value) > band(mc)) ++cross;

            const double a = std::exp(s.uniform(-1, 1)), b = s.uniform(-50, 50);
            const auto map = [&](const Mixture1D& m) { return Mixture1D(a * m.mu0 + b, a * m.mu1 + b, a * m.sigma); };
            if (std::abs(tv_oracle_1d(map(f), map(g), 1e-10) - q) > 2e-10) ++affine;
        }
        // Family-wise 99.73% over the n comparisons (Bonferroni).
        const double z_family = normal_quantile(1 - 0.0027 / (2.0 * n));
        int white_3se = 0;
        const RandomStream root(9);
        for (int i = 0; i < n; ++i) {
            const auto [f, g] = verify_instance_nd(root, std::size_t(i));
            const auto [wf, wg] = whiten(f, g);
            const McEstimate x = tv_oracle_nd(f, g, kDefaultMcSamples, root.split("raw").split(std::uint64_t(i)).key());
            const McEstimate y = tv_oracle_nd(wf, wg, kDefaultMcSamples, root.split("white").split(std::uint64_t(i)).key());
            const double se = std::hypot(x.std_error, y.std_error), res = 6.0 / double(kDefaultMcSamples);
            if (std::abs(x.value - y.value) > z_family * se + res) ++white;
            if (std::abs(x.value - y.value) > 3 * se + res) ++white_3se;
        }
        o.detail << " cross_misses=" << cross << "/" << n << " affine_misses=" << affine << "/" << n
                 << " whitening_misses=" << white << "/" << n << " (z=" << z_family
                 << "; per-instance 3se misses=" << white_3se << ")";
        o.require(cross == 0, "cross-oracle");
        o.require(affine == 0, "affine invariance");
        o.require(white == 0, "whitening invariance");
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
