#include "app/examples.hpp"
#include "app/pairspec.hpp"
#include "app/report.hpp"
#include "app/scan.hpp"
#include "app/verify.hpp"

#include "tvgap/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using namespace tvgap;
using namespace tvgap::app;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    const char* env = std::getenv("TVGAP_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        const std::string s(env);
        if (s.front() == '-') throw std::invalid_argument("negative");
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("TVGAP_SEED: '") + env + "' is not a non-negative integer");
    }
}

void print(const nlohmann::json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified bounds on the total variation distance between two-component Gaussian mixtures"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;

    auto* bound = app.add_subcommand("bound", "bounds and oracles for one mixture pair");
    std::string input;
    BoundOptions bopts;
    bool no_oracle = false;
    bound->add_option("--input", input, "pair spec (JSON)")->required();
    bound->add_option("--seed", seed, "top-level seed (default: TVGAP_SEED or 0)");
    bound->add_option("--mc-samples", bopts.mc_samples, "Monte Carlo sample count")->check(CLI::Range(std::size_t{10000}, std::size_t{1} << 40));
    bound->add_option("--quad-tol", bopts.quad_tol, "quadrature absolute tolerance")->check(CLI::PositiveNumber);
    bound->add_flag("--no-oracle", no_oracle, "skip the quadrature / Monte Carlo oracles");

    auto* examples = app.add_subcommand("paper-examples", "reproduce the worked examples");
    examples->add_option("--seed", seed, "top-level seed");

    auto* verify = app.add_subcommand("verify", "randomized soundness sweep");
    VerifyOptions vopts;
    verify->add_option("--n-1d", vopts.n_1d, "one-dimensional instances")->check(CLI::PositiveNumber);
    verify->add_option("--n-nd", vopts.n_nd, "d-dimensional instances")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "top-level seed");

    auto* scan = app.add_subcommand("scan", "tabulate a parametric family as CSV");
    std::string family, grid;
    scan->add_option("--family", family, "eq2 | eq3 | highdim")->required();
    scan->add_option("--grid", grid, "comma separated parameter values")->required();
    scan->add_option("--seed", seed, "top-level seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*bound) {
            bopts.seed = resolve_seed(seed);
            bopts.oracle = !no_oracle;
            const BoundReport r = run_bound(load_pair_spec(input), bopts);
            print(r.doc);
            return r.violation ? kExitViolation : kExitOk;
        }
        if (*examples) {
            const ExamplesResult r = run_paper_examples(resolve_seed(seed));
            print(r.doc);
            return r.pass ? kExitOk : kExitViolation;
        }
        if (*verify) {
            vopts.seed = resolve_seed(seed);
            const VerifyResult r = run_verify(vopts);
            print(r.doc);
            return r.violations == 0 ? kExitOk : kExitViolation;
        }
        if (*scan) {
            const auto fam = parse_family(family);
            if (!fam) throw InputError("family: expected eq2, eq3 or highdim, got '" + family + "'");
            run_scan(*fam, parse_grid(grid), resolve_seed(seed), std::cout);
            return kExitOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    }
    return kExitInput;
}
