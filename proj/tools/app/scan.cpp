#include "scan.hpp"

#include "report.hpp"

#include "tvgap/rng.hpp"

#include <charconv>
#include <cmath>

namespace tvgap::app {

std::optional<ScanFamily> parse_family(std::string_view name) {
    if (name == "eq2") return ScanFamily::eq2;
    if (name == "eq3") return ScanFamily::eq3;
    if (name == "highdim") return ScanFamily::highdim;
    return std::nullopt;
}

std::vector<double> parse_grid(std::string_view text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        std::string item(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        item = first == std::string::npos ? "" : item.substr(first, last - first + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v))
            throw InputError("grid: '" + item + "' is not a finite number");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

void run_scan(ScanFamily family, const std::vector<double>& grid, std::uint64_t seed, std::ostream& out) {
    out << "family,param,closed_form_lower,closed_form_source,numeric_lower,lower,lower_source,"
           "oracle,oracle_std_error,upper,moment_distance,reference_scaling\n";
    const std::string name = family == ScanFamily::eq2 ? "eq2" : family == ScanFamily::eq3 ? "eq3" : "highdim";
    const RandomStream root(seed);

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double p = grid[k];
        if (p < 0.0) throw InputError("grid: values must be non-negative");
        double cf = 0.0, numeric = 0.0, lower = 0.0, oracle = 0.0, se = 0.0, upper = 0.0, md = 0.0, ref = 0.0;
        std::string cf_source = "none", lower_source;

        if (family == ScanFamily::highdim) {
            const SpdMatrix id(Matrix::identity(3));
            const MixtureND f({p, 0, 0}, {-p, 0, 0}, id), g({2 * p, 0, 0}, {-2 * p, 0, 0}, id);
            const RandomStream s = root.split("scan").split(static_cast<std::uint64_t>(k));
            const LowerBoundND lb = tv_lower_nd_detail(f, g, s.split("lower_nd").key());
            lower = lb.best.value;
            lower_source = std::string(to_string(lb.best.source));
            if (lb.winner) {
                const LowerBound1D& w = lb.candidates[*lb.winner].bound;
                if (auto c = w.best_closed_form()) {
                    cf = c->value;
                    cf_source = std::string(to_string(c->source));
                }
                if (const BoundResult* n = w.branch(BoundSource::char_numeric)) numeric = n->value;
                lower_source = std::string(to_string(w.best.source));
            }
            const McEstimate mc = tv_oracle_nd(f, g, kDefaultMcSamples, s.split("mc_oracle").key());
            oracle = mc.value;
            se = mc.std_error;
            upper = tv_upper_bound(f, g).value;
            md = moment_distance(f, g);
            ref = std::pow(p, 4);
        } else {
            const double u = family == ScanFamily::eq2 ? p : kEq3U;
            const double v = family == ScanFamily::eq2 ? 2.0 * p : kEq3U + p;
            const Mixture1D f(-u, u, 1.0), g(-v, v, 1.0);
            const LowerBound1D lb = tv_lower_1d_detail(f, g);
            if (auto c = lb.best_closed_form()) {
                cf = c->value;
                cf_source = std::string(to_string(c->source));
            }
            if (const BoundResult* n = lb.branch(BoundSource::char_numeric)) numeric = n->value;
            lower = lb.best.value;
            lower_source = std::string(to_string(lb.best.source));
            oracle = tv_oracle_1d(f, g);
            upper = tv_upper_bound(f, g).value;
            md = moment_distance(f, g);
            ref = family == ScanFamily::eq2 ? std::pow(p, 4) : p * p;
        }
        out << name << ',' << format_double(p) << ',' << format_double(cf) << ',' << cf_source << ','
            << format_double(numeric) << ',' << format_double(lower) << ',' << lower_source << ','
            << format_double(oracle) << ',' << format_double(se) << ',' << format_double(upper) << ','
            << format_double(md) << ',' << format_double(ref) << '\n';
    }
}

}  // namespace tvgap::app
