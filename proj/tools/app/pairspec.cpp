#include "pairspec.hpp"

#include "tvgap/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace tvgap::app {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw InputError(field + ": " + what);
}

std::string location(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double read_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(field, "number is not finite");
    return v;
}

Vector read_vector(const json& obj, const std::string& parent, const char* key, std::size_t d) {
    const std::string field = parent + "." + key;
    if (!obj.contains(key)) fail(field, "missing");
    const json& arr = obj.at(key);
    if (!arr.is_array()) fail(field, "expected an array of " + std::to_string(d) + " numbers");
    if (arr.size() != d)
        fail(field, "expected " + std::to_string(d) + " entries, found " + std::to_string(arr.size()));
    Vector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = read_number(arr[i], field + "[" + std::to_string(i) + "]");
    return v;
}

json vector_json(const Vector& v) { return json(v); }

}  // namespace

PairSpec parse_pair_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError("invalid JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    if (!doc.is_object()) fail("<root>", "expected an object");

    PairSpec spec;
    if (!doc.contains("d")) fail("d", "missing");
    const json& d = doc.at("d");
    if (!d.is_number_integer() || d.get<long long>() < 1) fail("d", "expected a positive integer");
    spec.d = static_cast<std::size_t>(d.get<long long>());

    for (const char* key : {"mixture_a", "mixture_b"})
        if (!doc.contains(key) || !doc.at(key).is_object()) fail(key, "expected an object with mu0 and mu1");
    spec.a_mu0 = read_vector(doc.at("mixture_a"), "mixture_a", "mu0", spec.d);
    spec.a_mu1 = read_vector(doc.at("mixture_a"), "mixture_a", "mu1", spec.d);
    spec.b_mu0 = read_vector(doc.at("mixture_b"), "mixture_b", "mu0", spec.d);
    spec.b_mu1 = read_vector(doc.at("mixture_b"), "mixture_b", "mu1", spec.d);

    if (!doc.contains("sigma")) fail("sigma", "missing");
    const json& s = doc.at("sigma");
    if (s.is_number()) {
        if (spec.d != 1) fail("sigma", "a scalar sigma is only allowed when d = 1");
        const double sd = read_number(s, "sigma");
        if (!(sd > 0.0)) fail("sigma", "standard deviation must be positive");
        spec.sigma_scalar = sd;
        spec.covariance = Matrix::diagonal(Vector{sd * sd});
    } else if (s.is_array()) {
        if (s.size() != spec.d) fail("sigma", "expected " + std::to_string(spec.d) + " rows");
        spec.covariance = Matrix(spec.d, spec.d);
        for (std::size_t i = 0; i < spec.d; ++i) {
            const std::string row = "sigma[" + std::to_string(i) + "]";
            if (!s[i].is_array() || s[i].size() != spec.d)
                fail(row, "expected " + std::to_string(spec.d) + " entries");
            for (std::size_t j = 0; j < spec.d; ++j)
                spec.covariance(i, j) = read_number(s[i][j], row + "[" + std::to_string(j) + "]");
        }
        try {
            SpdMatrix check(spec.covariance);
        } catch (const Error& e) {
            fail("sigma", e.what());
        }
    } else {
        fail("sigma", "expected a d x d array (or a number when d = 1)");
    }

    if (doc.contains("label")) {
        if (!doc.at("label").is_string()) fail("label", "expected a string");
        spec.label = doc.at("label").get<std::string>();
    }
    return spec;
}

PairSpec load_pair_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pair_spec(buf.str());
}

json to_json(const PairSpec& spec) {
    json doc;
    doc["d"] = spec.d;
    if (spec.label) doc["label"] = *spec.label;
    doc["mixture_a"] = {{"mu0", vector_json(spec.a_mu0)}, {"mu1", vector_json(spec.a_mu1)}};
    doc["mixture_b"] = {{"mu0", vector_json(spec.b_mu0)}, {"mu1", vector_json(spec.b_mu1)}};
    if (spec.sigma_scalar) {
        doc["sigma"] = *spec.sigma_scalar;
    } else {
        json rows = json::array();
        for (std::size_t i = 0; i < spec.covariance.rows(); ++i) {
            const auto r = spec.covariance.row(i);
            rows.push_back(Vector(r.begin(), r.end()));
        }
        doc["sigma"] = rows;
    }
    return doc;
}

std::string dump_pair_spec(const PairSpec& spec) { return to_json(spec).dump(2) + "\n"; }

std::pair<Mixture1D, Mixture1D> PairSpec::mixtures_1d() const {
    if (d != 1) throw InputError("d: expected 1 for a one-dimensional pair");
    const double sd = sigma_scalar ? *sigma_scalar : std::sqrt(covariance(0, 0));
    try {
        return {Mixture1D(a_mu0[0], a_mu1[0], sd), Mixture1D(b_mu0[0], b_mu1[0], sd)};
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

std::pair<MixtureND, MixtureND> PairSpec::mixtures_nd() const {
    try {
        const SpdMatrix s(covariance);
        return {MixtureND(a_mu0, a_mu1, s), MixtureND(b_mu0, b_mu1, s)};
    } catch (const Error& e) {
        throw InputError(std::string("sigma: ") + e.what());
    }
}

PairSpec make_pair_spec(const Mixture1D& f, const Mixture1D& g, std::optional<std::string> label) {
    require_shared_sigma(f, g);
    PairSpec spec;
    spec.d = 1;
    spec.a_mu0 = {f.mu0};
    spec.a_mu1 = {f.mu1};
    spec.b_mu0 = {g.mu0};
    spec.b_mu1 = {g.mu1};
    spec.sigma_scalar = f.sigma;
    spec.covariance = Matrix::diagonal(Vector{f.sigma * f.sigma});
    spec.label = std::move(label);
    return spec;
}

PairSpec make_pair_spec(const MixtureND& f, const MixtureND& g, std::optional<std::string> label) {
    require_shared_sigma(f, g);
    PairSpec spec;
    spec.d = f.dim();
    spec.a_mu0 = f.mu0;
    spec.a_mu1 = f.mu1;
    spec.b_mu0 = g.mu0;
    spec.b_mu1 = g.mu1;
    spec.covariance = f.sigma.matrix();
    spec.label = std::move(label);
    return spec;
}

}  // namespace tvgap::app
