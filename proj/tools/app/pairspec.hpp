#pragma once

#include "tvgap/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace tvgap::app {

/// Malformed or invalid user input. Maps to exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// On-disk description of a mixture pair.
///
///   {"d": 2, "label": "...",
///    "mixture_a": {"mu0": [..], "mu1": [..]},
///    "mixture_b": {"mu0": [..], "mu1": [..]},
///    "sigma": [[..], [..]]}
///
/// For d = 1, "sigma" may be a bare number, read as a standard deviation.
/// A 1x1 array is always a covariance.
struct PairSpec {
    std::size_t d = 1;
    Vector a_mu0, a_mu1, b_mu0, b_mu1;
    Matrix covariance;
    std::optional<double> sigma_scalar;
    std::optional<std::string> label;

    std::pair<Mixture1D, Mixture1D> mixtures_1d() const;
    std::pair<MixtureND, MixtureND> mixtures_nd() const;
};

PairSpec parse_pair_spec(std::string_view text);
PairSpec load_pair_spec(const std::filesystem::path& path);

nlohmann::json to_json(const PairSpec& spec);
/// Pretty-printed JSON. Doubles are written in shortest round-trip form
/// (at most 17 significant digits), so parse(dump(s)) reproduces s exactly.
std::string dump_pair_spec(const PairSpec& spec);

PairSpec make_pair_spec(const Mixture1D& f, const Mixture1D& g, std::optional<std::string> label = {});
PairSpec make_pair_spec(const MixtureND& f, const MixtureND& g, std::optional<std::string> label = {});

}  // namespace tvgap::app
