#pragma once

#include "report.hpp"

#include "tvgap/rng.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace tvgap::app {

struct VerifyOptions {
    std::size_t n_1d = 500;
    std::size_t n_nd = 200;
    std::uint64_t seed = 0;
    double quad_tol = 1e-10;
    std::size_t mc_samples = kDefaultMcSamples;
    int projections = 3;
};

/// One checked inequality lhs <= rhs. margin = rhs - lhs; negative is a
/// violation.
struct CheckStat {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::string worst_instance;
};

struct VerifyResult {
    nlohmann::json doc;
    std::vector<CheckStat> checks;
    std::size_t violations = 0;

    const CheckStat* check(std::string_view name) const;
};

/// One-dimensional instance i of the sweep. Kinds cycle through
/// generic (means uniform in [-20, 20] sigma), close pairs within 100 sigma,
/// large matched gaps (>= 2 sigma), and well separated components
/// (100 to 150 sigma apart) with small shifts.
std::pair<Mixture1D, Mixture1D> verify_instance_1d(const RandomStream& root, std::size_t i);

/// d-dimensional instance i: d cycles through {2, 3, 5}; Sigma = Q diag(10^U(0,2)) Q^T.
std::pair<MixtureND, MixtureND> verify_instance_nd(const RandomStream& root, std::size_t i);

VerifyResult run_verify(const VerifyOptions& opts);

}  // namespace tvgap::app
