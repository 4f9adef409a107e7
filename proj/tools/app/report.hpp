#pragma once

#include "pairspec.hpp"

#include "tvgap/bounds1d.hpp"
#include "tvgap/boundsnd.hpp"
#include "tvgap/oracles.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace tvgap::app {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitViolation = 2;

nlohmann::json to_json(const BoundResult& r, std::string_view operation, nlohmann::json params = nlohmann::json::object());
nlohmann::json to_json(const GridSpec& grid);
nlohmann::json to_json(const McEstimate& e, std::string_view operation);
nlohmann::json to_json(const Mixture1D& m);

/// Half-width used when a Monte Carlo estimate enters an inequality:
/// 3 standard errors plus 6/n. For nearly disjoint pairs the overlap is a
/// rare event and the sample standard error can be 0 or far too small; 6/n
/// is the one-sided 99.75% Poisson bound for an event seen zero times.
double mc_band(const McEstimate& e);

/// Fresh document with schema_version and command set.
nlohmann::json report_header(std::string_view command, std::uint64_t seed);

struct Sandwich {
    bool lower_ok = true;
    bool upper_ok = true;
    double slack = 0.0;
    bool pass() const { return lower_ok && upper_ok; }
};

/// lower <= oracle + tol and oracle - tol <= upper.
Sandwich check_sandwich(double lower, double oracle, double upper, double tol);

struct BoundOptions {
    std::uint64_t seed = 0;
    std::size_t mc_samples = kDefaultMcSamples;
    double quad_tol = 1e-10;
    bool oracle = true;
    int workers = 0;
    GridSpec grid;
};

struct BoundReport {
    nlohmann::json doc;
    bool violation = false;
};

/// Lower bound, upper bound, oracle(s) and moment diagnostic for one pair,
/// with the sandwich verdict. d = 1 goes through the one-dimensional
/// route and the quadrature oracle; d > 1 through projections and Monte
/// Carlo.
BoundReport run_bound(const PairSpec& spec, const BoundOptions& opts);

/// Fixed-precision text for CSV output.
std::string format_double(double x);

}  // namespace tvgap::app
