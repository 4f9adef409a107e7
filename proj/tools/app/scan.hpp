#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tvgap::app {

enum class ScanFamily { eq2, eq3, highdim };

/// "eq2", "eq3", "highdim"; anything else is empty.
std::optional<ScanFamily> parse_family(std::string_view name);

/// Comma separated finite numbers. An empty string yields an empty grid.
std::vector<double> parse_grid(std::string_view text);

/// One CSV row per grid value.
///   eq2:     +-u vs +-2u, sigma 1
///   eq3:     +-0.5 vs +-(0.5 + eps), sigma 1
///   highdim: +-u e1 vs +-2u e1 in three dimensions, identity covariance
void run_scan(ScanFamily family, const std::vector<double>& grid, std::uint64_t seed, std::ostream& out);

inline constexpr double kEq3U = 0.5;

}  // namespace tvgap::app
