#pragma once

#include <json.hpp>

#include <cstdint>

namespace tvgap::app {

struct ExamplesResult {
    nlohmann::json doc;
    bool pass = true;
};

/// Worked examples: the large-gap instance, the +-u vs +-2u family, the
/// +-u vs +-(u + eps) family, the three-dimensional +-u vs +-2u instance and
/// the moment statistic.
ExamplesResult run_paper_examples(std::uint64_t seed);

/// |a / b - expected| within a few ulps of expected.
bool ratio_is(double a, double b, double expected);

}  // namespace tvgap::app
