#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tvgap {

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse of normal_cdf on (0, 1): Acklam's rational approximation
/// polished by one Halley step.
double normal_quantile(double p);

/// Seeded, splittable random stream.
///
/// Every stream is identified by a 64-bit key. Children are derived from
/// the parent key and a label (string or index) through SplitMix64 mixing,
/// so a single top-level seed reproduces every sub-task regardless of the
/// order in which sub-tasks run. Draws come from std::mt19937_64 seeded with
/// the key, whose output sequence is fixed by the C++ standard; normals use
/// the inverse-CDF transform on 53-bit uniforms rather than
/// std::normal_distribution, whose algorithm is implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    RandomStream split(std::string_view label) const;
    RandomStream split(std::uint64_t index) const;

    std::uint64_t key() const noexcept { return key_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    double normal();
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::uint64_t key_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tvgap
