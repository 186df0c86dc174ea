// rng.hpp: seedable normal variates for the Monte Carlo oracles.
// mt19937_64 is fully specified by the standard, and the Box–Muller transform below is
// written out by hand, so streams are identical on every platform (std::normal_distribution
// is implementation-defined).

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace optomech::testkit {

struct RngSeed {
    std::uint64_t value = 0;
};

/// One step of SplitMix64.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent stream per (seed, index), e.g. per Monte Carlo trajectory.
inline RngSeed sub_seed(RngSeed seed, std::uint64_t index) {
    return {splitmix64(splitmix64(seed.value) ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

class Rng {
public:
    explicit Rng(RngSeed seed) : engine_(seed.value) {}

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double phi = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace optomech::testkit
