#pragma once

#include <cstdint>
#include <random>

namespace qfringe::detail {

// mt19937_64 with a hand-rolled uniform mapping so that streams are
// identical across standard libraries (uniform_real_distribution is
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace qfringe::detail
