#pragma once

#include <cstdint>
#include <random>

namespace enrichfp {

/// Seeded stream of doubles. Engine is std::mt19937_64, whose output sequence is
/// fixed by the standard; the conversion to [0, 1) takes the top 53 bits, so
/// draws are identical across standard libraries (std::uniform_real_distribution
/// is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

} // namespace enrichfp
