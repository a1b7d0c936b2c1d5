#ifndef COMBIMOTS_RNG_HPP
#define COMBIMOTS_RNG_HPP

#include <cstdint>
#include <random>

namespace combimots {

/// Seeded generator with explicit draw helpers. mt19937_64 output is
/// standardized, and the bounded draw below avoids the
/// implementation-defined std::uniform_int_distribution, so identical
/// seeds give identical streams everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Unbiased draw from [0, n) by rejection.
    std::size_t below(std::size_t n) {
        const std::uint64_t limit =
            std::uint64_t(-1) - std::uint64_t(-1) % static_cast<std::uint64_t>(n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % static_cast<std::uint64_t>(n));
    }

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace combimots

#endif
