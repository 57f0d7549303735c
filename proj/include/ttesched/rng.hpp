#ifndef TTESCHED_RNG_HPP
#define TTESCHED_RNG_HPP

#include <cstdint>
#include <random>

namespace tte {

// Thin wrapper deriving everything from raw mt19937_64 output so that seeded
// runs are byte-identical across standard libraries (std distributions are
// implementation-defined and must not be used here).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n); modulo bias is irrelevant at the scales used here.
    std::uint64_t bounded(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

} // namespace tte

#endif
