#pragma once

#include <cstdint>
#include <random>

namespace circpot {

// Deterministic RNG wrapper. All randomized drivers draw through this class so
// identical seeds give identical streams on every platform; distribution
// helpers are hand-rolled because std::uniform_real_distribution output is
// implementation defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return (gen_() >> 11) * (1.0 / 9007199254740992.0);
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t index(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace circpot
