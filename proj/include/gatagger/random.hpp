#pragma once

#include <cstdint>
#include <random>

namespace gatagger {

/// Seeded pseudo-random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the draws below are written out here
/// (rather than using std distributions) so results are identical across
/// standard library implementations.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform_real() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [0, bound). `bound` must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);

    bool bernoulli(double p) { return uniform_real() < p; }

    /// Independent stream seed for item `index` of a run seeded by `seed`.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

private:
    std::mt19937_64 engine_;
};

} // namespace gatagger
