#pragma once

#include <cstdint>
#include <complex>

namespace hive {

// Splittable counter-seeded PRNG (xoshiro256++ core, splitmix64 expansion).
// Identical (seed, stream) pairs produce identical output sequences on any
// platform; distribution sampling below avoids std::<random> distributions
// because their output is implementation-defined.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    // Child generator with an independent stream. Deterministic in (seed, k).
    RandomSource split(std::uint64_t k) const;

    std::uint64_t next_u64();
    double uniform01();                       // in [0, 1)
    double normal();                          // N(0, 1)
    std::complex<double> complex_normal();    // re, im ~ N(0, 1/2), E|z|^2 = 1

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

} // namespace hive
