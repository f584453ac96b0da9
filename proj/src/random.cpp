#include "hive/random.hpp"

#include <cmath>

namespace hive {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    std::uint64_t x = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
    for (auto& si : s_) si = splitmix64(x);
    // xoshiro must not start from the all-zero state
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RandomSource RandomSource::split(std::uint64_t k) const {
    std::uint64_t x = seed_;
    std::uint64_t a = splitmix64(x);
    return RandomSource(a ^ (k * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL),
                        stream_ * 0x100000001b3ULL + k + 1);
}

std::uint64_t RandomSource::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomSource::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    // Box-Muller; u kept away from 0 so log stays finite.
    double u = 0.0;
    do {
        u = uniform01();
    } while (u <= 0.0);
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double c = std::cos(6.283185307179586476925286766559 * v);
    const double s = std::sin(6.283185307179586476925286766559 * v);
    cached_normal_ = r * s;
    has_cached_ = true;
    return r * c;
}

std::complex<double> RandomSource::complex_normal() {
    const double inv_sqrt2 = 0.70710678118654752440;
    const double re = normal() * inv_sqrt2;
    const double im = normal() * inv_sqrt2;
    return {re, im};
}

} // namespace hive
