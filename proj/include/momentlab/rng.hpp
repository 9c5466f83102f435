#pragma once

// Counter-based random numbers: every value is a pure function of
// (master seed, stream index, counter), so parallel workers never share
// state and any draw can be regenerated bit-identically.

#include <complex>
#include <cstdint>

namespace momentlab::rng {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

struct Key {
    std::uint64_t master;
    std::uint64_t stream;
};

// Uniform in [0, 1), 53 random bits.
inline double uniform01(Key key, std::uint64_t counter) {
    std::uint64_t h = mix64(key.master ^ 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ key.stream);
    h = mix64(h + counter * 0x9e3779b97f4a7c15ULL);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform on the complex unit circle.
inline std::complex<double> unit_circle(Key key, std::uint64_t counter) {
    const double theta = 6.283185307179586476925286766559 * uniform01(key, counter);
    return {std::cos(theta), std::sin(theta)};
}

} // namespace momentlab::rng
