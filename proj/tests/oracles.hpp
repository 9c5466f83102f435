#pragma once

// Independent reference implementations used only by the tests. These stay
// deliberately naive (O(L^2) transforms, trial division, direct summation)
// so they share no code path with the library.

#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

using cvec = std::vector<std::complex<double>>;

// Naive O(L^2) transforms with the library's kernel conventions.
cvec naive_dft(const cvec& in);
cvec naive_idft(const cvec& in);

// Trial-division factorization.
std::vector<std::pair<std::int64_t, int>> trial_factorize(std::int64_t n);

// Prime count on [lo, hi] by a small segmented sieve, written independently
// of the library sieve.
std::int64_t segmented_prime_count(std::int64_t lo, std::int64_t hi);

// Multiplicative order of g mod r by brute-force powering.
std::int64_t brute_force_order(std::int64_t g, std::int64_t r);

// Deterministic xorshift for test inputs.
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed ? seed : 1) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n)); }
};

} // namespace oracles
