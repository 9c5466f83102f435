#pragma once

// Prime sieves, factorization tables, primitive roots and discrete-log
// tables for a prime modulus. Tables are built single-threaded and are
// immutable afterwards, so they can be shared read-only across workers.

#include <cstdint>
#include <utility>
#include <vector>

namespace momentlab::arith {

// Default capacity caps. Both are configuration: every builder takes an
// explicit cap argument that overrides these.
inline constexpr std::int64_t kDefaultSieveCap = 100'000'000;   // spf array ~4 B/entry
inline constexpr std::int64_t kDefaultModulusCap = 20'000'000;  // dlog+pow ~8 B/entry

// Primes up to `limit` plus a smallest-prime-factor table.
struct PrimeTable {
    std::int64_t limit = 0;
    std::vector<std::int64_t> primes;   // ascending, all primes <= limit
    std::vector<std::uint32_t> spf;     // spf[n] for 0 <= n <= limit; spf[0..1] = 0

    bool is_prime(std::int64_t n) const {
        return n >= 2 && n <= limit && spf[static_cast<std::size_t>(n)] == n;
    }
    std::uint32_t smallest_factor(std::int64_t n) const { return spf[static_cast<std::size_t>(n)]; }
};

PrimeTable sieve(std::int64_t limit, std::int64_t capacity_cap = kDefaultSieveCap);

// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime_u64(std::uint64_t n);

// Smallest primitive root mod prime r.
std::int64_t find_primitive_root(std::int64_t r);

// Full index of the multiplicative group mod prime r:
// pow[a] = g^a mod r (0 <= a <= r-2), dlog[n] = a with g^a = n (1 <= n <= r-1).
struct ModulusContext {
    std::int64_t r = 0;
    std::int64_t g = 0;
    std::vector<std::uint32_t> dlog;  // size r; dlog[0] unused
    std::vector<std::uint32_t> pow;   // size r-1

    std::int64_t order() const { return r - 1; }
    std::uint32_t log_of(std::int64_t n) const { return dlog[static_cast<std::size_t>(n)]; }
};

ModulusContext build_modulus_context(std::int64_t r, std::int64_t capacity_cap = kDefaultModulusCap);

// Prime factorization of 2 <= n <= table.limit via the spf table;
// factorize(1) is the empty factorization.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n, const PrimeTable& table);

// Trial-division factorization, independent of any table (used for r-1 in
// the primitive-root order test).
std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

} // namespace momentlab::arith
