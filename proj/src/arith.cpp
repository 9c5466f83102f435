#include "momentlab/arith.hpp"

#include "momentlab/errors.hpp"

#include <stdexcept>
#include <string>

namespace momentlab::arith {

PrimeTable sieve(std::int64_t limit, std::int64_t capacity_cap) {
    if (limit < 2) throw std::invalid_argument("sieve: limit must be >= 2");
    if (limit > capacity_cap)
        throw capacity_error("sieve: limit " + std::to_string(limit) + " exceeds cap " +
                             std::to_string(capacity_cap));

    PrimeTable t;
    t.limit = limit;
    t.spf.assign(static_cast<std::size_t>(limit) + 1, 0);

    // Linear sieve: each composite is crossed off exactly once by its
    // smallest prime factor.
    for (std::int64_t n = 2; n <= limit; ++n) {
        if (t.spf[static_cast<std::size_t>(n)] == 0) {
            t.spf[static_cast<std::size_t>(n)] = static_cast<std::uint32_t>(n);
            t.primes.push_back(n);
        }
        for (std::int64_t p : t.primes) {
            if (p > t.spf[static_cast<std::size_t>(n)] || n * p > limit) break;
            t.spf[static_cast<std::size_t>(n * p)] = static_cast<std::uint32_t>(p);
        }
    }
    return t;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    unsigned __int128 result = 1;
    unsigned __int128 b = base % mod;
    while (exp > 0) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all 64-bit inputs.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = static_cast<std::uint64_t>((unsigned __int128)x * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t find_primitive_root(std::int64_t r) {
    if (r < 2 || !is_prime_u64(static_cast<std::uint64_t>(r)))
        throw std::invalid_argument("find_primitive_root: modulus must be prime");
    if (r == 2) return 1;

    const std::uint64_t m = static_cast<std::uint64_t>(r);
    const std::uint64_t order = m - 1;
    const auto factors = factorize_u64(order);

    for (std::uint64_t g = 2; g < m; ++g) {
        bool ok = true;
        for (const auto& [q, e] : factors) {
            (void)e;
            if (pow_mod(g, order / q, m) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return static_cast<std::int64_t>(g);
    }
    throw std::logic_error("find_primitive_root: no generator found");
}

ModulusContext build_modulus_context(std::int64_t r, std::int64_t capacity_cap) {
    if (r > capacity_cap)
        throw capacity_error("build_modulus_context: r " + std::to_string(r) + " exceeds cap " +
                             std::to_string(capacity_cap));

    ModulusContext ctx;
    ctx.r = r;
    ctx.g = find_primitive_root(r);

    const std::size_t order = static_cast<std::size_t>(r - 1);
    ctx.dlog.assign(static_cast<std::size_t>(r), 0);
    ctx.pow.assign(order, 0);

    std::uint64_t value = 1;
    for (std::size_t a = 0; a < order; ++a) {
        ctx.pow[a] = static_cast<std::uint32_t>(value);
        ctx.dlog[static_cast<std::size_t>(value)] = static_cast<std::uint32_t>(a);
        value = value * static_cast<std::uint64_t>(ctx.g) % static_cast<std::uint64_t>(r);
    }
    if (value != 1) throw std::logic_error("build_modulus_context: generator order mismatch");
    return ctx;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n, const PrimeTable& table) {
    if (n == 1) return {};
    if (n < 1 || n > table.limit)
        throw std::invalid_argument("factorize: n out of table range");

    std::vector<std::pair<std::int64_t, int>> out;
    while (n > 1) {
        const std::int64_t p = table.spf[static_cast<std::size_t>(n)];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

} // namespace momentlab::arith
