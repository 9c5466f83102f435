#include "doctest.h"
#include "momentlab/arith.hpp"
#include "momentlab/errors.hpp"
#include "oracles.hpp"

using namespace momentlab;
using namespace momentlab::arith;

TEST_CASE("sieve lists the primes up to 10") {
    const auto t = sieve(10);
    CHECK(t.primes == std::vector<std::int64_t>{2, 3, 5, 7});
}

TEST_CASE("smallest prime factors") {
    const auto t = sieve(100);
    CHECK(t.smallest_factor(12) == 2);
    CHECK(t.smallest_factor(49) == 7);
    CHECK(t.smallest_factor(97) == 97);
}

TEST_CASE("sieve invariants hold on a midsize table") {
    const auto t = sieve(10'000);
    for (std::int64_t n = 2; n <= t.limit; ++n) {
        const std::int64_t p = t.smallest_factor(n);
        REQUIRE(p >= 2);
        REQUIRE(n % p == 0);
        REQUIRE(t.smallest_factor(p) == p);  // spf of a prime is itself
    }
    // Spot-check counts on sub-ranges against an independent segmented sieve.
    auto count_range = [&](std::int64_t lo, std::int64_t hi) {
        std::int64_t c = 0;
        for (std::int64_t p : t.primes)
            if (p >= lo && p <= hi) ++c;
        return c;
    };
    for (auto [lo, hi] : {std::pair<std::int64_t, std::int64_t>{2, 1000},
                          {1000, 2500},
                          {7000, 10'000}}) {
        CHECK(count_range(lo, hi) == oracles::segmented_prime_count(lo, hi));
    }
}

TEST_CASE("prime count at one million") {
    const auto t = sieve(1'000'000);
    CHECK(static_cast<std::int64_t>(t.primes.size()) ==
          oracles::segmented_prime_count(2, 1'000'000));
    CHECK(t.primes.size() == 78498);
}

TEST_CASE("sieve rejects out-of-cap requests with a capacity error") {
    CHECK_THROWS_AS(sieve(1'000'000, 100'000), capacity_error);
    CHECK_THROWS_AS(sieve(1), std::invalid_argument);
}

TEST_CASE("primitive roots are the smallest generators") {
    CHECK(find_primitive_root(3) == 2);
    CHECK(find_primitive_root(5) == 2);
    CHECK(find_primitive_root(7) == 3);
    // Brute-force order check: returned g generates, nothing smaller does.
    for (std::int64_t r : {11, 101, 257, 1009}) {
        const std::int64_t g = find_primitive_root(r);
        CHECK(oracles::brute_force_order(g, r) == r - 1);
        for (std::int64_t h = 2; h < g; ++h) CHECK(oracles::brute_force_order(h, r) != r - 1);
    }
    CHECK_THROWS_AS(find_primitive_root(15), std::invalid_argument);
}

TEST_CASE("modulus context tables") {
    const auto ctx = build_modulus_context(7);
    CHECK(ctx.g == 3);
    CHECK(ctx.log_of(6) == 3);  // 3^3 = 27 = 6 mod 7
    CHECK(ctx.log_of(1) == 0);

    for (std::int64_t r : {7, 101, 10007}) {
        const auto c = build_modulus_context(r);
        // pow o dlog is the identity on 1..r-1, and dlog is onto 0..r-2.
        std::vector<bool> seen(static_cast<std::size_t>(r - 1), false);
        for (std::int64_t n = 1; n < r; ++n) {
            const auto a = c.log_of(n);
            REQUIRE(c.pow[a] == n);
            REQUIRE(!seen[a]);
            seen[a] = true;
        }
        CHECK(c.log_of(r - 1) == (r - 1) / 2);  // g^((r-1)/2) = -1
    }

    CHECK_THROWS_AS(build_modulus_context(101, 50), capacity_error);
}

TEST_CASE("dlog is additive on random pairs") {
    const std::int64_t r = 10007;
    const auto ctx = build_modulus_context(r);
    oracles::TestRng rng(123);
    for (int i = 0; i < 100; ++i) {
        const std::int64_t m = 1 + rng.below(r - 1);
        const std::int64_t n = 1 + rng.below(r - 1);
        const std::int64_t prod = m * n % r;
        const std::int64_t lhs = ctx.log_of(prod);
        const std::int64_t rhs = (static_cast<std::int64_t>(ctx.log_of(m)) + ctx.log_of(n)) % (r - 1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("factorization") {
    const auto t = sieve(10'000'000);
    CHECK(factorize(12, t) == std::vector<std::pair<std::int64_t, int>>{{2, 2}, {3, 1}});
    CHECK(factorize(1, t).empty());
    CHECK(factorize(9699690, t) ==
          std::vector<std::pair<std::int64_t, int>>{
              {2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1}});
    CHECK_THROWS_AS(factorize(t.limit + 1, t), std::invalid_argument);

    // Round-trip on random n, against trial division.
    oracles::TestRng rng(7);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t n = 2 + rng.below(t.limit - 2);
        const auto f = factorize(n, t);
        CHECK(f == oracles::trial_factorize(n));
        std::int64_t prod = 1;
        std::int64_t last = 1;
        for (const auto& [p, e] : f) {
            CHECK(p > last);
            last = p;
            for (int j = 0; j < e; ++j) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("64-bit primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(1'000'003));
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(1'000'001));  // 101 * 9901
    CHECK(is_prime_u64(2'147'483'647ULL));
    CHECK(!is_prime_u64(2'147'483'649ULL));
}
