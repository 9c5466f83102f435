#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracles {

cvec naive_dft(const cvec& in) {
    const std::size_t L = in.size();
    cvec out(L, {0.0, 0.0});
    for (std::size_t k = 0; k < L; ++k) {
        std::complex<double> s{0.0, 0.0};
        for (std::size_t a = 0; a < L; ++a) {
            const double ang = -2.0 * std::numbers::pi *
                               static_cast<double>(k * a % L) / static_cast<double>(L);
            s += in[a] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

cvec naive_idft(const cvec& in) {
    const std::size_t L = in.size();
    cvec out(L, {0.0, 0.0});
    for (std::size_t a = 0; a < L; ++a) {
        std::complex<double> s{0.0, 0.0};
        for (std::size_t k = 0; k < L; ++k) {
            const double ang = 2.0 * std::numbers::pi *
                               static_cast<double>(k * a % L) / static_cast<double>(L);
            s += in[k] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[a] = s / static_cast<double>(L);
    }
    return out;
}

std::vector<std::pair<std::int64_t, int>> trial_factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
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

std::int64_t segmented_prime_count(std::int64_t lo, std::int64_t hi) {
    if (hi < 2 || hi < lo) return 0;
    if (lo < 2) lo = 2;

    std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    std::vector<bool> small(static_cast<std::size_t>(root) + 1, true);
    std::vector<std::int64_t> base;
    for (std::int64_t p = 2; p <= root; ++p) {
        if (!small[static_cast<std::size_t>(p)]) continue;
        base.push_back(p);
        for (std::int64_t q = p * p; q <= root; q += p) small[static_cast<std::size_t>(q)] = false;
    }

    std::int64_t count = 0;
    const std::int64_t seg = 1 << 16;
    for (std::int64_t start = lo; start <= hi; start += seg) {
        const std::int64_t end = std::min(hi, start + seg - 1);
        std::vector<bool> mark(static_cast<std::size_t>(end - start) + 1, true);
        for (std::int64_t p : base) {
            std::int64_t first = std::max(p * p, (start + p - 1) / p * p);
            for (std::int64_t q = first; q <= end; q += p) mark[static_cast<std::size_t>(q - start)] = false;
        }
        for (std::int64_t n = start; n <= end; ++n) {
            if (n >= 2 && mark[static_cast<std::size_t>(n - start)]) ++count;
        }
    }
    return count;
}

std::int64_t brute_force_order(std::int64_t g, std::int64_t r) {
    std::int64_t value = g % r;
    std::int64_t order = 1;
    while (value != 1) {
        value = value * g % r;
        ++order;
        if (order > r) return -1;
    }
    return order;
}

} // namespace oracles
