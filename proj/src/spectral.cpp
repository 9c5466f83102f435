#include "momentlab/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace momentlab::spectral {

namespace {

using cd = std::complex<double>;

struct Pow2Plan {
    std::size_t m = 0;
    std::vector<cd> twiddle;           // e(-j/m), j < m/2
    std::vector<std::uint32_t> rev;    // bit-reversal permutation
};

std::shared_ptr<const Pow2Plan> pow2_plan(std::size_t m) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const Pow2Plan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    auto plan = std::make_shared<Pow2Plan>();
    plan->m = m;
    plan->twiddle.resize(m / 2);
    for (std::size_t j = 0; j < m / 2; ++j) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
        plan->twiddle[j] = {std::cos(ang), std::sin(ang)};
    }
    plan->rev.resize(m);
    std::uint32_t bits = 0;
    while ((std::size_t{1} << bits) < m) ++bits;
    for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t x = static_cast<std::uint32_t>(i);
        std::uint32_t y = 0;
        for (std::uint32_t b = 0; b < bits; ++b) {
            y = (y << 1) | (x & 1);
            x >>= 1;
        }
        plan->rev[i] = y;
    }
    cache.emplace(m, plan);
    return cache.at(m);
}

// In-place radix-2 forward FFT (kernel e(-jk/m)).
void fft_pow2(std::vector<cd>& a, const Pow2Plan& plan) {
    const std::size_t m = plan.m;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = plan.rev[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t step = m / len;
        for (std::size_t blk = 0; blk < m; blk += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cd w = plan.twiddle[j * step];
                const cd u = a[blk + j];
                const cd v = a[blk + j + len / 2] * w;
                a[blk + j] = u + v;
                a[blk + j + len / 2] = u - v;
            }
        }
    }
}

void ifft_pow2(std::vector<cd>& a, const Pow2Plan& plan) {
    for (auto& z : a) z = std::conj(z);
    fft_pow2(a, plan);
    const double inv = 1.0 / static_cast<double>(plan.m);
    for (auto& z : a) z = std::conj(z) * inv;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

struct BluesteinPlan {
    std::size_t L = 0;
    std::size_t M = 0;                       // pow2 size >= 2L-1
    std::vector<cd> chirp;                   // e(-n^2/(2L)), n < L
    std::vector<cd> kernel_fft;              // FFT of the conjugate chirp, circularly wrapped
    std::shared_ptr<const Pow2Plan> pow2;
};

std::shared_ptr<const BluesteinPlan> bluestein_plan(std::size_t L) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const BluesteinPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return it->second;

    auto plan = std::make_shared<BluesteinPlan>();
    plan->L = L;
    plan->M = next_pow2(2 * L - 1);
    plan->pow2 = pow2_plan(plan->M);

    // Angles reduced mod 2L in integer arithmetic so large indices lose no
    // precision: e(-n^2/(2L)) depends only on n^2 mod 2L.
    plan->chirp.resize(L);
    const std::uint64_t two_l = 2 * static_cast<std::uint64_t>(L);
    for (std::size_t n = 0; n < L; ++n) {
        const std::uint64_t sq = static_cast<std::uint64_t>(n) * n % two_l;
        const double ang = -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(L);
        plan->chirp[n] = {std::cos(ang), std::sin(ang)};
    }

    std::vector<cd> kernel(plan->M, cd{0.0, 0.0});
    kernel[0] = std::conj(plan->chirp[0]);
    for (std::size_t n = 1; n < L; ++n) {
        kernel[n] = std::conj(plan->chirp[n]);
        kernel[plan->M - n] = std::conj(plan->chirp[n]);
    }
    fft_pow2(kernel, *plan->pow2);
    plan->kernel_fft = std::move(kernel);

    cache.emplace(L, plan);
    return cache.at(L);
}

cvec dft_bluestein(const cvec& input) {
    const std::size_t L = input.size();
    const auto plan = bluestein_plan(L);

    std::vector<cd> a(plan->M, cd{0.0, 0.0});
    for (std::size_t n = 0; n < L; ++n) a[n] = input[n] * plan->chirp[n];
    fft_pow2(a, *plan->pow2);
    for (std::size_t i = 0; i < plan->M; ++i) a[i] *= plan->kernel_fft[i];
    ifft_pow2(a, *plan->pow2);

    cvec out(L);
    for (std::size_t k = 0; k < L; ++k) out[k] = a[k] * plan->chirp[k];
    return out;
}

} // namespace

cvec dft(const cvec& input) {
    const std::size_t L = input.size();
    if (L == 0) throw std::invalid_argument("dft: empty input");
    if (L == 1) return input;
    if (is_pow2(L)) {
        cvec a = input;
        fft_pow2(a, *pow2_plan(L));
        return a;
    }
    return dft_bluestein(input);
}

cvec idft(const cvec& input) {
    const std::size_t L = input.size();
    if (L == 0) throw std::invalid_argument("idft: empty input");
    cvec conj_in(L);
    for (std::size_t i = 0; i < L; ++i) conj_in[i] = std::conj(input[i]);
    cvec y = dft(conj_in);
    const double inv = 1.0 / static_cast<double>(L);
    for (auto& z : y) z = std::conj(z) * inv;
    return y;
}

} // namespace momentlab::spectral
