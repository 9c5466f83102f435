#include "doctest.h"
#include "momentlab/spectral.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace momentlab::spectral;

namespace {

cvec random_vector(std::size_t L, std::uint64_t seed) {
    oracles::TestRng rng(seed);
    cvec v(L);
    for (auto& z : v) z = {rng.uniform() * 2.0 - 1.0, rng.uniform() * 2.0 - 1.0};
    return v;
}

double max_abs_diff(const cvec& a, const cvec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double norm2(const cvec& a) {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace

TEST_CASE("delta transforms to constants") {
    const cvec out = dft({{1, 0}, {0, 0}, {0, 0}, {0, 0}});
    for (const auto& z : out) {
        CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(z.imag() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("length one is the identity") {
    const cvec out = dft({{3.5, -2.0}});
    CHECK(out[0] == std::complex<double>{3.5, -2.0});
}

TEST_CASE("matches the naive transform on awkward lengths") {
    for (std::size_t L : {2u, 3u, 17u, 100u, 256u, 257u, 360u, 1009u, 2002u}) {
        const cvec x = random_vector(L, 1000 + L);
        const cvec fast = dft(x);
        const cvec slow = oracles::naive_dft(x);
        CHECK(max_abs_diff(fast, slow) / norm2(x) < 1e-10);
    }
}

TEST_CASE("inverse matches the naive inverse") {
    const cvec x = random_vector(100, 42);
    CHECK(max_abs_diff(idft(x), oracles::naive_idft(x)) / norm2(x) < 1e-10);
}

TEST_CASE("round trip") {
    for (std::size_t L : {64u, 360u, 1009u}) {
        const cvec x = random_vector(L, L);
        const cvec back = idft(dft(x));
        CHECK(max_abs_diff(back, x) / norm2(x) < 1e-10);
    }
}

TEST_CASE("constant vector inverts to a delta at index zero") {
    const std::complex<double> c{2.0, 1.0};
    const cvec out = idft(cvec(12, c));
    CHECK(std::abs(out[0] - c) < 1e-14);
    for (std::size_t a = 1; a < out.size(); ++a) CHECK(std::abs(out[a]) < 1e-14);
}

TEST_CASE("Parseval identity at assorted lengths") {
    for (std::size_t L : {5u, 128u, 999u, 1024u, 4095u}) {
        const cvec x = random_vector(L, 77 + L);
        const cvec y = dft(x);
        double in2 = 0.0, out2 = 0.0;
        for (const auto& z : x) in2 += std::norm(z);
        for (const auto& z : y) out2 += std::norm(z);
        CHECK(std::abs(in2 - out2 / static_cast<double>(L)) / in2 < 1e-9);
    }
}

TEST_CASE("linearity and conjugate symmetry for real input") {
    const std::size_t L = 91;
    oracles::TestRng rng(5);
    cvec x(L);
    for (auto& z : x) z = {rng.uniform() * 2.0 - 1.0, 0.0};
    const cvec y = dft(x);
    for (std::size_t k = 1; k < L; ++k) CHECK(std::abs(y[L - k] - std::conj(y[k])) < 1e-10);

    // Linearity: dft(2x + x) = 3 dft(x).
    cvec x3(L);
    for (std::size_t i = 0; i < L; ++i) x3[i] = 3.0 * x[i];
    const cvec y3 = dft(x3);
    for (std::size_t k = 0; k < L; ++k) CHECK(std::abs(y3[k] - 3.0 * y[k]) < 1e-10);
}
