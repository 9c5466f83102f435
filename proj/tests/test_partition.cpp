#include "doctest.h"
#include "momentlab/partition.hpp"
#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace momentlab::partition;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

double sgn(double z) { return z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0); }

} // namespace

TEST_CASE("B majorizes sgn on a dense grid") {
    // Reference evaluation at doubled truncation must agree and stay above sgn.
    for (double z : linspace(-20.0, 20.0, 10001)) {
        const double b1 = beurling_B(z, 1000);
        const double b2 = beurling_B(z, 2000);
        REQUIRE(std::abs(b1 - b2) < 1e-12);
        REQUIRE(b2 >= sgn(z) - 1e-12);
    }
}

TEST_CASE("B interpolates sgn at integers") {
    for (int n : {1, 2, 3}) {
        CHECK(beurling_B(n, 2000) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(beurling_B(-n, 2000) == doctest::Approx(-1.0).epsilon(1e-12));
        // Quadratic touch: nearby values stay within O(h^2) of the limit.
        for (double h : {1e-5, -1e-5}) {
            CHECK(std::abs(beurling_B(n + h, 2000) - 1.0) < 1e-7);
            CHECK(std::abs(beurling_B(-n + h, 2000) + 1.0) < 1e-7);
        }
    }
    CHECK(beurling_B(0.0) == doctest::Approx(1.0));
}

TEST_CASE("B minus sgn has integral one") {
    // Composite Simpson over [-50, 50] plus the 1/(pi^2 z) tail estimate.
    const int cells = 20000;
    const double lo = -50.0, hi = 50.0;
    const double h = (hi - lo) / cells;
    double integral = 0.0;
    for (int i = 0; i < cells; ++i) {
        const double a = lo + i * h;
        const double m = a + 0.5 * h;
        const double b = a + h;
        const double fa = beurling_B(a) - sgn(a);
        const double fm = beurling_B(m) - sgn(m);
        const double fb = beurling_B(b) - sgn(b);
        integral += h / 6.0 * (fa + 4.0 * fm + fb);
    }
    // The omitted tail is ~ sin^2(pi z)/(pi^2 z^2) per side, about 2e-3 total,
    // comfortably inside the 1% slack.
    CHECK(std::abs(integral - 1.0) < 0.01);
}

TEST_CASE("Selberg majorant of the unit interval") {
    for (double delta : {0.5, 0.2, 0.05}) {
        CHECK(selberg_majorant(delta, 0.0) >= 1.0);
        // Symmetry.
        for (double u : linspace(0.0, 3.0, 61))
            CHECK(std::abs(selberg_majorant(delta, u) - selberg_majorant(delta, -u)) < 1e-10);
        // Majorizes the indicator.
        for (double u : linspace(-0.49, 0.49, 99))
            CHECK(selberg_majorant(delta, u) >= 1.0 - 1e-10);
        for (double u : linspace(0.51, 4.0, 50)) {
            CHECK(selberg_majorant(delta, u) >= -1e-10);
            CHECK(selberg_majorant(delta, -u) >= -1e-10);
        }
        // Total integral 1 + delta: quadrature over [-U, U] plus tail bound.
        const double U = std::max(8.0, 2.0 / delta);
        const int cells = 4000;
        const double h = 2.0 * U / cells;
        double integral = 0.0;
        for (int i = 0; i < cells; ++i) {
            const double a = -U + i * h;
            integral += h / 6.0 *
                        (selberg_majorant(delta, a) + 4.0 * selberg_majorant(delta, a + 0.5 * h) +
                         selberg_majorant(delta, a + h));
        }
        const double tail_bound = 8.0 * delta * delta / (U - 0.5);
        CHECK(std::abs(integral - (1.0 + delta)) < 0.005 * (1.0 + delta) + tail_bound);
    }
}

TEST_CASE("g matches its defining quadrature") {
    oracles::TestRng rng(11);
    for (double delta : {0.5, 0.13}) {
        PartitionFamily fam({delta, 5});
        for (int i = 0; i < 40; ++i) {
            const double x = (rng.uniform() - 0.5) * 16.0;
            CHECK(std::abs(fam.g(x) - g_by_quadrature(delta, x)) < 1e-8);
        }
        // Outside the cached range the direct path takes over seamlessly.
        const double far = fam.cache_half_range() + 2.25;
        CHECK(std::abs(fam.g(far) - g_by_quadrature(delta, far)) < 1e-8);
    }
}

TEST_CASE("partition of unity properties on dense grids") {
    for (const auto& [delta, N] : std::vector<std::pair<double, int>>{
             {0.5, 5}, {0.2, 5}, {0.05, 5}, {0.5, 20}, {0.2, 20}, {0.05, 20}}) {
        CAPTURE(delta);
        CAPTURE(N);
        PartitionFamily fam({delta, N});

        // (ii) 0 <= g, and g <= delta beyond distance 1.
        for (double x : linspace(-3.0 * N, 3.0 * N, 1200)) {
            const double gx = fam.g(x);
            REQUIRE(gx >= -1e-8);
            REQUIRE(gx <= 1.0 + 1e-8);
            if (std::abs(x) > 1.0) REQUIRE(gx <= delta + 1e-8);
        }

        // (i) cells sum to one; remainder is nonnegative and small inside.
        for (double x : linspace(-(N + 4.0), N + 4.0, 801)) {
            const auto eval = fam.eval_all(x);
            double total = eval.g_rest;
            for (double v : eval.g_j) total += v;
            REQUIRE(total == doctest::Approx(1.0).epsilon(1e-12));
            const double wsum = fam.window_sum(x);
            REQUIRE(wsum <= 1.0 + 1e-8);
            REQUIRE(std::abs((1.0 - wsum) - eval.g_rest) < 1e-7);
            // (iii)
            REQUIRE(eval.g_rest >= -1e-8);
            if (std::abs(x) <= N) REQUIRE(eval.g_rest <= delta + 1e-8);
        }

        // Mass concentration at the center and far outside.
        CHECK(fam.g(0.0) >= 1.0 - 2.0 * N * delta - 1e-8);
        const double far = N + 50.0;
        CHECK(1.0 - fam.window_sum(far) >= 1.0 - delta * (2.0 * N + 1.0) - 1e-8);
    }
}

TEST_CASE("translation identity is exact by construction") {
    PartitionFamily fam({0.3, 6});
    for (double x : linspace(-4.0, 4.0, 41))
        for (int j : {-3, 1, 4})
            CHECK(fam.g_cell(j, x) == fam.g(x - j));
}

TEST_CASE("derivative bounds") {
    const auto grid = linspace(-2.5, 2.5, 201);
    for (double delta : {0.5, 0.2}) {
        PartitionFamily fam({delta, 5});
        for (int l = 1; l <= 4; ++l) {
            const double ratio = derivative_bound_ratio(fam, l, grid);
            CAPTURE(delta);
            CAPTURE(l);
            CHECK(ratio <= 1.1);
        }
        // FD convergence: halving the step moves the l=1 ratio by < 2%.
        const double r1 = derivative_bound_ratio(fam, 1, grid, delta / 20.0);
        const double r2 = derivative_bound_ratio(fam, 1, grid, delta / 40.0);
        CHECK(std::abs(r1 - r2) / r1 < 0.02);
    }
    // Far outside the support the derivative is essentially zero.
    PartitionFamily fam({0.2, 5});
    const std::vector<double> far_grid = {30.0, 35.0, 40.0};
    CHECK(derivative_bound_ratio(fam, 1, far_grid) < 1e-6);
}

TEST_CASE("parameter selection") {
    const auto plan = select_parameters(1000.0, 1e6);
    CHECK(plan.L == doctest::Approx(1000.0));
    CHECK(plan.P == 3);  // largest integer below exp(log^{1/6} 1000) = 3.9749...
    CHECK(plan.M == 2 * static_cast<int>(std::ceil(std::pow(std::log(3.0), 1.02))));
    CHECK(plan.N == 1);
    CHECK(plan.delta == doctest::Approx(std::pow(std::log(3.0), -1.3)));
    CHECK(!plan.feasible);

    // Symmetric in x <-> r/x.
    const auto p1 = select_parameters(100.0, 1e6);
    const auto p2 = select_parameters(1e4, 1e6);
    CHECK(p1.L == p2.L);
    CHECK(p1.P == p2.P);

    // Pure function of (x, r).
    const auto again = select_parameters(1000.0, 1e6);
    CHECK(again.P == plan.P);
    CHECK(again.delta == plan.delta);
    CHECK(again.M == plan.M);

    CHECK_THROWS_AS(select_parameters(3.0, 12.0), std::invalid_argument);  // L < 10 refused
    CHECK_THROWS_AS(select_parameters(0.5, 100.0), std::invalid_argument);
}
