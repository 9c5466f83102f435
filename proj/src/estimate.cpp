#include "momentlab/estimate.hpp"
#include "momentlab/parallel.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace momentlab {

const char* method_name(Method m) {
    switch (m) {
        case Method::ExactAverage: return "exact-average";
        case Method::MonteCarlo: return "monte-carlo";
        case Method::Quadrature: return "quadrature";
    }
    return "unknown";
}

double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

MeanSe mean_and_se(std::span<const double> v) {
    MeanSe out;
    const std::size_t n = v.size();
    if (n == 0) return out;
    out.mean = pairwise_sum(v) / static_cast<double>(n);
    if (n < 2) return out;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = v[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    out.se = std::sqrt(var / static_cast<double>(n));
    return out;
}

} // namespace momentlab

namespace momentlab::parallel {

namespace {
int g_threads = 0;
} // namespace

int default_threads() {
    if (g_threads > 0) return g_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    const int n = hw == 0 ? 1 : static_cast<int>(hw);
    return n > 16 ? 16 : n;
}

void set_default_threads(int n) { g_threads = n; }

} // namespace momentlab::parallel
