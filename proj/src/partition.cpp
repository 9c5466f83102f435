#include "momentlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace momentlab::partition {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// (sin(pi z)/(pi z))^2 with the removable singularity at 0.
double sinc_sq(double z) {
    const double w = kPi * z;
    if (std::abs(w) < 1e-6) {
        const double w2 = w * w;
        const double s = 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
        return s * s;
    }
    const double s = std::sin(w) / w;
    return s * s;
}

// trigamma(v) = sum_{n>=0} 1/(v+n)^2 for v > 0: recurrence up to v >= 30,
// then the asymptotic series.
double trigamma(double v) {
    double s = 0.0;
    while (v < 30.0) {
        s += 1.0 / (v * v);
        v += 1.0;
    }
    const double u = 1.0 / v;
    const double u2 = u * u;
    s += u * (1.0 + u * (0.5 + u * (1.0 / 6.0 + u2 * (-1.0 / 30.0 + u2 * (1.0 / 42.0 - u2 / 30.0)))));
    return s;
}

double sin_sq_pi(double z) {
    // sin^2(pi z) computed from the distance to the nearest integer, exact
    // under the periodicity that the partial-fraction series relies on.
    const double w = z - std::nearbyint(z);
    const double s = std::sin(kPi * w);
    return s * s;
}

} // namespace

double beurling_B(double z, int n_cut) {
    if (n_cut < 100) throw std::invalid_argument("beurling_B: n_cut too small");
    if (z < 0.0) return 2.0 * sinc_sq(z) - beurling_B(-z, n_cut);

    const double m = std::nearbyint(z);
    const double w = z - m;
    if (std::abs(w) < 1e-9) {
        // Interpolation at integers; the touch is quadratic, so the limit
        // value is accurate to ~1e-18 here. Near 0 the slope is 2.
        return m == 0.0 ? 1.0 + 2.0 * z : 1.0;
    }

    if (static_cast<double>(n_cut) < z + 40.0) n_cut = static_cast<int>(z) + 1040;

    double sum = 2.0 / z;
    for (int n = 0; n <= n_cut; ++n) {
        const double d = z - static_cast<double>(n);
        sum += 1.0 / (d * d);
    }
    for (int n = 1; n <= n_cut; ++n) {
        const double d = z + static_cast<double>(n);
        sum -= 1.0 / (d * d);
    }
    // Tails sum_{n > n_cut} 1/(n -+ z)^2 in closed form.
    sum += trigamma(static_cast<double>(n_cut) + 1.0 - z);
    sum -= trigamma(static_cast<double>(n_cut) + 1.0 + z);

    return sin_sq_pi(w) / kPi2 * sum;
}

// Same function through the reflection-closed form; used in inner loops.
// For z > 0: B(z) = 1 + (sin^2(pi z)/pi^2) * 2 * (1/z - trigamma(z+1)).
namespace {

double beurling_B_fast(double z) {
    if (z < 0.0) return 2.0 * sinc_sq(z) - beurling_B_fast(-z);
    const double m = std::nearbyint(z);
    const double w = z - m;
    if (std::abs(w) < 1e-9) return m == 0.0 ? 1.0 + 2.0 * z : 1.0;
    const double s2 = sin_sq_pi(w);
    return 1.0 + s2 / kPi2 * 2.0 * (1.0 / z - trigamma(z + 1.0));
}

double b_fast(double delta, double u) {
    const double scale = 1.0 / delta;
    return 0.5 * (beurling_B_fast((u + 0.5) * scale) + beurling_B_fast((0.5 - u) * scale));
}

// 7-point Gauss-Legendre on [-1, 1].
constexpr double kGl7X[7] = {0.0,
                             -0.4058451513773971669066064, 0.4058451513773971669066064,
                             -0.7415311855993944398638648, 0.7415311855993944398638648,
                             -0.9491079123427585245261897, 0.9491079123427585245261897};
constexpr double kGl7W[7] = {0.4179591836734693877551020,
                             0.3818300505051189449503698, 0.3818300505051189449503698,
                             0.2797053914892766679014678, 0.2797053914892766679014678,
                             0.1294849661688696932706114, 0.1294849661688696932706114};

double gl7_b(double delta, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += kGl7W[i] * b_fast(delta, c + h * kGl7X[i]);
    return s * h;
}

// Composite GL-7 with cells no wider than delta/4 (half a ripple period).
double b_integral_direct(double delta, double lo, double hi) {
    if (hi <= lo) return hi == lo ? 0.0 : -b_integral_direct(delta, hi, lo);
    const double max_cell = std::max(delta / 4.0, 1e-4);
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_cell)));
    const double h = (hi - lo) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += gl7_b(delta, lo + i * h, lo + (i + 1) * h);
    return s;
}

} // namespace

double selberg_majorant(double delta, double u, int n_cut) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("selberg_majorant: delta in (0,1]");
    const double scale = 1.0 / delta;
    return 0.5 * (beurling_B((u + 0.5) * scale, n_cut) + beurling_B((0.5 - u) * scale, n_cut));
}

PartitionFamily::PartitionFamily(PartitionParams params, double half_range) : params_(params) {
    if (!(params.delta > 0.0 && params.delta <= 1.0))
        throw std::invalid_argument("PartitionFamily: delta in (0,1]");
    if (params.N < 1) throw std::invalid_argument("PartitionFamily: N >= 1");

    half_range_ = half_range > 0.0 ? half_range : 2.0 * params.N + 16.0;
    // b''' is bounded by ~1.3 (2 pi / delta)^3; cubic Hermite pieces of the
    // running integral then hit ~1e-9 absolute with this step.
    const double d3 = 1.3 * std::pow(2.0 * kPi / params.delta, 3.0);
    step_ = std::pow(384.0 * 1e-9 / d3, 0.25);
    step_ = std::clamp(step_, 1e-5, 0.02);
    n_cells_ = static_cast<std::int64_t>(std::ceil(half_range_ / step_));
    half_range_ = static_cast<double>(n_cells_) * step_;

    const std::int64_t n_nodes = 2 * n_cells_ + 1;
    bval_.resize(static_cast<std::size_t>(n_nodes));
    cum_.resize(static_cast<std::size_t>(n_nodes));
    for (std::int64_t i = 0; i < n_nodes; ++i)
        bval_[static_cast<std::size_t>(i)] = b_fast(params.delta, node(i));
    cum_[0] = 0.0;
    for (std::int64_t i = 1; i < n_nodes; ++i)
        cum_[static_cast<std::size_t>(i)] = cum_[static_cast<std::size_t>(i - 1)] +
                                            gl7_b(params.delta, node(i - 1), node(i));
}

double PartitionFamily::b_integral(double y) const {
    const double zero = cum_[static_cast<std::size_t>(n_cells_)];
    if (y < -half_range_)
        return -zero - b_integral_direct(params_.delta, y, -half_range_);
    if (y > half_range_)
        return cum_.back() - zero + b_integral_direct(params_.delta, half_range_, y);

    const double pos = (y + half_range_) / step_;
    std::int64_t i = static_cast<std::int64_t>(pos);
    if (i >= 2 * n_cells_) i = 2 * n_cells_ - 1;
    const double t = (y - node(i)) / step_;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    const std::size_t k = static_cast<std::size_t>(i);
    const double c = cum_[k] * h00 + step_ * bval_[k] * h10 + cum_[k + 1] * h01 +
                     step_ * bval_[k + 1] * h11;
    return c - zero;
}

double PartitionFamily::g(double x) const {
    return (b_integral(x + 0.5) - b_integral(x - 0.5)) / (1.0 + params_.delta);
}

double PartitionFamily::window_sum(double x) const {
    const double half = params_.N + 0.5;
    return (b_integral(x + half) - b_integral(x - half)) / (1.0 + params_.delta);
}

double PartitionFamily::g_cell(int j, double x) const {
    if (j == params_.N + 1) return 1.0 - window_sum(x);
    if (j < -params_.N || j > params_.N)
        throw std::invalid_argument("PartitionFamily: cell index out of range");
    return g(x - static_cast<double>(j));
}

PartitionFamily::Eval PartitionFamily::eval_all(double x) const {
    Eval out;
    out.g_j.resize(static_cast<std::size_t>(2 * params_.N + 1));
    double acc = 0.0;
    for (int j = -params_.N; j <= params_.N; ++j) {
        const double v = g(x - static_cast<double>(j));
        out.g_j[static_cast<std::size_t>(j + params_.N)] = v;
        acc += v;
    }
    out.g_rest = 1.0 - acc;
    return out;
}

double g_by_quadrature(double delta, double x, double tol) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("g_by_quadrature: delta in (0,1]");
    // Composite GL-7 with cell-halving until two refinements agree.
    double prev = 0.0;
    for (int cells = std::max(4, static_cast<int>(std::ceil(4.0 / delta)));; cells *= 2) {
        const double h = 1.0 / cells;
        double s = 0.0;
        for (int i = 0; i < cells; ++i)
            s += gl7_b(delta, x - 0.5 + i * h, x - 0.5 + (i + 1) * h);
        s /= (1.0 + delta);
        if (cells > 8 && std::abs(s - prev) < tol) return s;
        prev = s;
        if (cells > (1 << 20)) return s;
    }
}

double derivative_bound_ratio(const PartitionFamily& family, int l,
                              std::span<const double> grid, double fd_step) {
    if (l < 1 || l > 4) throw std::invalid_argument("derivative_bound_ratio: l in 1..4");
    const double delta = family.params().delta;
    const double h = fd_step > 0.0 ? fd_step : delta / 20.0;

    auto deriv = [&](double x) {
        const auto& f = family;
        switch (l) {
            case 1: return (f.g(x + h) - f.g(x - h)) / (2.0 * h);
            case 2: return (f.g(x + h) - 2.0 * f.g(x) + f.g(x - h)) / (h * h);
            case 3:
                return (f.g(x + 2.0 * h) - 2.0 * f.g(x + h) + 2.0 * f.g(x - h) -
                        f.g(x - 2.0 * h)) /
                       (2.0 * h * h * h);
            default:
                return (f.g(x + 2.0 * h) - 4.0 * f.g(x + h) + 6.0 * f.g(x) - 4.0 * f.g(x - h) +
                        f.g(x - 2.0 * h)) /
                       (h * h * h * h);
        }
    };

    const double bound = std::pow(2.0 * kPi / delta, l + 1) / (kPi * (l + 1));
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, std::abs(deriv(x)) / bound);
    return worst;
}

ConditioningPlan select_parameters(double x, double r) {
    if (!(x >= 1.0 && x <= r)) throw std::invalid_argument("select_parameters: need 1 <= x <= r");
    ConditioningPlan plan;
    plan.L = std::min(x, r / x);
    if (plan.L < 10.0) throw std::invalid_argument("select_parameters: plan refused, min(x, r/x) < 10");

    const double target = std::exp(std::pow(std::log(plan.L), 1.0 / 6.0));
    std::int64_t p = static_cast<std::int64_t>(std::floor(target));
    if (static_cast<double>(p) >= target) --p;
    plan.P = std::max<std::int64_t>(p, 2);

    const double lp = std::log(static_cast<double>(plan.P));
    plan.M = 2 * static_cast<int>(std::ceil(std::pow(lp, 1.02)));
    plan.N = std::max(1, static_cast<int>(std::ceil(1.2 * std::log(lp))));
    plan.delta = std::min(1.0, std::pow(lp, -1.3));
    plan.feasible = 6500.0 * std::pow(lp, 5.64) * std::log(lp) < std::log(r) - std::log(x);
    return plan;
}

} // namespace momentlab::partition
