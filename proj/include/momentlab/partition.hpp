#pragma once

// Smooth partition of unity built from Beurling-Selberg majorants:
//   B(z)   extremal majorant of sgn(z);
//   b(u)   majorant of the indicator of [-1/2, 1/2], integral 1 + delta;
//   g(x)   = (1+delta)^{-1} * integral of b over [x-1/2, x+1/2];
//   g_j(x) = g(x - j) for |j| <= N, remainder cell g_{N+1} = 1 - sum g_j.
//
// A PartitionFamily precomputes the running integral of b on a grid (cubic
// Hermite pieces, b itself supplies exact derivatives), giving g to ~1e-9
// absolute. The cache is built in the constructor and read-only afterwards.

#include <cstdint>
#include <span>
#include <vector>

namespace momentlab::partition {

// Beurling's extremal function, evaluated from its partial-fraction series
// truncated at n_cut terms with an asymptotic tail correction.
double beurling_B(double z, int n_cut = 1000);

// Selberg majorant of 1_{|u| <= 1/2} with Fourier transform supported in
// [-1/delta, 1/delta]: b(u) = (B((u+1/2)/delta) + B((1/2-u)/delta)) / 2.
double selberg_majorant(double delta, double u, int n_cut = 1000);

struct PartitionParams {
    double delta = 0.1;   // in (0, 1]
    int N = 5;            // >= 1
};

class PartitionFamily {
public:
    explicit PartitionFamily(PartitionParams params, double half_range = 0.0);

    const PartitionParams& params() const { return params_; }

    double g(double x) const;
    // Cell j in [-N, N+1]; j = N+1 is the remainder 1 - sum_{|i|<=N} g_i(x).
    double g_cell(int j, double x) const;
    // sum_{|j| <= N} g(x - j), evaluated as one window integral of b.
    double window_sum(double x) const;

    struct Eval {
        std::vector<double> g_j;  // index 0 -> j = -N
        double g_rest = 0.0;
    };
    Eval eval_all(double x) const;

    // Running integral of b from 0 to y (cached range, direct quadrature
    // outside it).
    double b_integral(double y) const;

    double cache_half_range() const { return half_range_; }

private:
    double node(std::int64_t i) const { return -half_range_ + static_cast<double>(i) * step_; }

    PartitionParams params_;
    double half_range_;
    double step_ = 0.0;
    std::int64_t n_cells_ = 0;       // cells per side
    std::vector<double> cum_;        // integral of b from -half_range to node
    std::vector<double> bval_;       // b at nodes
};

// Direct adaptive quadrature of the defining convolution, used as the
// independent route for cache verification and for far-out arguments.
double g_by_quadrature(double delta, double x, double tol = 1e-10);

// Max over the grid of |g^(l)(x)| / ((2*pi/delta)^(l+1) / (pi*(l+1))), with
// the l-th derivative taken by central finite differences (step fd_step,
// default tuned to delta).
double derivative_bound_ratio(const PartitionFamily& family, int l,
                              std::span<const double> grid, double fd_step = 0.0);

// Conditioning-experiment parameters derived from (x, r).
struct ConditioningPlan {
    double L = 0.0;        // min(x, r/x)
    std::int64_t P = 0;    // largest integer below exp(log^{1/6} L)
    int M = 0;             // 2 * ceil(log^{1.02} P)
    int N = 0;             // ceil(1.2 * loglog P)
    double delta = 0.0;    // log^{-1.3} P
    bool feasible = false; // P^{6500 log^{4.64}P loglog P} < r/x
};

ConditioningPlan select_parameters(double x, double r);

} // namespace momentlab::partition
