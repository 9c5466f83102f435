#pragma once

// Random Euler products F_P(s) = prod_{p<=P} (1 - f(p) p^{-s})^{-1} for a
// Steinhaus sample f, their low moments on the critical line (discrete grid
// and short-integral variants), the grid-vs-integral discretization defect,
// and a Parseval identity check for Dirichlet series.
//
// Products are evaluated as exp of a sum of principal logarithms; since
// |p^{-s}| < 1 for Re s > 0 no factor can vanish.

#include "momentlab/arith.hpp"
#include "momentlab/estimate.hpp"
#include "momentlab/rmf.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace momentlab::chaos {

using cd = std::complex<double>;

cd euler_product_at(const rmf::RmfSample& sample, std::int64_t P, cd s);

// Grid convention: D = ceil((log P)^{1.01}) points per unit, spacing 1/D,
// indices |k| <= K with K = ceil((log P)^{1.01} / 2).
struct GridShape {
    std::int64_t P = 0;
    double spacing = 0.0;
    int k_max = 0;
};
GridShape grid_shape(std::int64_t P);

// |F_P(1/2 + i k*spacing)|^2 for one sample across the grid.
struct EulerGrid {
    GridShape shape;
    std::vector<double> values;  // index k + k_max
};
EulerGrid euler_grid(const rmf::RmfSample& sample, std::int64_t P);

// E (spacing * sum_{|k|<=K} |F(1/2 + i k spacing)|^2)^q by Monte Carlo.
// The cited moment range is 2/3 <= q <= 1; smaller q is accepted (flagged
// through the out_of_range output when requested).
MomentEstimate chaos_discrete_moment(const arith::PrimeTable& table, std::int64_t P, double q,
                                     std::int64_t n_samples, std::uint64_t seed,
                                     bool* q_below_cited_range = nullptr);

// E (int_{-1/2}^{1/2} |F(1/2+it)|^2 dt)^q with a composite midpoint rule of
// step quad_step (0 picks the default 1/(10 log P); steps above
// 1/(10 log P) are rejected as too coarse for the integrand's scale).
MomentEstimate chaos_integral_moment(const arith::PrimeTable& table, std::int64_t P, double q,
                                     std::int64_t n_samples, double quad_step, std::uint64_t seed);

// Same integrand over the grid's covered interval |t| <= (2K+1)*spacing/2,
// for grid-vs-integral comparisons.
MomentEstimate chaos_covered_integral_moment(const arith::PrimeTable& table, std::int64_t P,
                                             double q, std::int64_t n_samples, double quad_step,
                                             std::uint64_t seed);

// Monte-Carlo estimate of E sum_{|k|<=K} int_{|t|<=spacing/2}
// |F(1/2 + i k spacing + it) - F(1/2 + i k spacing)|^2 dt.
MomentEstimate discretization_defect(const arith::PrimeTable& table, std::int64_t P,
                                     std::int64_t n_samples, std::uint64_t seed);

// Exact mean of the defect through the smooth-series identity
// E|F(s+it)-F(s)|^2 = sum_{n P-smooth} |n^{-it}-1|^2 / n, evaluated from the
// Euler product of the harmonic series.
double discretization_defect_mean(const arith::PrimeTable& table, std::int64_t P);

// prod_{p<=P} (1-1/p)^{-1} = E |F_P(1/2+it)|^2 (any t).
double smooth_harmonic_sum(const arith::PrimeTable& table, std::int64_t P);

// Parseval for the Dirichlet series of a finite sequence (a_n), n <= n_max:
//   lhs = int_0^infty |sum_{n<=x} a_n|^2 x^{-1-2sigma} dx   (closed form)
//   rhs = (1/2pi) int_{-t_max}^{t_max} |A(sigma+it)/(sigma+it)|^2 dt
// tail_bound bounds the discarded |t| > t_max mass.
struct ParsevalCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_diff = 0.0;
    double tail_bound = 0.0;
};
ParsevalCheck parseval_check(std::span<const cd> a, double sigma, double t_max);

} // namespace momentlab::chaos
