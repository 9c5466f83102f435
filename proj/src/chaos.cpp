#include "momentlab/chaos.hpp"

#include "momentlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace momentlab::chaos {

namespace {

constexpr double kPi = std::numbers::pi;

// Per-sample evaluation state: primes <= P with log and 1/sqrt values.
struct ProductBasis {
    std::vector<std::int64_t> primes;
    std::vector<double> log_p;
    std::vector<double> inv_sqrt_p;
};

ProductBasis product_basis(const arith::PrimeTable& table, std::int64_t P) {
    if (P > table.limit) throw std::invalid_argument("chaos: P exceeds the prime table");
    ProductBasis b;
    for (std::int64_t p : table.primes) {
        if (p > P) break;
        b.primes.push_back(p);
        b.log_p.push_back(std::log(static_cast<double>(p)));
        b.inv_sqrt_p.push_back(1.0 / std::sqrt(static_cast<double>(p)));
    }
    return b;
}

// |F(1/2+it)|^2 = exp(-2 Re sum_p log(1 - f(p) p^{-1/2-it})).
double abs2_on_critical_line(const ProductBasis& basis, std::span<const cd> fp, double t) {
    double re_log = 0.0;
    for (std::size_t i = 0; i < basis.primes.size(); ++i) {
        const cd z = fp[i] * std::polar(basis.inv_sqrt_p[i], -t * basis.log_p[i]);
        re_log += 0.5 * std::log1p(std::norm(z) - 2.0 * z.real());  // log|1-z|
    }
    return std::exp(-2.0 * re_log);
}

cd value_on_critical_line(const ProductBasis& basis, std::span<const cd> fp, double t) {
    cd log_sum{0.0, 0.0};
    for (std::size_t i = 0; i < basis.primes.size(); ++i) {
        const cd z = fp[i] * std::polar(basis.inv_sqrt_p[i], -t * basis.log_p[i]);
        log_sum -= std::log(cd{1.0, 0.0} - z);
    }
    return std::exp(log_sum);
}

std::vector<cd> sample_prime_values(const arith::PrimeTable& table, const ProductBasis& basis,
                                    std::uint64_t seed, std::uint64_t index) {
    const auto sample = rmf::sample_rmf(table, seed, index);
    std::vector<cd> fp(basis.primes.size());
    for (std::size_t i = 0; i < basis.primes.size(); ++i) fp[i] = sample.prime_values[i];
    return fp;
}

double default_quad_step(std::int64_t P) {
    return 1.0 / (10.0 * std::log(static_cast<double>(P)));
}

// Composite midpoint rule over [lo, hi] with at most `step`-sized cells.
template <class F>
double midpoint_integral(double lo, double hi, double step, F&& f) {
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / step)));
    const double h = (hi - lo) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f(lo + (i + 0.5) * h);
    return s * h;
}

MomentEstimate mc_power_mean(std::span<const double> per_sample, double q) {
    std::vector<double> powers(per_sample.size());
    for (std::size_t i = 0; i < per_sample.size(); ++i)
        powers[i] = q == 1.0 ? per_sample[i] : std::pow(per_sample[i], q);
    const auto [mean, se] = mean_and_se(powers);
    return {q, mean, se, static_cast<std::int64_t>(per_sample.size()), Method::MonteCarlo};
}

} // namespace

cd euler_product_at(const rmf::RmfSample& sample, std::int64_t P, cd s) {
    if (s.real() <= 0.0) throw std::invalid_argument("euler_product_at: need Re s > 0");
    if (P > sample.prime_limit) throw std::invalid_argument("euler_product_at: P beyond sample");
    cd log_sum{0.0, 0.0};
    for (std::size_t i = 0; i < sample.table->primes.size(); ++i) {
        const std::int64_t p = sample.table->primes[i];
        if (p > P) break;
        const cd z = sample.prime_values[i] *
                     std::exp(-s * std::log(static_cast<double>(p)));
        log_sum -= std::log(cd{1.0, 0.0} - z);
    }
    return std::exp(log_sum);
}

GridShape grid_shape(std::int64_t P) {
    if (P < 2) throw std::invalid_argument("grid_shape: P >= 2");
    GridShape g;
    g.P = P;
    const double lp = std::pow(std::log(static_cast<double>(P)), 1.01);
    g.spacing = 1.0 / std::ceil(lp);
    g.k_max = static_cast<int>(std::ceil(lp / 2.0));
    return g;
}

EulerGrid euler_grid(const rmf::RmfSample& sample, std::int64_t P) {
    const auto shape = grid_shape(P);
    const auto basis = product_basis(*sample.table, P);
    std::vector<cd> fp(basis.primes.size());
    for (std::size_t i = 0; i < basis.primes.size(); ++i) fp[i] = sample.prime_values[i];

    EulerGrid grid;
    grid.shape = shape;
    grid.values.resize(static_cast<std::size_t>(2 * shape.k_max + 1));
    for (int k = -shape.k_max; k <= shape.k_max; ++k)
        grid.values[static_cast<std::size_t>(k + shape.k_max)] =
            abs2_on_critical_line(basis, fp, k * shape.spacing);
    return grid;
}

MomentEstimate chaos_discrete_moment(const arith::PrimeTable& table, std::int64_t P, double q,
                                     std::int64_t n_samples, std::uint64_t seed,
                                     bool* q_below_cited_range) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("chaos_discrete_moment: q in [0,1]");
    if (n_samples < 2) throw std::invalid_argument("chaos_discrete_moment: n_samples >= 2");
    if (q_below_cited_range) *q_below_cited_range = q < 2.0 / 3.0;

    const auto shape = grid_shape(P);
    const auto basis = product_basis(table, P);
    std::vector<double> per_sample(static_cast<std::size_t>(n_samples));
    parallel::for_chunks(n_samples, 32, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto fp = sample_prime_values(table, basis, seed, static_cast<std::uint64_t>(i));
            double acc = 0.0;
            for (int k = -shape.k_max; k <= shape.k_max; ++k)
                acc += abs2_on_critical_line(basis, fp, k * shape.spacing);
            per_sample[static_cast<std::size_t>(i)] = acc * shape.spacing;
        }
    });
    return mc_power_mean(per_sample, q);
}

namespace {

MomentEstimate integral_moment_impl(const arith::PrimeTable& table, std::int64_t P, double q,
                                    std::int64_t n_samples, double quad_step, std::uint64_t seed,
                                    double half_width) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("chaos integral moment: q in [0,1]");
    if (n_samples < 2) throw std::invalid_argument("chaos integral moment: n_samples >= 2");
    const double max_step = default_quad_step(P);
    if (quad_step == 0.0) quad_step = max_step;
    if (quad_step > max_step * (1.0 + 1e-12))
        throw std::invalid_argument("chaos integral moment: quad_step above 1/(10 log P)");

    const auto basis = product_basis(table, P);
    std::vector<double> per_sample(static_cast<std::size_t>(n_samples));
    parallel::for_chunks(n_samples, 32, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto fp = sample_prime_values(table, basis, seed, static_cast<std::uint64_t>(i));
            per_sample[static_cast<std::size_t>(i)] =
                midpoint_integral(-half_width, half_width, quad_step,
                                  [&](double t) { return abs2_on_critical_line(basis, fp, t); });
        }
    });
    return mc_power_mean(per_sample, q);
}

} // namespace

MomentEstimate chaos_integral_moment(const arith::PrimeTable& table, std::int64_t P, double q,
                                     std::int64_t n_samples, double quad_step, std::uint64_t seed) {
    return integral_moment_impl(table, P, q, n_samples, quad_step, seed, 0.5);
}

MomentEstimate chaos_covered_integral_moment(const arith::PrimeTable& table, std::int64_t P,
                                             double q, std::int64_t n_samples, double quad_step,
                                             std::uint64_t seed) {
    const auto shape = grid_shape(P);
    const double half = (2.0 * shape.k_max + 1.0) * shape.spacing / 2.0;
    return integral_moment_impl(table, P, q, n_samples, quad_step, seed, half);
}

MomentEstimate discretization_defect(const arith::PrimeTable& table, std::int64_t P,
                                     std::int64_t n_samples, std::uint64_t seed) {
    if (n_samples < 2) throw std::invalid_argument("discretization_defect: n_samples >= 2");
    const auto shape = grid_shape(P);
    const auto basis = product_basis(table, P);
    const double step = default_quad_step(P);

    std::vector<double> per_sample(static_cast<std::size_t>(n_samples));
    parallel::for_chunks(n_samples, 16, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto fp = sample_prime_values(table, basis, seed, static_cast<std::uint64_t>(i));
            double acc = 0.0;
            for (int k = -shape.k_max; k <= shape.k_max; ++k) {
                const double t0 = k * shape.spacing;
                const cd center = value_on_critical_line(basis, fp, t0);
                acc += midpoint_integral(-shape.spacing / 2.0, shape.spacing / 2.0, step,
                                         [&](double dt) {
                                             const cd v =
                                                 value_on_critical_line(basis, fp, t0 + dt);
                                             return std::norm(v - center);
                                         });
            }
            per_sample[static_cast<std::size_t>(i)] = acc;
        }
    });
    const auto [mean, se] = mean_and_se(per_sample);
    return {1.0, mean, se, n_samples, Method::MonteCarlo};
}

double smooth_harmonic_sum(const arith::PrimeTable& table, std::int64_t P) {
    double prod = 1.0;
    for (std::int64_t p : table.primes) {
        if (p > P) break;
        prod /= 1.0 - 1.0 / static_cast<double>(p);
    }
    return prod;
}

double discretization_defect_mean(const arith::PrimeTable& table, std::int64_t P) {
    const auto shape = grid_shape(P);
    const auto basis = product_basis(table, P);
    const double full = smooth_harmonic_sum(table, P);

    // E|F(s+it)-F(s)|^2 = 2*sum_n 1/n - 2*Re sum_n n^{-1-it} over P-smooth n,
    // and the t-dependent series is the Euler product at 1+it.
    auto cell_integrand = [&](double t) {
        cd log_sum{0.0, 0.0};
        for (std::size_t i = 0; i < basis.primes.size(); ++i) {
            const cd z = std::polar(1.0 / static_cast<double>(basis.primes[i]),
                                    -t * basis.log_p[i]);
            log_sum -= std::log(cd{1.0, 0.0} - z);
        }
        return 2.0 * full - 2.0 * std::exp(log_sum).real();
    };
    // The integrand is smooth on the cell scale; a fine midpoint rule is exact
    // to well below the comparison tolerances.
    const double integral = midpoint_integral(-shape.spacing / 2.0, shape.spacing / 2.0,
                                              shape.spacing / 400.0, cell_integrand);
    return (2.0 * shape.k_max + 1.0) * integral;
}

ParsevalCheck parseval_check(std::span<const cd> a, double sigma, double t_max) {
    if (sigma <= 0.0) throw std::invalid_argument("parseval_check: sigma > 0");
    if (a.empty()) throw std::invalid_argument("parseval_check: empty sequence");
    const std::size_t n_max = a.size();

    // Left side: partial sums are constant between consecutive integers, so
    // the x-integral telescopes into closed form, including the final piece
    // from n_max to infinity.
    ParsevalCheck out;
    {
        cd running{0.0, 0.0};
        double lhs = 0.0;
        for (std::size_t n = 1; n <= n_max; ++n) {
            running += a[n - 1];
            const double lo = std::pow(static_cast<double>(n), -2.0 * sigma);
            const double hi = n < n_max ? std::pow(static_cast<double>(n + 1), -2.0 * sigma) : 0.0;
            lhs += std::norm(running) * (lo - hi) / (2.0 * sigma);
        }
        out.lhs = lhs;
    }

    // Right side by composite Gauss-Legendre; the integrand oscillates no
    // faster than log(n_max) per unit t.
    {
        static constexpr double kX[5] = {0.1488743389816312108848260, 0.4333953941292471907992659,
                                         0.6794095682990244062343274, 0.8650633666889845107320967,
                                         0.9739065285171717200779640};
        static constexpr double kW[5] = {0.2955242247147528701738930, 0.2692667193099963550912269,
                                         0.2190863625159820439955349, 0.1494513491505805931457763,
                                         0.0666713443086881375935688};
        std::vector<double> log_n(n_max);
        for (std::size_t n = 1; n <= n_max; ++n) log_n[n - 1] = std::log(static_cast<double>(n));

        auto integrand = [&](double t) {
            cd A{0.0, 0.0};
            for (std::size_t n = 1; n <= n_max; ++n)
                A += a[n - 1] * std::polar(std::pow(static_cast<double>(n), -sigma),
                                           -t * log_n[n - 1]);
            return std::norm(A) / (sigma * sigma + t * t);
        };
        const double cell = std::min(0.25, 1.0 / (1.0 + std::log(static_cast<double>(n_max))));
        const int n_cells = static_cast<int>(std::ceil(2.0 * t_max / cell));
        const double h = 2.0 * t_max / n_cells;
        std::vector<double> cell_vals(static_cast<std::size_t>(n_cells));
        parallel::for_chunks(n_cells, 256, [&](std::int64_t, std::int64_t lo_i, std::int64_t hi_i) {
            for (std::int64_t i = lo_i; i < hi_i; ++i) {
                const double lo = -t_max + i * h;
                const double c = lo + 0.5 * h;
                double s = 0.0;
                for (int g = 0; g < 5; ++g)
                    s += kW[g] * (integrand(c + 0.5 * h * kX[g]) + integrand(c - 0.5 * h * kX[g]));
                cell_vals[static_cast<std::size_t>(i)] = s * 0.5 * h;
            }
        });
        out.rhs = pairwise_sum(cell_vals) / (2.0 * kPi);
    }

    // |A(sigma+it)| <= sum |a_n| n^{-sigma} bounds the discarded tail.
    double a_sup = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n)
        a_sup += std::abs(a[n - 1]) * std::pow(static_cast<double>(n), -sigma);
    out.tail_bound = a_sup * a_sup / (kPi * t_max);

    out.rel_diff = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.lhs), 1e-300);
    return out;
}

} // namespace momentlab::chaos
