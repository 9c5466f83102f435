#include "momentlab/rmf.hpp"

#include "momentlab/parallel.hpp"
#include "momentlab/partition.hpp"
#include "momentlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace momentlab::rmf {

cd RmfSample::value_at_prime(std::int64_t p) const {
    const auto it = std::lower_bound(table->primes.begin(), table->primes.end(), p);
    if (it == table->primes.end() || *it != p)
        throw std::invalid_argument("value_at_prime: not a prime in the sampled range");
    return prime_values[static_cast<std::size_t>(it - table->primes.begin())];
}

RmfSample sample_rmf(const arith::PrimeTable& table, std::uint64_t master_seed,
                     std::uint64_t sample_index) {
    RmfSample s;
    s.master_seed = master_seed;
    s.sample_index = sample_index;
    s.prime_limit = table.limit;
    s.table = &table;
    s.prime_values.resize(table.primes.size());
    const rng::Key key{master_seed, sample_index};
    for (std::size_t i = 0; i < table.primes.size(); ++i)
        s.prime_values[i] = rng::unit_circle(key, static_cast<std::uint64_t>(table.primes[i]));
    return s;
}

namespace {

// f(n) for all n <= x in one pass: f at primes comes straight from the
// sample, composites use complete multiplicativity via the spf table.
std::vector<cd> materialize_values(const RmfSample& sample, std::int64_t x) {
    if (x < 1 || x > sample.prime_limit)
        throw std::invalid_argument("rmf: x must be in [1, prime_limit]");
    const auto& spf = sample.table->spf;
    std::vector<cd> f(static_cast<std::size_t>(x) + 1);
    f[1] = {1.0, 0.0};
    std::size_t prime_index = 0;
    for (std::int64_t n = 2; n <= x; ++n) {
        const std::uint32_t p = spf[static_cast<std::size_t>(n)];
        if (p == n) {
            f[static_cast<std::size_t>(n)] = sample.prime_values[prime_index++];
        } else {
            f[static_cast<std::size_t>(n)] =
                f[p] * f[static_cast<std::size_t>(n / p)];
        }
    }
    return f;
}

} // namespace

cd evaluate_sum(const RmfSample& sample, std::int64_t x) {
    const auto f = materialize_values(sample, x);
    cd s{0.0, 0.0};
    for (std::int64_t n = 1; n <= x; ++n) s += f[static_cast<std::size_t>(n)];
    return s;
}

std::vector<cd> evaluate_prefix_sums(const RmfSample& sample, std::span<const std::int64_t> xs) {
    if (xs.empty()) return {};
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw std::invalid_argument("evaluate_prefix_sums: cutoffs must be ascending");
    const std::int64_t xmax = xs.back();
    const auto f = materialize_values(sample, xmax);
    std::vector<cd> out(xs.size());
    cd s{0.0, 0.0};
    std::size_t next = 0;
    for (std::int64_t n = 1; n <= xmax; ++n) {
        s += f[static_cast<std::size_t>(n)];
        while (next < xs.size() && xs[next] == n) out[next++] = s;
    }
    while (next < xs.size()) out[next++] = s;  // duplicates of xmax
    return out;
}

cd smooth_restricted_sum(const RmfSample& sample, std::int64_t x, std::int64_t P) {
    if (P < 1 || P > x) throw std::invalid_argument("smooth_restricted_sum: need 1 <= P <= x");
    const auto f = materialize_values(sample, x);
    const auto& spf = sample.table->spf;
    std::vector<char> smooth(static_cast<std::size_t>(x) + 1, 0);
    smooth[1] = 1;
    cd s{1.0, 0.0};
    for (std::int64_t n = 2; n <= x; ++n) {
        const std::uint32_t p = spf[static_cast<std::size_t>(n)];
        if (p <= P && smooth[static_cast<std::size_t>(n / p)]) {
            smooth[static_cast<std::size_t>(n)] = 1;
            s += f[static_cast<std::size_t>(n)];
        }
    }
    return s;
}

MomentEstimate rmf_moment(const arith::PrimeTable& table, std::int64_t x, double q,
                          std::int64_t n_samples, std::uint64_t seed) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("rmf_moment: q in [0,1]");
    if (n_samples < 2) throw std::invalid_argument("rmf_moment: n_samples >= 2");
    if (q == 0.0) return {q, 1.0, 0.0, n_samples, Method::ExactAverage};

    std::vector<double> powers(static_cast<std::size_t>(n_samples));
    parallel::for_chunks(n_samples, 64, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto sample = sample_rmf(table, seed, static_cast<std::uint64_t>(i));
            const cd s = evaluate_sum(sample, x);
            powers[static_cast<std::size_t>(i)] = std::pow(std::norm(s), q);
        }
    });
    const auto [mean, se] = mean_and_se(powers);
    return {q, mean, se, n_samples, Method::MonteCarlo};
}

double PrimeSumCoeffs::grid_spacing() const {
    return 1.0 / std::pow(std::log(static_cast<double>(P)), 1.01);
}

PrimeSumCoeffs standard_prime_coeffs(const arith::PrimeTable& table, std::int64_t P) {
    if (P < 2 || P > table.limit) throw std::invalid_argument("standard_prime_coeffs: P out of range");
    PrimeSumCoeffs c;
    c.P = P;
    for (std::int64_t p : table.primes) {
        if (p > P) break;
        c.primes.push_back(p);
        c.a1.push_back({1.0, 0.0});
        c.a2.push_back({0.5, 0.0});
    }
    return c;
}

PrimeSumCoeffs twisted_prime_coeffs(const arith::PrimeTable& table, std::int64_t P,
                                    const std::vector<cd>& h_p, const std::vector<cd>& h_p2) {
    if (P < 2 || P > table.limit) throw std::invalid_argument("twisted_prime_coeffs: P out of range");
    PrimeSumCoeffs c;
    c.P = P;
    std::size_t i = 0;
    for (std::int64_t p : table.primes) {
        if (p > P) break;
        if (p >= 5) {
            c.primes.push_back(p);
            const cd hp = h_p[i];
            const cd hp2 = h_p2[i];
            if (std::abs(hp) > 1.0 + 1e-12 || std::abs(hp2) > 1.0 + 1e-12)
                throw std::invalid_argument("twisted_prime_coeffs: coefficients must have modulus <= 1");
            c.a1.push_back(hp);
            c.a2.push_back(hp2 - 0.5 * hp * hp);
        }
        ++i;
    }
    return c;
}

double prime_sums_rmf(const RmfSample& sample, const PrimeSumCoeffs& coeffs, int k_index) {
    const double theta = static_cast<double>(k_index) * coeffs.grid_spacing();
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.primes.size(); ++i) {
        const double p = static_cast<double>(coeffs.primes[i]);
        const double lp = std::log(p);
        const cd v = sample.value_at_prime(coeffs.primes[i]);
        const cd rot1 = std::polar(1.0 / std::sqrt(p), -theta * lp);
        const cd rot2 = std::polar(1.0 / p, -2.0 * theta * lp);
        acc += (coeffs.a1[i] * v * rot1).real() + (coeffs.a2[i] * v * v * rot2).real();
    }
    return acc;
}

ConditionedCell conditioned_average_rmf(const arith::PrimeTable& table,
                                        const PrimeSumCoeffs& coeffs,
                                        const partition::PartitionFamily& family,
                                        std::span<const int> j, std::int64_t window_x,
                                        std::int64_t n_samples, std::uint64_t seed) {
    if (j.size() % 2 == 0) throw std::invalid_argument("conditioned_average_rmf: j must cover -M..M");
    if (n_samples < 2) throw std::invalid_argument("conditioned_average_rmf: n_samples >= 2");
    const int M = static_cast<int>(j.size() / 2);

    std::vector<double> weights(static_cast<std::size_t>(n_samples));
    std::vector<double> weighted(static_cast<std::size_t>(n_samples), 0.0);
    parallel::for_chunks(n_samples, 16, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t s = lo; s < hi; ++s) {
            const auto sample = sample_rmf(table, seed, static_cast<std::uint64_t>(s));
            double w = 1.0;
            for (int i = -M; i <= M; ++i) {
                const double sk = prime_sums_rmf(sample, coeffs, i);
                w *= family.g_cell(j[static_cast<std::size_t>(i + M)], sk);
                if (w == 0.0) break;
            }
            weights[static_cast<std::size_t>(s)] = w;
            if (window_x > 0)
                weighted[static_cast<std::size_t>(s)] = w * std::norm(evaluate_sum(sample, window_x));
        }
    });

    ConditionedCell cell;
    const auto ws = mean_and_se(weights);
    cell.sigma = ws.mean;
    cell.sigma_se = ws.se;
    if (!(std::abs(ws.mean) > 1e-300)) {
        cell.empty = true;
        return cell;
    }
    if (window_x > 0) {
        const auto num = mean_and_se(weighted);
        cell.conditional_value = num.mean / ws.mean;
        const double rel_num = num.mean != 0.0 ? num.se / std::abs(num.mean) : 0.0;
        const double rel_den = ws.se / std::abs(ws.mean);
        cell.conditional_se = std::abs(cell.conditional_value) *
                              std::sqrt(rel_num * rel_num + rel_den * rel_den);
    } else {
        cell.conditional_value = 1.0;
        cell.conditional_se = 0.0;
    }
    return cell;
}

} // namespace momentlab::rmf
