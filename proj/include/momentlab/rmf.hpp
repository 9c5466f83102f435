#pragma once

// Steinhaus random multiplicative functions: unit-modulus values on primes,
// extended completely multiplicatively, sampled by a counter-based generator
// keyed on (master seed, sample index, prime). Samples are independent and
// reproducible, so Monte-Carlo runs parallelize without a shared stream.

#include "momentlab/arith.hpp"
#include "momentlab/estimate.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace momentlab::partition {
class PartitionFamily;
}

namespace momentlab::rmf {

using cd = std::complex<double>;

struct RmfSample {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;
    std::int64_t prime_limit = 0;
    const arith::PrimeTable* table = nullptr;   // borrowed; must outlive the sample
    std::vector<cd> prime_values;               // aligned with table->primes

    cd value_at_prime(std::int64_t p) const;    // p must be prime and <= prime_limit
};

RmfSample sample_rmf(const arith::PrimeTable& table, std::uint64_t master_seed,
                     std::uint64_t sample_index);

// Sum of f(n) over n <= x; the f(n) array is materialized in one O(x) pass.
cd evaluate_sum(const RmfSample& sample, std::int64_t x);

// Partial sums at several cutoffs from a single pass (for sweeps that reuse
// one sample across x values).
std::vector<cd> evaluate_prefix_sums(const RmfSample& sample, std::span<const std::int64_t> xs);

// Sum of f(n) over P-smooth n <= x.
cd smooth_restricted_sum(const RmfSample& sample, std::int64_t x, std::int64_t P);

// Monte-Carlo estimate of the 2q-th absolute moment of the partial sum.
MomentEstimate rmf_moment(const arith::PrimeTable& table, std::int64_t x, double q,
                          std::int64_t n_samples, std::uint64_t seed);

// Per-prime coefficient sets for the conditioning sums
//   S_k = Re sum_p ( a1(p) v(p) / p^{1/2 + i k h} + a2(p) v(p)^2 / p^{1 + 2 i k h} ),
// where h = 1/(log P)^{1.01} and v is either a character or an rmf sample.
struct PrimeSumCoeffs {
    std::int64_t P = 0;
    std::vector<std::int64_t> primes;   // primes <= P, ascending
    std::vector<cd> a1;
    std::vector<cd> a2;

    double grid_spacing() const;        // 1/(log P)^{1.01}
};

// a1 = 1, a2 = 1/2 on every prime <= P.
PrimeSumCoeffs standard_prime_coeffs(const arith::PrimeTable& table, std::int64_t P);

// Twisted variant for a unimodular multiplicative h: primes 2 and 3 dropped,
// a1(p) = h(p), a2(p) = h(p^2) - h(p)^2/2.
PrimeSumCoeffs twisted_prime_coeffs(const arith::PrimeTable& table, std::int64_t P,
                                    const std::vector<cd>& h_p, const std::vector<cd>& h_p2);

double prime_sums_rmf(const RmfSample& sample, const PrimeSumCoeffs& coeffs, int k_index);

// Conditioned Monte-Carlo cell: weight w = prod_i g_{j(i)}(S_i(f)), optionally
// paired with |sum_{n<=x} f(n)|^2.
struct ConditionedCell {
    double sigma = 0.0;
    double sigma_se = 0.0;
    double conditional_value = 0.0;
    double conditional_se = 0.0;
    bool empty = false;
};

// Monte-Carlo estimate of sigma^rand(j) = E prod_i g_{j(i)}(S_i(f)) and, when
// window_x > 0, of the conditioned second moment
// E^{j,rand} |sum_{n<=window_x} f(n)|^2. The index vector j covers i = -M..M;
// entries lie in [-N, N+1] with N+1 the remainder cell.
ConditionedCell conditioned_average_rmf(const arith::PrimeTable& table,
                                        const PrimeSumCoeffs& coeffs,
                                        const partition::PartitionFamily& family,
                                        std::span<const int> j, std::int64_t window_x,
                                        std::int64_t n_samples, std::uint64_t seed);

} // namespace momentlab::rmf

