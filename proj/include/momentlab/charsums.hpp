#pragma once

// Bulk character-sum tables and their statistics for a prime modulus r.
//
// Characters are indexed by k in [0, r-2] through chi_k(g^a) = e(k*a/(r-1)),
// so the full table of sums over characters is one histogram over
// discrete-log classes followed by one length-(r-1) transform. Index 0 is
// the principal character; chi_k(-1) = (-1)^k, so k's parity is the
// character's parity.

#include "momentlab/arith.hpp"
#include "momentlab/estimate.hpp"
#include "momentlab/rmf.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace momentlab::partition {
class PartitionFamily;
}

namespace momentlab::charsums {

using cd = std::complex<double>;

// Multiplicative coefficient families c(n) with |c| <= 1, materialized from
// values on prime powers.
class CoefficientSpec {
public:
    static CoefficientSpec unit();
    static CoefficientSpec moebius();
    static CoefficientSpec liouville();
    // value(p, a) = c(p^a); modulus must not exceed 1.
    static CoefficientSpec custom(std::string id, std::function<cd(std::int64_t, int)> value);

    const std::string& id() const { return id_; }
    std::vector<cd> materialize(std::int64_t x) const;  // c(1..x), index n

private:
    enum class Kind { Unit, Moebius, Liouville, Custom };
    CoefficientSpec(Kind kind, std::string id, std::function<cd(std::int64_t, int)> value)
        : kind_(kind), id_(std::move(id)), value_(std::move(value)) {}

    Kind kind_;
    std::string id_;
    std::function<cd(std::int64_t, int)> value_;
};

struct CharacterSumTable {
    std::int64_t r = 0;
    std::int64_t x = 0;
    std::string coeff_id;
    std::vector<cd> sums;  // index k in [0, r-2]
};

// sums[k] = sum_{n<=x} c(n) chi_k(n); requires 1 <= x <= r-1 (periodicity
// makes larger x redundant).
CharacterSumTable bulk_character_sums(const arith::ModulusContext& ctx, std::int64_t x,
                                      const CoefficientSpec& coeffs = CoefficientSpec::unit());

// Exact average of |sums[k]|^{2q} over characters, optionally without the
// principal one. Accumulation is fixed-order pairwise.
MomentEstimate empirical_moment(const CharacterSumTable& table, double q, bool exclude_principal);

enum class Parity { Even, Odd };

struct ThetaValues {
    std::int64_t r = 0;
    Parity parity = Parity::Even;
    std::int64_t truncation = 0;        // series cut K
    std::vector<std::int64_t> char_index;  // k values of this parity, ascending
    std::vector<cd> values;                // theta(1, chi_k)
};

// theta(1, chi) for every character of the given parity, via a weighted
// discrete-log histogram and one transform. The Gaussian series is cut at
// K = ceil(sqrt(r*ln(1/eps)/pi)) + 1 with eps = 1e-18; trunc_scale
// multiplies K (for truncation-stability checks).
ThetaValues theta_values(const arith::ModulusContext& ctx, Parity parity, double trunc_scale = 1.0);

// Average of |theta|^{2q} over the parity class, normalized by r-1.
MomentEstimate theta_moment(const ThetaValues& values, double q, bool exclude_principal = false);

// Fraction of characters with |sums[k]| >= threshold, where threshold is
// lambda*sqrt(x)/(loglog(10L))^{1/4} with L = min(x, r/x) when
// deviation_normalized, else the plain lambda*sqrt(x).
double tail_fraction(const CharacterSumTable& table, double lambda,
                     bool deviation_normalized = true);

// Conditioning sums over all characters:
// S[m] = Re sum_p ( a1(p) chi_m(p)/p^{1/2+i k h} + a2(p) chi_m(p^2)/p^{1+2 i k h} ),
// h = 1/(log P)^{1.01}. Requires P < r.
std::vector<double> prime_sums_char(const arith::ModulusContext& ctx,
                                    const rmf::PrimeSumCoeffs& coeffs, int k_index);

// Exact character average of (sum_p a(p) chi(p)/sqrt(p))^{m1} * conj(...)^{m2}
// against the combinatorial Steinhaus expectation (multiset matching).
// Requires P^{max(m1,m2)} < r so congruences are equalities.
struct PolynomialMomentCheck {
    cd char_side;
    cd rmf_side;
    double abs_diff = 0.0;
};
PolynomialMomentCheck polynomial_moment_check(const arith::ModulusContext& ctx,
                                              const arith::PrimeTable& table, std::int64_t P,
                                              std::span<const cd> a_p, int m1, int m2);

// Precomputed S_i(chi) arrays for i = -M..M, shared across conditioning cells.
struct CharConditioning {
    int M = 0;
    std::vector<std::vector<double>> s;  // s[i+M][character]
};
CharConditioning build_char_conditioning(const arith::ModulusContext& ctx,
                                         const rmf::PrimeSumCoeffs& coeffs, int M);

struct ConditionedCellChar {
    double sigma = 0.0;
    double conditional_value = 0.0;
    bool empty = false;
};

// sigma(j) = exact character average of prod_i g_{j(i)}(S_i(chi)); when
// window is non-null, also E^j |window sum|^2 = sigma^{-1} * average of the
// weighted |sums|^2.
ConditionedCellChar conditioned_average_char(const CharConditioning& cond,
                                             const partition::PartitionFamily& family,
                                             std::span<const int> j,
                                             const CharacterSumTable* window = nullptr);

} // namespace momentlab::charsums
