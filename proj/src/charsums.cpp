#include "momentlab/charsums.hpp"

#include "momentlab/parallel.hpp"
#include "momentlab/partition.hpp"
#include "momentlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace momentlab::charsums {

namespace {

// out[k] = sum_a h[a] e(+k a/L): the forward transform read backwards.
std::vector<cd> group_transform(const std::vector<cd>& hist) {
    const std::size_t L = hist.size();
    std::vector<cd> d = spectral::dft(hist);
    std::vector<cd> out(L);
    out[0] = d[0];
    for (std::size_t k = 1; k < L; ++k) out[k] = d[L - k];
    return out;
}

} // namespace

CoefficientSpec CoefficientSpec::unit() { return {Kind::Unit, "unit", {}}; }
CoefficientSpec CoefficientSpec::moebius() { return {Kind::Moebius, "moebius", {}}; }
CoefficientSpec CoefficientSpec::liouville() { return {Kind::Liouville, "liouville", {}}; }
CoefficientSpec CoefficientSpec::custom(std::string id, std::function<cd(std::int64_t, int)> value) {
    return {Kind::Custom, std::move(id), std::move(value)};
}

std::vector<cd> CoefficientSpec::materialize(std::int64_t x) const {
    if (x < 1) throw std::invalid_argument("CoefficientSpec: x >= 1");
    std::vector<cd> c(static_cast<std::size_t>(x) + 1, cd{0.0, 0.0});
    c[1] = {1.0, 0.0};
    if (kind_ == Kind::Unit) {
        for (std::int64_t n = 2; n <= x; ++n) c[static_cast<std::size_t>(n)] = {1.0, 0.0};
        return c;
    }
    if (x == 1) return c;

    const auto table = arith::sieve(x);
    const auto& spf = table.spf;
    switch (kind_) {
        case Kind::Moebius:
            for (std::int64_t n = 2; n <= x; ++n) {
                const std::uint32_t p = spf[static_cast<std::size_t>(n)];
                const std::int64_t m = n / p;
                c[static_cast<std::size_t>(n)] =
                    (m % p == 0) ? cd{0.0, 0.0} : -c[static_cast<std::size_t>(m)];
            }
            break;
        case Kind::Liouville:
            for (std::int64_t n = 2; n <= x; ++n) {
                const std::uint32_t p = spf[static_cast<std::size_t>(n)];
                c[static_cast<std::size_t>(n)] = -c[static_cast<std::size_t>(n / p)];
            }
            break;
        case Kind::Custom:
            for (std::int64_t n = 2; n <= x; ++n) {
                std::int64_t m = n;
                const std::int64_t p = spf[static_cast<std::size_t>(n)];
                int e = 0;
                while (m % p == 0) {
                    m /= p;
                    ++e;
                }
                const cd v = value_(p, e);
                if (std::abs(v) > 1.0 + 1e-12)
                    throw std::invalid_argument("CoefficientSpec: |c(p^a)| must be <= 1");
                c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(m)] * v;
            }
            break;
        default:
            break;
    }
    return c;
}

CharacterSumTable bulk_character_sums(const arith::ModulusContext& ctx, std::int64_t x,
                                      const CoefficientSpec& coeffs) {
    if (x < 1 || x >= ctx.r)
        throw std::invalid_argument(
            "bulk_character_sums: need 1 <= x <= r-1 (periodicity makes larger x redundant)");

    const auto c = coeffs.materialize(x);
    std::vector<cd> hist(static_cast<std::size_t>(ctx.order()), cd{0.0, 0.0});
    for (std::int64_t n = 1; n <= x; ++n)
        hist[ctx.log_of(n)] += c[static_cast<std::size_t>(n)];

    CharacterSumTable t;
    t.r = ctx.r;
    t.x = x;
    t.coeff_id = coeffs.id();
    t.sums = group_transform(hist);
    return t;
}

MomentEstimate empirical_moment(const CharacterSumTable& table, double q, bool exclude_principal) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("empirical_moment: q in [0,1]");
    const std::size_t first = exclude_principal ? 1 : 0;
    const std::size_t count = table.sums.size() - first;
    std::vector<double> powers(count);
    if (q == 1.0) {
        for (std::size_t k = 0; k < count; ++k) powers[k] = std::norm(table.sums[k + first]);
    } else if (q == 0.0) {
        std::fill(powers.begin(), powers.end(), 1.0);
    } else {
        for (std::size_t k = 0; k < count; ++k)
            powers[k] = std::pow(std::norm(table.sums[k + first]), q);
    }
    const double value = pairwise_sum(powers) / static_cast<double>(count);
    return {q, value, 0.0, static_cast<std::int64_t>(count), Method::ExactAverage};
}

ThetaValues theta_values(const arith::ModulusContext& ctx, Parity parity, double trunc_scale) {
    const double r = static_cast<double>(ctx.r);
    // eps = 1e-18: the dropped Gaussian tail is below 1e-15 * sqrt(r).
    const double eps_log = std::log(1e18);
    std::int64_t K =
        static_cast<std::int64_t>(std::ceil(std::sqrt(r * eps_log / std::numbers::pi))) + 1;
    K = static_cast<std::int64_t>(std::ceil(static_cast<double>(K) * trunc_scale));
    if (K >= ctx.r) K = ctx.r - 1;  // one full period is exact

    const bool even = parity == Parity::Even;
    std::vector<cd> hist(static_cast<std::size_t>(ctx.order()), cd{0.0, 0.0});
    for (std::int64_t n = 1; n <= K; ++n) {
        const double w = std::exp(-std::numbers::pi * static_cast<double>(n) *
                                  static_cast<double>(n) / r);
        hist[ctx.log_of(n)] += even ? w : static_cast<double>(n) * w;
    }
    const auto all = group_transform(hist);

    ThetaValues out;
    out.r = ctx.r;
    out.parity = parity;
    out.truncation = K;
    for (std::int64_t k = even ? 0 : 1; k < ctx.order(); k += 2) {
        out.char_index.push_back(k);
        out.values.push_back(all[static_cast<std::size_t>(k)]);
    }
    return out;
}

MomentEstimate theta_moment(const ThetaValues& values, double q, bool exclude_principal) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("theta_moment: q in [0,1]");
    std::vector<double> powers;
    powers.reserve(values.values.size());
    for (std::size_t i = 0; i < values.values.size(); ++i) {
        if (exclude_principal && values.char_index[i] == 0) continue;
        powers.push_back(q == 1.0 ? std::norm(values.values[i])
                                  : std::pow(std::norm(values.values[i]), q));
    }
    const double value = pairwise_sum(powers) / static_cast<double>(values.r - 1);
    return {q, value, 0.0, static_cast<std::int64_t>(powers.size()), Method::ExactAverage};
}

double tail_fraction(const CharacterSumTable& table, double lambda, bool deviation_normalized) {
    if (lambda < 2.0) throw std::invalid_argument("tail_fraction: lambda >= 2");
    const double x = static_cast<double>(table.x);
    const double r = static_cast<double>(table.r);
    double threshold = lambda * std::sqrt(x);
    if (deviation_normalized) {
        const double L = std::min(x, r / x);
        threshold /= std::pow(std::log(std::log(10.0 * L)), 0.25);
    }
    const double t2 = threshold * threshold;
    std::int64_t count = 0;
    for (const cd& s : table.sums)
        if (std::norm(s) >= t2) ++count;
    return static_cast<double>(count) / static_cast<double>(table.sums.size());
}

std::vector<double> prime_sums_char(const arith::ModulusContext& ctx,
                                    const rmf::PrimeSumCoeffs& coeffs, int k_index) {
    if (coeffs.P >= ctx.r) throw std::invalid_argument("prime_sums_char: P must be < r");
    const double theta = static_cast<double>(k_index) * coeffs.grid_spacing();
    const std::size_t L = static_cast<std::size_t>(ctx.order());

    std::vector<cd> hist(L, cd{0.0, 0.0});
    for (std::size_t i = 0; i < coeffs.primes.size(); ++i) {
        const std::int64_t p = coeffs.primes[i];
        const double pd = static_cast<double>(p);
        const double lp = std::log(pd);
        hist[ctx.log_of(p)] += coeffs.a1[i] * std::polar(1.0 / std::sqrt(pd), -theta * lp);
        const std::size_t sq_class = (2 * static_cast<std::size_t>(ctx.log_of(p))) % L;
        hist[sq_class] += coeffs.a2[i] * std::polar(1.0 / pd, -2.0 * theta * lp);
    }
    const auto values = group_transform(hist);

    std::vector<double> out(L);
    for (std::size_t m = 0; m < L; ++m) out[m] = values[m].real();
    return out;
}

namespace {

// sum over multisets of size m from `primes` of (m!/prod alpha!)^2 *
// prod (|a(p)|^2/p)^alpha, by recursion over the prime list.
double steinhaus_multiset_sum(std::span<const std::int64_t> primes, std::span<const cd> a,
                              std::size_t idx, int slots, double multinomial, double weight) {
    if (slots == 0) return multinomial * multinomial * weight;
    if (idx == primes.size()) return 0.0;
    double total = 0.0;
    // alpha copies of primes[idx]; multinomial carries m!/prod(alpha!).
    double mult = multinomial;
    double w = weight;
    const double per = std::norm(a[idx]) / static_cast<double>(primes[idx]);
    for (int alpha = 0; alpha <= slots; ++alpha) {
        if (alpha > 0) {
            mult /= static_cast<double>(alpha);
            w *= per;
        }
        total += steinhaus_multiset_sum(primes, a, idx + 1, slots - alpha, mult, w);
    }
    return total;
}

} // namespace

PolynomialMomentCheck polynomial_moment_check(const arith::ModulusContext& ctx,
                                              const arith::PrimeTable& table, std::int64_t P,
                                              std::span<const cd> a_p, int m1, int m2) {
    if (m1 < 0 || m2 < 0) throw std::invalid_argument("polynomial_moment_check: m1, m2 >= 0");
    const int mmax = std::max(m1, m2);
    // All expanded prime products must stay below r.
    double log_bound = static_cast<double>(mmax) * std::log(static_cast<double>(P));
    if (log_bound >= std::log(static_cast<double>(ctx.r)))
        throw std::invalid_argument("polynomial_moment_check: P^max(m1,m2) = e^" +
                                    std::to_string(log_bound) + " is not below r");

    std::vector<std::int64_t> primes;
    for (std::int64_t p : table.primes) {
        if (p > P) break;
        primes.push_back(p);
    }
    if (primes.size() > a_p.size())
        throw std::invalid_argument("polynomial_moment_check: coefficient span too short");

    // Character side: z(chi) for every character by one transform, then the
    // exact average of z^{m1} conj(z)^{m2}.
    const std::size_t L = static_cast<std::size_t>(ctx.order());
    std::vector<cd> hist(L, cd{0.0, 0.0});
    for (std::size_t i = 0; i < primes.size(); ++i)
        hist[ctx.log_of(primes[i])] += a_p[i] / std::sqrt(static_cast<double>(primes[i]));
    const auto z = group_transform(hist);

    std::vector<double> re(L), im(L);
    for (std::size_t m = 0; m < L; ++m) {
        cd term{1.0, 0.0};
        for (int i = 0; i < m1; ++i) term *= z[m];
        for (int i = 0; i < m2; ++i) term *= std::conj(z[m]);
        re[m] = term.real();
        im[m] = term.imag();
    }
    const cd char_side{pairwise_sum(re) / static_cast<double>(L),
                       pairwise_sum(im) / static_cast<double>(L)};

    // Steinhaus side: a term survives iff the two prime multisets coincide.
    cd rmf_side{0.0, 0.0};
    if (m1 == m2) {
        double m_factorial = 1.0;
        for (int i = 2; i <= m1; ++i) m_factorial *= i;
        rmf_side = steinhaus_multiset_sum(primes, a_p, 0, m1, m_factorial, 1.0);
    }

    PolynomialMomentCheck out;
    out.char_side = char_side;
    out.rmf_side = rmf_side;
    out.abs_diff = std::abs(char_side - rmf_side);
    return out;
}

CharConditioning build_char_conditioning(const arith::ModulusContext& ctx,
                                         const rmf::PrimeSumCoeffs& coeffs, int M) {
    if (M < 0) throw std::invalid_argument("build_char_conditioning: M >= 0");
    CharConditioning out;
    out.M = M;
    out.s.resize(static_cast<std::size_t>(2 * M + 1));
    for (int i = -M; i <= M; ++i)
        out.s[static_cast<std::size_t>(i + M)] = prime_sums_char(ctx, coeffs, i);
    return out;
}

ConditionedCellChar conditioned_average_char(const CharConditioning& cond,
                                             const partition::PartitionFamily& family,
                                             std::span<const int> j,
                                             const CharacterSumTable* window) {
    if (j.size() != cond.s.size())
        throw std::invalid_argument("conditioned_average_char: j must cover -M..M");
    const std::size_t L = cond.s[0].size();
    if (window && window->sums.size() != L)
        throw std::invalid_argument("conditioned_average_char: window table has wrong modulus");

    std::vector<double> w(L), ww(window ? L : 0);
    for (std::size_t m = 0; m < L; ++m) {
        double prod = 1.0;
        for (std::size_t i = 0; i < j.size(); ++i) {
            prod *= family.g_cell(j[i], cond.s[i][m]);
            if (prod == 0.0) break;
        }
        w[m] = prod;
        if (window) ww[m] = prod * std::norm(window->sums[m]);
    }

    ConditionedCellChar cell;
    cell.sigma = pairwise_sum(w) / static_cast<double>(L);
    if (!(std::abs(cell.sigma) > 1e-300)) {
        cell.empty = true;
        return cell;
    }
    if (window)
        cell.conditional_value = pairwise_sum(ww) / static_cast<double>(L) / cell.sigma;
    else
        cell.conditional_value = 1.0;
    return cell;
}

} // namespace momentlab::charsums
