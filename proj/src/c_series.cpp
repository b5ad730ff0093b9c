#include "asnp/c_series.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace asnp {

namespace {

std::uint64_t low_mask(unsigned bits) noexcept
{
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::uint64_t two_to(unsigned N) noexcept { return N >= 64 ? 0 : std::uint64_t{1} << N; }

/// T(k) mod 2^K for k = 0..R; `two_n` is 2^N mod 2^64 (0 for the stable limit).
std::vector<std::uint64_t> binom_factor_table(std::uint64_t two_n, unsigned K, std::size_t R)
{
    std::vector<std::uint64_t> table(R + 1);
    std::uint64_t prod = 1;     // prod_{i<k} (2^N - 1 - 2i), mod 2^64
    std::uint64_t fact_odd = 1; // odd part of k!, mod 2^64
    for (std::size_t k = 0; k <= R; ++k) {
        if (k > 0) {
            prod *= two_n - 1 - 2 * static_cast<std::uint64_t>(k - 1);
            fact_odd *= static_cast<std::uint64_t>(k) >> std::countr_zero(static_cast<std::uint64_t>(k));
        }
        const auto s = static_cast<unsigned>(std::popcount(static_cast<std::uint64_t>(k)));
        table[k] = s >= K ? 0 : ((prod * inverse_odd(fact_odd)) << s) & low_mask(K);
    }
    return table;
}

std::uint64_t binom_factor(std::uint64_t k, std::uint64_t two_n, unsigned K)
{
    const auto s = static_cast<unsigned>(std::popcount(k));
    if (s >= K)
        return 0;
    std::uint64_t prod = 1;
    std::uint64_t fact_odd = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        prod *= two_n - 1 - 2 * i;
        fact_odd *= (i + 1) >> std::countr_zero(i + 1);
    }
    return ((prod * inverse_odd(fact_odd)) << s) & low_mask(K);
}

TwoAdicSeries power_sum(const LiftedCurve& a, const std::vector<std::uint64_t>& factors, std::size_t R)
{
    const GaloisRing& ring = a.ring();
    const unsigned e = ring.degree();
    TwoAdicSeries out(ring, R);

    std::vector<int> support;
    for (int i = 1; i <= a.degree(); ++i) {
        if (!ring.is_zero(a.coeff(i)))
            support.push_back(i);
    }
    const auto lowest = static_cast<std::size_t>(support.front());

    std::vector<std::uint64_t> power((R + 1) * e, 0); // f^k truncated at degree R
    std::vector<std::uint64_t> next((R + 1) * e, 0);
    power[0] = 1;
    for (std::size_t k = 0; k * lowest <= R; ++k) {
        const std::size_t start = k * lowest;
        if (factors[k] != 0) {
            for (std::size_t r = start; r <= R; ++r) {
                std::uint64_t* dst = out.raw(r);
                for (unsigned c = 0; c < e; ++c)
                    dst[c] = (dst[c] + factors[k] * power[r * e + c]) & ring.mask();
            }
        }
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t r = start; r <= R; ++r) {
            const std::uint64_t* p = power.data() + r * e;
            if (std::all_of(p, p + e, [](std::uint64_t v) { return v == 0; }))
                continue;
            for (int i : support) {
                if (r + static_cast<std::size_t>(i) > R)
                    break;
                ring.mul_add(p, a.coeff(i).coeffs.data(), next.data() + (r + static_cast<std::size_t>(i)) * e);
            }
        }
        power.swap(next);
    }
    return out;
}

/**
 * (r+1) S_{r+1} = sum_i a_i S_{r+1-i} (2(2^N - 1) i - 4(r+1-i)).
 *
 * Division by r+1 is done mod 2^M with M = K + 2 * bitwidth(R) + 2. Each
 * step's residual vanishes mod 2^M, and solving the first-order equation
 * for the accumulated error integrates once, losing at most log2(R) bits, so
 * the result is exact mod 2^K.
 */
TwoAdicSeries recurrence(const LiftedCurve& a, std::uint64_t two_n, std::size_t R)
{
    const GaloisRing& ring = a.ring();
    const unsigned K = ring.precision();
    const unsigned M = K + 2 * static_cast<unsigned>(std::bit_width(R + 1)) + 2;
    if (M > GaloisRing::kMaxPrecision)
        throw std::invalid_argument("series recurrence needs precision " + std::to_string(M) +
                                    " > 62; lower K or R");
    const GaloisRing work(ring.field(), M);
    const unsigned e = ring.degree();
    const int d = a.degree();

    std::vector<std::uint64_t> S((R + 1) * e, 0);
    S[0] = 1;
    std::vector<std::uint64_t> X(e);
    std::vector<std::uint64_t> tmp(e);
    for (std::size_t r = 0; r < R; ++r) {
        std::fill(X.begin(), X.end(), 0);
        const std::uint64_t next = r + 1;
        const int terms = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(d), next));
        for (int i = 1; i <= terms; ++i) {
            const GrElement& ai = a.coeff(i);
            if (ring.is_zero(ai))
                continue;
            const auto ui = static_cast<std::uint64_t>(i);
            const std::uint64_t coef = 2 * (two_n - 1) * ui - 4 * (next - ui);
            work.mul_into(ai.coeffs.data(), S.data() + (next - ui) * e, tmp.data());
            for (unsigned c = 0; c < e; ++c)
                X[c] += coef * tmp[c];
        }
        const auto v = static_cast<unsigned>(std::countr_zero(next));
        const std::uint64_t inv = inverse_odd(next >> v);
        for (unsigned c = 0; c < e; ++c) {
            const std::uint64_t x = X[c] & work.mask();
            if ((x & low_mask(v)) != 0)
                throw std::logic_error("series recurrence lost precision at r = " + std::to_string(next));
            S[next * e + c] = ((x >> v) * inv) & low_mask(M - v);
        }
    }

    TwoAdicSeries out(ring, R);
    for (std::size_t r = 0; r <= R; ++r) {
        for (unsigned c = 0; c < e; ++c)
            out.raw(r)[c] = S[r * e + c] & ring.mask();
    }
    return out;
}

} // namespace

LiftedCurve::LiftedCurve(CurveEquation curve, GaloisRing ring, std::vector<GrElement> a)
    : curve_(std::move(curve)), ring_(std::move(ring)), a_(std::move(a)), zero_(ring_.zero())
{
}

LiftedCurve LiftedCurve::verbatim(const CurveEquation& c, unsigned K)
{
    if (!c.is_monic())
        throw std::invalid_argument("lifting requires a monic equation");
    GaloisRing ring(c.field(), K);
    std::vector<GrElement> a{ring.zero()};
    for (int i = 1; i <= c.degree(); ++i)
        a.push_back(ring.lift(c.coeff(i)));
    return LiftedCurve(c, std::move(ring), std::move(a));
}

LiftedCurve LiftedCurve::random(const CurveEquation& c, unsigned K, std::mt19937_64& rng)
{
    LiftedCurve out = verbatim(c, K);
    for (int i = 1; i < c.degree(); ++i) {
        for (auto& coord : out.a_[static_cast<std::size_t>(i)].coeffs)
            coord = (coord + 2 * rng()) & out.ring_.mask();
    }
    return out;
}

const GrElement& LiftedCurve::coeff(int i) const
{
    if (i < 1 || i > degree())
        return zero_;
    return a_[static_cast<std::size_t>(i)];
}

LiftedCurve LiftedCurve::with_precision(unsigned K) const
{
    if (K > ring_.precision())
        throw std::invalid_argument("cannot raise the precision of a lift");
    GaloisRing ring(ring_.field(), K);
    std::vector<GrElement> a;
    for (const auto& x : a_)
        a.push_back(ring.truncate(x, K));
    return LiftedCurve(curve_, std::move(ring), std::move(a));
}

std::uint64_t half_binom_factor(std::uint64_t k, unsigned N, unsigned K)
{
    if (N < 1)
        throw std::invalid_argument("N must be positive");
    return binom_factor(k, two_to(N), K);
}

std::uint64_t stable_binom_factor(std::uint64_t k, unsigned K) { return binom_factor(k, 0, K); }

TwoAdicSeries::TwoAdicSeries(GaloisRing ring, std::size_t R)
    : ring_(std::move(ring)), R_(R), data_((R + 1) * ring_.degree(), 0)
{
}

GrElement TwoAdicSeries::term(std::size_t r) const
{
    if (r > R_)
        throw std::out_of_range("series term beyond degree cap");
    const std::uint64_t* p = raw(r);
    return GrElement{std::vector<std::uint64_t>(p, p + ring_.degree())};
}

unsigned TwoAdicSeries::ord2(std::size_t r) const { return ring_.ord2(term(r)); }

TwoAdicSeries c_series(const LiftedCurve& a, unsigned N, std::size_t R, SeriesMethod method)
{
    if (N < 1)
        throw std::invalid_argument("N must be positive");
    if (method == SeriesMethod::Recurrence)
        return recurrence(a, two_to(N), R);
    return power_sum(a, binom_factor_table(two_to(N), a.ring().precision(), R), R);
}

TwoAdicSeries c_series_stable(const LiftedCurve& a, std::size_t R, SeriesMethod method)
{
    if (method == SeriesMethod::Recurrence)
        return recurrence(a, 0, R);
    return power_sum(a, binom_factor_table(0, a.ring().precision(), R), R);
}

std::vector<OrdEntry> ord_profile(const TwoAdicSeries& s)
{
    std::vector<OrdEntry> out;
    out.reserve(s.degree_cap() + 1);
    const unsigned K = s.ring().precision();
    for (std::size_t r = 0; r <= s.degree_cap(); ++r) {
        const unsigned o = s.ord2(r);
        out.push_back({r, o, o >= K});
    }
    return out;
}

} // namespace asnp
