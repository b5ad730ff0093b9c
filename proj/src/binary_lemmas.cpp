#include "asnp/binary_lemmas.hpp"

#include <bit>
#include <stdexcept>

namespace asnp {

namespace {

std::string residue_string(const GrElement& x)
{
    std::string out = "[";
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
        if (i > 0)
            out += ",";
        out += std::to_string(x.coeffs[i]);
    }
    return out + "]";
}

void require_precision(const LiftedCurve& a, unsigned needed)
{
    if (a.ring().precision() < needed)
        throw std::invalid_argument("lift precision " + std::to_string(a.ring().precision()) +
                                    " below the required " + std::to_string(needed));
}

std::uint64_t pow2(int k)
{
    if (k < 0 || k > 62)
        throw std::invalid_argument("index 2^" + std::to_string(k) + " out of range");
    return std::uint64_t{1} << k;
}

/// 2^k mod 2^64; used as an exponent for Frobenius-type powers.
std::uint64_t exp2_wrap(int k) { return k >= 64 ? 0 : std::uint64_t{1} << k; }

/// x^(2^k) in GF(2^e): Frobenius has order e, so reduce k first.
std::uint32_t frobenius(const BinaryField& F, std::uint32_t x, int k)
{
    for (int i = 0; i < k % static_cast<int>(F.degree()); ++i)
        x = F.square(x);
    return x;
}

/// Term r of `s` at precision `bits`, or zero for r < 0.
GrElement term_mod(const TwoAdicSeries& s, std::int64_t r, unsigned bits)
{
    if (r < 0)
        return s.ring().zero();
    return s.ring().truncate(s.term(static_cast<std::size_t>(r)), bits);
}

} // namespace

int slope_denominator_h(int g)
{
    if (g < 1)
        throw std::invalid_argument("genus must be positive");
    return static_cast<int>(std::bit_width(static_cast<unsigned>(g + 1)));
}

unsigned valuation_floor(std::uint64_t r, int h)
{
    const auto s = static_cast<unsigned>(std::popcount(r));
    return (s + static_cast<unsigned>(h) - 1) / static_cast<unsigned>(h);
}

nlohmann::json LemmaReport::to_json() const
{
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : failures)
        fails.push_back({{"where", f.where}, {"expected", f.expected}, {"observed", f.observed}});
    return {{"lemma", name}, {"checked", checked}, {"holds", holds()}, {"failures", fails}};
}

LemmaReport check_valuation_bound(const LiftedCurve& a, std::size_t R)
{
    const int h = slope_denominator_h(a.genus());
    const unsigned K = a.ring().precision();
    const TwoAdicSeries C = c_series_stable(a, R, SeriesMethod::Recurrence);
    LemmaReport rep{"valuation-bound", 0, {}};
    for (std::size_t r = 1; r <= R; ++r) {
        const unsigned need = valuation_floor(r, h);
        if (need > K)
            throw std::invalid_argument("precision too small to test r = " + std::to_string(r));
        const unsigned o = C.ord2(r);
        ++rep.checked;
        if (o < need)
            rep.failures.push_back({"r=" + std::to_string(r), ">= " + std::to_string(need), std::to_string(o)});
    }
    return rep;
}

LemmaReport check_frobenius_shift(const LiftedCurve& a, int b_max, int bp_max, ShiftReading reading)
{
    if (b_max < 0 || bp_max < 0)
        throw std::invalid_argument("b and b' must be nonnegative");
    require_precision(a, static_cast<unsigned>(b_max) + 1);
    const int h = slope_denominator_h(a.genus());
    const GaloisRing& ring = a.ring();
    const BinaryField& F = *ring.field();
    const std::size_t R = pow2(b_max * h + bp_max) - pow2(bp_max);
    const TwoAdicSeries C = c_series_stable(a, R, SeriesMethod::Recurrence);

    LemmaReport rep{reading == ShiftReading::Frobenius ? "frobenius-shift" : "frobenius-shift-ring-power", 0, {}};
    for (int b = 0; b <= b_max; ++b) {
        const auto bits = static_cast<unsigned>(b) + 1;
        const GrElement base = term_mod(C, static_cast<std::int64_t>(pow2(b * h) - 1), bits);
        for (int bp = 0; bp <= bp_max; ++bp) {
            const auto r = static_cast<std::int64_t>(pow2(b * h + bp) - pow2(bp));
            const GrElement lhs = term_mod(C, r, bits);
            GrElement rhs = ring.zero();
            if (reading == ShiftReading::RingPower) {
                rhs = ring.truncate(ring.pow(base, exp2_wrap(bp)), bits);
            } else if (ring.ord2(base) >= static_cast<unsigned>(b)) {
                // base = 2^b u mod 2^{b+1}; only u mod 2 matters.
                GrElement unit = base;
                for (auto& c : unit.coeffs)
                    c >>= b;
                const std::uint32_t u = frobenius(F, ring.reduce(unit), bp);
                rhs = ring.truncate(ring.scale(ring.lift(u), std::uint64_t{1} << b), bits);
            } else {
                rep.failures.push_back({"b=" + std::to_string(b), "ord C_{2^{bh}-1} >= b",
                                        std::to_string(ring.ord2(base))});
                continue;
            }
            ++rep.checked;
            if (!(lhs == rhs))
                rep.failures.push_back({"b=" + std::to_string(b) + ",b'=" + std::to_string(bp) + ",r=" + std::to_string(r),
                                        residue_string(rhs), residue_string(lhs)});
        }
    }
    return rep;
}

LemmaReport check_leading_congruence(const LiftedCurve& a, int b_max)
{
    const int g = a.genus();
    const int h = slope_denominator_h(g);
    if (g >= (1 << h) - 2)
        throw std::invalid_argument("leading congruence needs g < 2^h - 2");
    if (b_max < 1)
        throw std::invalid_argument("b_max must be positive");
    require_precision(a, static_cast<unsigned>(b_max) + 1);
    const GaloisRing& ring = a.ring();
    const TwoAdicSeries C = c_series_stable(a, pow2(b_max * h) - 1, SeriesMethod::Recurrence);
    const GrElement& A = a.coeff((1 << h) - 1);

    LemmaReport rep{"leading-congruence", 0, {}};
    for (int b = 1; b <= b_max; ++b) {
        const auto bits = static_cast<unsigned>(b) + 1;
        const std::uint64_t r = pow2(b * h) - 1;
        const std::uint64_t exponent = r / (pow2(h) - 1);
        const GrElement expected = ring.truncate(ring.scale(ring.pow(A, exponent), std::uint64_t{1} << b), bits);
        const GrElement observed = term_mod(C, static_cast<std::int64_t>(r), bits);
        ++rep.checked;
        if (!(expected == observed))
            rep.failures.push_back({"b=" + std::to_string(b) + ",r=" + std::to_string(r), residue_string(expected),
                                    residue_string(observed)});
    }
    return rep;
}

LemmaReport check_telescoping(const LiftedCurve& a, int b_min, int b_max)
{
    const int g = a.genus();
    const int h = slope_denominator_h(g);
    if (g != (1 << h) - 2)
        throw std::invalid_argument("telescoping congruence needs g = 2^h - 2");
    if (b_min < 1 || b_max < b_min)
        throw std::invalid_argument("need 1 <= b_min <= b_max");
    require_precision(a, static_cast<unsigned>(b_max) + 1);
    const GaloisRing& ring = a.ring();
    const TwoAdicSeries C = c_series_stable(a, pow2(b_max * h) - 1, SeriesMethod::Recurrence);
    const GrElement& A = a.coeff((1 << h) - 1);
    const GrElement& B = a.coeff(3 * (1 << (h - 1)) - 1);
    const auto index = [&](int b) -> std::int64_t { return b < 0 ? -1 : static_cast<std::int64_t>(pow2(b * h)) - 1; };

    LemmaReport rep{"telescoping", 0, {}};
    for (int b = b_min; b <= b_max; ++b) {
        const auto bits = static_cast<unsigned>(b) + 1;
        GrElement expected = ring.zero();
        if (b >= 1) {
            const GrElement t = ring.mul(ring.pow(A, exp2_wrap((b - 1) * h)), term_mod(C, index(b - 1), bits));
            expected = ring.add(expected, ring.scale(t, 2));
        }
        if (b >= 2) {
            const GrElement t = ring.mul(ring.pow(B, exp2_wrap((b - 2) * h)), term_mod(C, index(b - 2), bits));
            expected = ring.add(expected, ring.scale(t, 4));
        }
        expected = ring.truncate(expected, bits);
        const GrElement observed = term_mod(C, index(b), bits);
        ++rep.checked;
        if (!(expected == observed))
            rep.failures.push_back({"b=" + std::to_string(b) + ",r=" + std::to_string(index(b)),
                                    residue_string(expected), residue_string(observed)});
    }
    return rep;
}

} // namespace asnp
