#include "asnp/boxes.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace asnp {

namespace {

/// Exact binomials for n <= kIndexTupleCap (binom(40, 20) < 2^38).
std::uint64_t small_binom(std::uint64_t n, std::uint64_t k)
{
    static const auto table = [] {
        std::vector<std::vector<std::uint64_t>> t(kIndexTupleCap + 1);
        for (std::size_t i = 0; i <= kIndexTupleCap; ++i) {
            t[i].assign(i + 1, 1);
            for (std::size_t j = 1; j < i; ++j)
                t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
        return t;
    }();
    if (n > kIndexTupleCap)
        throw std::invalid_argument("binomial outside the enumeration cap");
    return k > n ? 0 : table[n][k];
}

} // namespace

unsigned digit_sum(std::uint64_t m) noexcept { return static_cast<unsigned>(std::popcount(m)); }

std::uint64_t IndexTuple::r() const noexcept
{
    std::uint64_t s = 0;
    for (auto x : k)
        s += x;
    return s;
}

std::string IndexTuple::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i > 0)
            out += ",";
        out += std::to_string(k[i]);
    }
    return out + ")";
}

void for_each_index_tuple(int d, std::uint64_t r, const std::function<void(const IndexTuple&)>& visit,
                          std::uint64_t cap)
{
    if (d < 1)
        throw std::invalid_argument("tuple length must be positive");
    if (r > cap)
        throw std::invalid_argument("r = " + std::to_string(r) + " exceeds the enumeration cap " + std::to_string(cap));
    const auto n = static_cast<std::size_t>(d);
    IndexTuple t{std::vector<std::uint64_t>(n, 0)};
    std::vector<std::uint64_t> rem(n + 1, 0); // rem[p]: what positions p.. must sum to
    rem[0] = r;

    // Smallest admissible k_p: the rest (each <= k_p) must absorb rem[p].
    const auto lo = [&](std::size_t p) { return (rem[p] + (n - p) - 1) / (n - p); };
    const auto descend = [&](std::size_t from) {
        for (std::size_t p = from; p < n; ++p) {
            t.k[p] = p == 0 ? rem[0] : std::min(rem[p], t.k[p - 1]);
            rem[p + 1] = rem[p] - t.k[p];
        }
    };

    descend(0);
    for (;;) {
        visit(t);
        std::size_t p = n - 1;
        bool advanced = false;
        while (p-- > 0) {
            if (t.k[p] > lo(p)) {
                --t.k[p];
                rem[p + 1] = rem[p] - t.k[p];
                descend(p + 1);
                advanced = true;
                break;
            }
        }
        if (!advanced)
            return;
    }
}

std::vector<IndexTuple> enumerate_index_tuples(int d, std::uint64_t r, std::uint64_t cap)
{
    std::vector<IndexTuple> out;
    for_each_index_tuple(d, r, [&](const IndexTuple& t) { out.push_back(t); }, cap);
    return out;
}

unsigned tuple_digit_sum(const IndexTuple& k) noexcept
{
    if (k.k.empty())
        return 0;
    unsigned s = digit_sum(k.k.back());
    for (std::size_t l = 0; l + 1 < k.k.size(); ++l)
        s += digit_sum(k.k[l] - k.k[l + 1]);
    return s;
}

std::uint64_t TwoAdicBox::row_value(std::size_t l) const
{
    std::uint64_t v = 0;
    for (std::size_t bit = 0; bit < rows[l].size(); ++bit)
        v += static_cast<std::uint64_t>(rows[l][bit]) << bit;
    return v;
}

std::vector<unsigned> TwoAdicBox::column_sums() const
{
    std::vector<unsigned> sums(rows.empty() ? 0 : rows.front().size(), 0);
    for (const auto& row : rows) {
        for (std::size_t bit = 0; bit < row.size(); ++bit)
            sums[bit] += row[bit];
    }
    return sums;
}

std::vector<unsigned> TwoAdicBox::gammas() const
{
    const auto sums = column_sums();
    std::vector<unsigned> out;
    for (auto it = sums.rbegin(); it != sums.rend(); ++it) {
        if (*it != 0)
            out.push_back(*it);
    }
    return out;
}

TwoAdicBox box_of(const IndexTuple& k)
{
    TwoAdicBox box;
    const std::size_t d = k.k.size();
    if (d == 0)
        return box;
    const std::size_t width = static_cast<std::size_t>(std::bit_width(std::max<std::uint64_t>(k.r(), 1))) + 1;
    box.rows.assign(d, std::vector<unsigned>(width, 0));
    for (std::size_t bit = 0; bit < width; ++bit)
        box.rows[d - 1][bit] = (k.k[d - 1] >> bit) & 1;
    for (std::size_t l = d - 1; l-- > 0;) {
        const std::uint64_t diff = k.k[l] - k.k[l + 1];
        for (std::size_t bit = 0; bit < width; ++bit)
            box.rows[l][bit] = box.rows[l + 1][bit] + static_cast<unsigned>((diff >> bit) & 1);
    }
    return box;
}

GrElement c_r_oracle(const LiftedCurve& a, std::uint64_t r, std::optional<unsigned> N)
{
    const GaloisRing& ring = a.ring();
    const unsigned K = ring.precision();
    const int d = a.degree();
    GrElement sum = ring.zero();
    for_each_index_tuple(d, r, [&](const IndexTuple& t) {
        const std::uint64_t k1 = t.k.front();
        std::uint64_t scalar = N ? half_binom_factor(k1, *N, K) : stable_binom_factor(k1, K);
        for (int l = 0; l + 1 < d; ++l)
            scalar *= small_binom(t.k[static_cast<std::size_t>(l)], t.k[static_cast<std::size_t>(l) + 1]);
        scalar &= ring.mask();
        if (scalar == 0)
            return;
        GrElement term = ring.from_integer(static_cast<std::int64_t>(scalar));
        for (int l = 1; l < d; ++l) {
            const std::uint64_t exp = t.k[static_cast<std::size_t>(l) - 1] - t.k[static_cast<std::size_t>(l)];
            if (exp != 0)
                term = ring.mul(term, ring.pow(a.coeff(l), exp));
        }
        sum = ring.add(sum, term);
    });
    return sum;
}

nlohmann::json MiracleReport::to_json() const
{
    nlohmann::json j = {{"d", d},
                        {"r", r},
                        {"h", h},
                        {"tuples", tuples},
                        {"bound", bound},
                        {"min_s", min_tuple_sum},
                        {"equality_cases", equality_cases},
                        {"holds", holds()},
                        {"failures", failures}};
    if (counterexample)
        j["counterexample"] = counterexample->k;
    return j;
}

MiracleReport check_miracle(int d, std::uint64_t r)
{
    if (d < 1 || d % 2 == 0)
        throw std::invalid_argument("check_miracle expects an odd degree d = 2g + 1");
    MiracleReport rep;
    rep.d = d;
    rep.r = r;
    rep.h = static_cast<int>(std::bit_width(static_cast<unsigned>(d + 1))) - 1;
    const auto h = static_cast<unsigned>(rep.h);
    const unsigned sr = digit_sum(r);
    rep.bound = (sr + h - 1) / h;
    rep.min_tuple_sum = ~0u;
    const bool equality_possible = sr % h == 0;

    const auto fail = [&](const IndexTuple& t, const std::string& why) {
        rep.failures.push_back(t.to_string() + ": " + why);
        if (!rep.counterexample)
            rep.counterexample = t;
    };

    for_each_index_tuple(d, r, [&](const IndexTuple& t) {
        ++rep.tuples;
        const unsigned s = tuple_digit_sum(t);
        rep.min_tuple_sum = std::min(rep.min_tuple_sum, s);
        if (s < rep.bound)
            fail(t, "s(k) = " + std::to_string(s) + " below " + std::to_string(rep.bound));
        if (!equality_possible || s != sr / h)
            return;
        ++rep.equality_cases;
        const TwoAdicBox box = box_of(t);
        unsigned top_ones = 0;
        for (const auto& row : box.rows) {
            if (std::any_of(row.begin(), row.end(), [](unsigned x) { return x > 1; })) {
                fail(t, "box entry above 1");
                return;
            }
        }
        for (unsigned x : box.rows.front())
            top_ones += x;
        if (top_ones != sr / h)
            fail(t, "top row has " + std::to_string(top_ones) + " ones");
        for (unsigned col : box.column_sums()) {
            if (col != 0 && digit_sum(col) != h)
                fail(t, "column sum " + std::to_string(col) + " has digit sum " + std::to_string(digit_sum(col)));
        }
    });
    return rep;
}

} // namespace asnp
