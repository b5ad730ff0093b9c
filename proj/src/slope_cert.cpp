#include "asnp/slope_cert.hpp"

#include <stdexcept>

#include "asnp/binary_lemmas.hpp"

namespace asnp {

namespace {

constexpr std::size_t kMaxWitnesses = 16;
constexpr int kScheduleLimit = 1 << 20;

unsigned ceil_nonneg(const Rational& x)
{
    if (x < 0)
        throw std::invalid_argument("negative threshold");
    return static_cast<unsigned>(ceil(x));
}

void require_lambda(const Rational& lambda)
{
    if (lambda < 0 || lambda > Rational(1, 2))
        throw std::invalid_argument("lambda must lie in [0, 1/2], got " + to_string(lambda));
}

std::uint64_t progression_base(int n, int g)
{
    const int shift = n + g - 1;
    if (shift > 40)
        throw std::invalid_argument("n + g - 1 = " + std::to_string(shift) + " too large");
    return std::uint64_t{1} << shift;
}

/// Stable series to index R at precision K, from a lift of at least that precision.
TwoAdicSeries series_for(const LiftedCurve& a, unsigned K, std::size_t R)
{
    if (a.ring().precision() < K)
        throw std::invalid_argument("lift precision " + std::to_string(a.ring().precision()) +
                                    " below the certificate precision " + std::to_string(K));
    return c_series_stable(a.with_precision(K), R, SeriesMethod::Recurrence);
}

struct Grid {
    const TwoAdicSeries& C;
    const Rational& lambda;
    int g;
    SlopeBoundReport& rep;

    /// Checks one (m, n, j); records a witness when the inequality fails.
    bool check(std::uint64_t m, int n, int j, const char* group)
    {
        const std::uint64_t r = m * progression_base(n, g) - static_cast<std::uint64_t>(j);
        const unsigned need = ceil_nonneg(lambda * n);
        const unsigned o = C.ord2(r);
        ++rep.checked;
        if (o >= need)
            return true;
        if (rep.witnesses.size() < kMaxWitnesses)
            rep.witnesses.push_back({m, n, j, r, o, false, need, group});
        return false;
    }
};

unsigned default_precision(const CertificateQuery& q, int n_top)
{
    const unsigned need = ceil_nonneg(q.lambda * n_top);
    const unsigned K = q.K.value_or(need + 2);
    if (K < need + 1)
        throw std::invalid_argument("precision K = " + std::to_string(K) + " too small for threshold " +
                                    std::to_string(need));
    return K;
}

} // namespace

Rational np1_lower_bound(int g)
{
    if (g < 3)
        throw std::invalid_argument("slope bound needs g >= 3");
    return Rational(1, slope_denominator_h(g));
}

Rational lambda_n(int g, int n)
{
    if (n < 2)
        throw std::invalid_argument("lambda_n needs n >= 2");
    return Rational(n + g - 2, static_cast<std::int64_t>(slope_denominator_h(g)) * (n - 1));
}

Rational lambda_prime_n(int g, int n)
{
    if (n < 3)
        throw std::invalid_argument("lambda'_n needs n >= 3");
    const int h = slope_denominator_h(g);
    return Rational(n + g - h - 2, static_cast<std::int64_t>(h) * (n - 2));
}

std::string to_string(SlopeCase c)
{
    switch (c) {
    case SlopeCase::I:
        return "I";
    case SlopeCase::II:
        return "II";
    case SlopeCase::III:
        return "III";
    }
    return "?";
}

int schedule_n0(int g, SlopeCase target, const Rational& hint)
{
    const int h = slope_denominator_h(g);
    if (hint <= Rational(1, h))
        throw std::invalid_argument("schedule needs a slope hint above 1/h = " + to_string(Rational(1, h)));
    if (target == SlopeCase::III && g != (1 << h) - 2)
        throw std::invalid_argument("case III schedule needs g = 2^h - 2");
    if (target == SlopeCase::I)
        throw std::invalid_argument("case I has no schedule");
    for (int n0 = target == SlopeCase::III ? 3 : 2; n0 < kScheduleLimit; ++n0) {
        if ((n0 + g - 1) % h != 0 || lambda_n(g, n0) >= hint)
            continue;
        if (Rational(g - 1, static_cast<std::int64_t>(h) * (n0 - 1)) > 1)
            continue;
        if (target == SlopeCase::III &&
            (lambda_prime_n(g, n0) >= hint || Rational(g - h, static_cast<std::int64_t>(h) * (n0 - 1)) > 1))
            continue;
        return n0;
    }
    throw std::invalid_argument("no schedule index below the search limit");
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::AllHold:
        return "all-hold";
    case Verdict::ViolationFound:
        return "violation-found";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

nlohmann::json SlopeBoundReport::to_json() const
{
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : witnesses) {
        ws.push_back({{"m", w.m},
                      {"n", w.n},
                      {"j", w.j},
                      {"r", w.r},
                      {"ord2", w.observed_at_least ? nlohmann::json("geK") : nlohmann::json(w.observed)},
                      {"required", w.required},
                      {"group", w.group}});
    }
    return {{"verdict", to_string(verdict)},
            {"lambda", to_string(lambda)},
            {"n_max", n_max},
            {"m_max", m_max},
            {"K", K},
            {"checked", checked},
            {"unconditional", unconditional},
            {"witnesses", ws}};
}

SlopeBoundReport keylemma_check_i(const LiftedCurve& a, const CertificateQuery& q)
{
    require_lambda(q.lambda);
    if (q.n_max < 1 || q.m_max < 1)
        throw std::invalid_argument("bounds must be positive");
    const int g = a.genus();
    SlopeBoundReport rep;
    rep.lambda = q.lambda;
    rep.n_max = q.n_max;
    rep.m_max = q.m_max;
    rep.K = default_precision(q, q.n_max);

    const std::size_t R = q.m_max * progression_base(q.n_max, g) - 1;
    const TwoAdicSeries C = series_for(a, rep.K, R);
    Grid grid{C, q.lambda, g, rep};
    bool ok = true;
    for (int n = 1; n <= q.n_max; ++n) {
        for (std::uint64_t m = 1; m <= q.m_max; ++m) {
            for (int j = 1; j <= g; ++j)
                ok = grid.check(m, n, j, "i") && ok;
        }
    }
    rep.verdict = ok ? Verdict::AllHold : Verdict::ViolationFound;
    rep.unconditional = ok && g >= 3 && q.lambda <= np1_lower_bound(g);
    return rep;
}

SlopeBoundReport keylemma_check_ii(const LiftedCurve& a, const CertificateQuery& q)
{
    require_lambda(q.lambda);
    if (!q.n0 || !q.j)
        throw std::invalid_argument("part ii needs n0 and j");
    const int g = a.genus();
    const int n0 = *q.n0;
    const int j = *q.j;
    if (n0 < 1 || j < 1 || j > g)
        throw std::invalid_argument("part ii needs n0 >= 1 and 1 <= j <= g");
    if (q.m_max < 1)
        throw std::invalid_argument("m_max must be positive");

    SlopeBoundReport rep;
    rep.lambda = q.lambda;
    rep.n_max = n0;
    rep.m_max = q.m_max;
    rep.K = default_precision(q, n0);

    const std::size_t R = q.m_max * progression_base(n0, g) - 1;
    const TwoAdicSeries C = series_for(a, rep.K, R);
    Grid grid{C, q.lambda, g, rep};
    bool ok = true;
    for (int n = 1; n < n0; ++n) {
        for (std::uint64_t m = 1; m <= q.m_max; ++m)
            ok = grid.check(m, n, j, "1") && ok;
    }
    for (std::uint64_t m = 2; m <= q.m_max; ++m)
        ok = grid.check(m, n0, j, "2") && ok;
    if (!ok) {
        rep.verdict = Verdict::ViolationFound;
        return rep;
    }

    const std::uint64_t r = progression_base(n0, g) - static_cast<std::uint64_t>(j);
    const unsigned need = ceil_nonneg(q.lambda * n0);
    const unsigned o = C.ord2(r);
    ++rep.checked;
    if (o < need) {
        rep.verdict = Verdict::AllHold;
        rep.witnesses.push_back({1, n0, j, r, o, false, need, "3"});
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.witnesses.push_back({1, n0, j, r, o, o >= rep.K, need, "3"});
    }
    return rep;
}

nlohmann::json SlopePrediction::to_json() const
{
    nlohmann::json j = {{"case", to_string(slope_case)}, {"lower_bound", to_string(lower_bound)}};
    j["exact"] = exact ? nlohmann::json(to_string(*exact)) : nlohmann::json(nullptr);
    return j;
}

SlopePrediction theorem3_slope(const CurveEquation& c)
{
    if (!c.is_odd_reduced() || !c.is_monic())
        throw std::invalid_argument("slope prediction needs an odd-reduced monic equation");
    const int g = genus(c);
    SlopePrediction p;
    p.lower_bound = np1_lower_bound(g);
    const int h = slope_denominator_h(g);
    const int edge = (1 << h) - 2;
    if (g < edge && c.coeff((1 << h) - 1) != 0) {
        p.slope_case = SlopeCase::II;
        p.exact = p.lower_bound;
    } else if (g == edge && (c.coeff((1 << h) - 1) != 0 || c.coeff(3 * (1 << (h - 1)) - 1) != 0)) {
        p.slope_case = SlopeCase::III;
        p.exact = p.lower_bound;
    }
    return p;
}

} // namespace asnp
