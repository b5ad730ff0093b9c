#include <doctest.h>

#include <random>

#include "asnp/binary_lemmas.hpp"
#include "asnp/slope_cert.hpp"
#include "asnp/zeta.hpp"

using namespace asnp;

namespace {

CurveEquation over2(std::vector<std::uint32_t> coeffs) { return CurveEquation(BinaryField::make(1), std::move(coeffs)); }

LiftedCurve lift(const CurveEquation& c) { return LiftedCurve::verbatim(c, 40); }

const CurveEquation x9_x5 = over2({0, 0, 0, 0, 1, 0, 0, 0, 1});
const CurveEquation x9_x7 = over2({0, 0, 0, 0, 0, 0, 1, 0, 1});

} // namespace

TEST_CASE("slope bound and schedule sequences")
{
    CHECK(np1_lower_bound(3) == Rational(1, 3));
    CHECK(np1_lower_bound(7) == Rational(1, 4));
    CHECK_THROWS_AS(np1_lower_bound(2), std::invalid_argument);
    CHECK(lambda_n(3, 7) == Rational(4, 9));
    CHECK(lambda_n(4, 9) == Rational(11, 24));
    CHECK(lambda_prime_n(6, 5) == Rational(6, 9));
    CHECK_THROWS(lambda_n(3, 1));
    CHECK_THROWS(lambda_prime_n(6, 2));

    for (int g = 3; g <= 12; ++g) {
        const Rational floor_h(1, slope_denominator_h(g));
        for (int n = 2; n < 60; ++n) {
            CHECK(lambda_n(g, n + 1) < lambda_n(g, n));
            CHECK(lambda_n(g, n) > floor_h);
        }
        CHECK(lambda_n(g, 100000) - floor_h < Rational(1, 1000));
    }
}

TEST_CASE("schedule picks the smallest admissible n0")
{
    CHECK(schedule_n0(3, SlopeCase::II, Rational(1, 2)) == 7);
    CHECK(schedule_n0(4, SlopeCase::II, Rational(1, 2)) == 9);
    CHECK_THROWS_AS(schedule_n0(3, SlopeCase::I, Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(schedule_n0(3, SlopeCase::II, Rational(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(schedule_n0(5, SlopeCase::III, Rational(1, 2)), std::invalid_argument);

    const auto admissible = [](int g, SlopeCase c, const Rational& hint, int n) {
        const int h = slope_denominator_h(g);
        if (n < 2 || !(lambda_n(g, n) < hint) || (n + g - 1) % h != 0 || Rational(g - 1, h * (n - 1)) > Rational(1))
            return false;
        if (c == SlopeCase::III)
            return n >= 3 && lambda_prime_n(g, n) < hint && Rational(g - h, h * (n - 1)) <= Rational(1);
        return true;
    };
    for (int g = 3; g <= 14; ++g) {
        const int h = slope_denominator_h(g);
        for (const Rational hint : {Rational(1, 2), Rational(2, 5), Rational(1, h) + Rational(1, 50)}) {
            if (hint <= Rational(1, h))
                continue;
            std::vector<SlopeCase> cases{SlopeCase::II};
            if (g == (1 << h) - 2)
                cases.push_back(SlopeCase::III);
            for (auto c : cases) {
                const int n0 = schedule_n0(g, c, hint);
                CHECK(admissible(g, c, hint, n0));
                for (int n = 2; n < n0; ++n)
                    CHECK_FALSE(admissible(g, c, hint, n));
            }
        }
    }
}

TEST_CASE("part i on curves of known slope")
{
    CertificateQuery q;
    q.lambda = Rational(1, 2);
    const auto ss = keylemma_check_i(lift(x9_x5), q);
    CHECK(ss.verdict == Verdict::AllHold);
    CHECK(ss.checked > 0);
    CHECK_FALSE(ss.unconditional);

    const auto ord = keylemma_check_i(lift(x9_x7), q);
    CHECK(ord.verdict == Verdict::ViolationFound);
    REQUIRE_FALSE(ord.witnesses.empty());
    const auto& w = ord.witnesses.front();
    CHECK(w.j == 4);
    CHECK(w.n == 5);
    CHECK(w.r == 252);
    CHECK(ord.to_json()["verdict"] == "violation-found");

    q.lambda = Rational(1, 3);
    const auto at_floor = keylemma_check_i(lift(x9_x7), q);
    CHECK(at_floor.verdict == Verdict::AllHold);
    CHECK(at_floor.unconditional);

    q.lambda = Rational(3, 5);
    CHECK_THROWS_AS(keylemma_check_i(lift(x9_x7), q), std::invalid_argument);
    q.lambda = Rational(1, 2);
    CHECK_THROWS_AS(keylemma_check_i(LiftedCurve::verbatim(x9_x7, 2), q), std::invalid_argument);
}

TEST_CASE("part ii")
{
    CertificateQuery q;
    q.lambda = lambda_n(4, 9);
    q.n0 = 9;
    q.j = 1;
    const auto rep = keylemma_check_ii(lift(x9_x7), q);
    CHECK(rep.verdict == Verdict::AllHold);
    CHECK(np1(newton_polygon(l_polynomial(x9_x7))) < q.lambda);

    // supersingular: group 3 cannot fail
    CertificateQuery s;
    s.lambda = Rational(1, 2);
    s.n0 = 6;
    s.j = 1;
    CHECK(keylemma_check_ii(lift(x9_x5), s).verdict == Verdict::Inconclusive);

    s.j = 5;
    CHECK_THROWS_AS(keylemma_check_ii(lift(x9_x5), s), std::invalid_argument);
    s.j.reset();
    CHECK_THROWS_AS(keylemma_check_ii(lift(x9_x5), s), std::invalid_argument);
}

TEST_CASE("part i at the true slope on random curves")
{
    std::mt19937_64 rng(79);
    for (int t = 0; t < 12; ++t) {
        const int g = 3 + static_cast<int>(rng() % 3);
        std::vector<std::uint32_t> c(static_cast<std::size_t>(2 * g + 1), 0);
        for (int i = 1; i < 2 * g + 1; i += 2)
            c[static_cast<std::size_t>(i - 1)] = static_cast<std::uint32_t>(rng() & 1);
        c.back() = 1;
        const CurveEquation curve = over2(c);
        CertificateQuery q;
        q.lambda = np1(newton_polygon(l_polynomial(curve)));
        q.n_max = 5;
        const auto rep = keylemma_check_i(LiftedCurve::random(curve, 12, rng), q);
        CHECK_MESSAGE(rep.verdict == Verdict::AllHold, rep.to_json().dump());
    }
}

TEST_CASE("slope predictions")
{
    const auto p3 = theorem3_slope(over2({0, 0, 0, 0, 0, 0, 1}));
    CHECK(p3.slope_case == SlopeCase::II);
    REQUIRE(p3.exact);
    CHECK(*p3.exact == Rational(1, 3));

    const auto p4 = theorem3_slope(x9_x7);
    CHECK(p4.slope_case == SlopeCase::II);
    const auto p4i = theorem3_slope(x9_x5);
    CHECK(p4i.slope_case == SlopeCase::I);
    CHECK_FALSE(p4i.exact);
    CHECK(p4i.lower_bound == Rational(1, 3));

    const auto x13_x11 = over2({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1});
    const auto p6 = theorem3_slope(x13_x11);
    CHECK(p6.slope_case == SlopeCase::III);
    CHECK(*p6.exact == Rational(1, 3));
    CHECK(np1(newton_polygon(l_polynomial(x13_x11))) == Rational(1, 3));
    CHECK(p6.to_json()["case"] == "III");

    const auto p7 = theorem3_slope(over2({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
    CHECK(p7.slope_case == SlopeCase::II); // g = 7, h = 4: c_15 is the leading coefficient
    CHECK(*p7.exact == Rational(1, 4));

    CHECK_THROWS(theorem3_slope(over2({0, 0, 1, 1})));
}
