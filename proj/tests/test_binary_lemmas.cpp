#include <doctest.h>

#include <random>

#include "asnp/binary_lemmas.hpp"
#include "oracles.hpp"

using namespace asnp;

namespace {

CurveEquation random_normal_form(unsigned e, int g, std::mt19937_64& rng)
{
    const auto F = BinaryField::make(e);
    std::vector<std::uint32_t> c(static_cast<std::size_t>(2 * g + 1), 0);
    for (int i = 1; i < 2 * g + 1; i += 2)
        c[static_cast<std::size_t>(i - 1)] = static_cast<std::uint32_t>(rng() & F->mask());
    c.back() = 1;
    return CurveEquation(F, c);
}

} // namespace

TEST_CASE("valuation bound on random lifts")
{
    std::mt19937_64 rng(61);
    for (int g = 1; g <= 8; ++g) {
        for (unsigned e : {1u, 2u, 4u}) {
            const auto a = LiftedCurve::random(random_normal_form(e, g, rng), 12, rng);
            const auto rep = check_valuation_bound(a, 200);
            CHECK_MESSAGE(rep.holds(), rep.to_json().dump());
            CHECK(rep.checked == 200);
        }
    }
}

TEST_CASE("valuation bound is sharp at r = 2^h - 1 for x^7")
{
    // C_7 = -2 and C_63 = 4 mod 8 for f = x^7
    const auto exact = oracle::c_series({0, 0, 0, 0, 0, 0, 1}, std::nullopt, 63);
    CHECK(exact[7] == -2);
    CHECK(oracle::ord2(exact[63]) == 2);
    const auto a = LiftedCurve::verbatim(CurveEquation(BinaryField::make(1), {0, 0, 0, 0, 0, 0, 1}), 8);
    const auto C = c_series_stable(a, 63);
    CHECK(C.ord2(7) == valuation_floor(7, 3));
    CHECK(C.ord2(63) == valuation_floor(63, 3));
}

TEST_CASE("Frobenius shift")
{
    std::mt19937_64 rng(67);
    for (int g : {1, 2, 3, 4, 5, 6}) {
        for (unsigned e : {1u, 2u, 3u}) {
            const auto a = LiftedCurve::random(random_normal_form(e, g, rng), 6, rng);
            const auto rep = check_frobenius_shift(a, 3, 3);
            CHECK_MESSAGE(rep.holds(), rep.to_json().dump());
            CHECK(rep.checked == 16);
        }
    }
    const auto low = LiftedCurve::verbatim(CurveEquation(BinaryField::make(1), {0, 0, 0, 0, 0, 0, 1}), 3);
    CHECK_THROWS_AS(check_frobenius_shift(low, 3, 1), std::invalid_argument);
}

TEST_CASE("the ring-power reading of the shift fails")
{
    const auto a = LiftedCurve::verbatim(CurveEquation(BinaryField::make(1), {0, 0, 0, 0, 0, 0, 1}), 4);
    const auto rep = check_frobenius_shift(a, 1, 1, ShiftReading::RingPower);
    CHECK_FALSE(rep.holds());
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].where.find("r=14") != std::string::npos);
    CHECK(check_frobenius_shift(a, 1, 1, ShiftReading::Frobenius).holds());
    // with b = 0 or b' = 0 the two readings coincide
    CHECK(check_frobenius_shift(a, 0, 3, ShiftReading::RingPower).holds());
    CHECK(check_frobenius_shift(a, 1, 0, ShiftReading::RingPower).holds());
}

TEST_CASE("leading congruence")
{
    std::mt19937_64 rng(71);
    for (int g : {3, 4, 5}) {
        for (unsigned e : {1u, 2u, 3u}) {
            for (int t = 0; t < 3; ++t) {
                const auto a = LiftedCurve::random(random_normal_form(e, g, rng), 7, rng);
                const auto rep = check_leading_congruence(a, 4);
                CHECK_MESSAGE(rep.holds(), rep.to_json().dump());
            }
        }
    }
    std::mt19937_64 rng2(3);
    CHECK_THROWS_AS(check_leading_congruence(LiftedCurve::random(random_normal_form(1, 6, rng2), 7, rng2), 2),
                    std::invalid_argument);
}

TEST_CASE("leading congruence against the exact series")
{
    // genus 3, h = 3: C_{2^{3b}-1} = 2^b c_7^{...} mod 2^{b+1}; over GF(2) c_7 is 0 or 1.
    for (std::uint32_t code = 0; code < 8; ++code) {
        const std::vector<long> f{code & 1, 0, (code >> 1) & 1, 0, (code >> 2) & 1, 0, 1};
        const auto C = oracle::c_series(f, std::nullopt, 63);
        for (unsigned b : {1u, 2u}) {
            const std::size_t r = (std::size_t{1} << (3 * b)) - 1;
            CHECK(oracle::mod_pow2(C[r], b + 1) == (std::uint64_t{1} << b));
        }
    }
}

TEST_CASE("telescoping congruence at g = 6")
{
    std::mt19937_64 rng(73);
    for (unsigned e : {1u, 2u, 3u}) {
        for (int t = 0; t < 3; ++t) {
            const auto a = LiftedCurve::random(random_normal_form(e, 6, rng), 7, rng);
            const auto rep = check_telescoping(a, 1, 4);
            CHECK_MESSAGE(rep.holds(), rep.to_json().dump());
            CHECK(rep.checked == 4);
        }
    }
    std::mt19937_64 rng2(5);
    const auto g5 = LiftedCurve::random(random_normal_form(1, 5, rng2), 7, rng2);
    CHECK_THROWS_AS(check_telescoping(g5, 1, 2), std::invalid_argument);
    const auto g6 = LiftedCurve::random(random_normal_form(1, 6, rng2), 7, rng2);
    CHECK_THROWS_AS(check_telescoping(g6, 0, 2), std::invalid_argument);
}
