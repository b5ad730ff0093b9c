#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>

#include "asnp/explorer.hpp"

using namespace asnp;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() / ("asnp-test-" + std::to_string(rd()));
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::string dump_all(const std::vector<ClassificationRecord>& recs)
{
    std::string out;
    for (const auto& r : recs)
        out += r.to_json().dump() + "\n";
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

TEST_CASE("normal-form enumeration")
{
    const auto g3 = enumerate_normal_forms(3, 1);
    REQUIRE(g3.size() == 8);
    CHECK(g3[0] == CurveEquation(BinaryField::make(1), {0, 0, 0, 0, 0, 0, 1}));
    CHECK(g3[1] == CurveEquation(BinaryField::make(1), {1, 0, 0, 0, 0, 0, 1}));
    CHECK(g3[2] == CurveEquation(BinaryField::make(1), {0, 0, 1, 0, 0, 0, 1}));
    CHECK(enumerate_normal_forms(4, 1, {1}).size() == 8);
    CHECK(enumerate_normal_forms(3, 2).size() == 64);
    CHECK(enumerate_normal_forms(2, 4, {1}).size() == 16);
    for (const auto& c : enumerate_normal_forms(4, 2, {1, 5})) {
        CHECK(c.coeff(1) == 0);
        CHECK(c.coeff(5) == 0);
        CHECK(c.is_monic());
        CHECK(c.is_odd_reduced());
    }
    CHECK_THROWS_AS(enumerate_normal_forms(3, 1, {2}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_normal_forms(3, 1, {7}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_normal_forms(5, 5), std::invalid_argument);
}

TEST_CASE("genus-2 family x^5 + c_3 x^3 over GF(16) is supersingular")
{
    const auto recs = classify(enumerate_normal_forms(2, 4, {1}));
    REQUIRE(recs.size() == 16);
    for (const auto& r : recs) {
        CHECK(r.supersingular);
        CHECK(r.consistent);
        CHECK_FALSE(r.theorem3);
    }
}

TEST_CASE("genus-3 sweep over GF(4)")
{
    const auto rep = verify_no_supersingular_genus3(2);
    CHECK(rep.holds());
    CHECK(rep.curves == 64);
    CHECK(rep.supersingular == 0);
    for (const auto& r : rep.records)
        CHECK(r.np1() == Rational(1, 3));
    CHECK(rep.to_json()["scope"] == "verified over GF(2^2) only");
}

TEST_CASE("genus-4 sweep over GF(2) and GF(4)")
{
    for (unsigned e : {1u, 2u}) {
        const auto rep = verify_genus4_classification(e);
        CHECK(rep.holds());
        CHECK(rep.curves == (std::size_t{1} << (3 * e)));
        CHECK(rep.supersingular == (std::size_t{1} << (2 * e)));
        for (const auto& r : rep.records) {
            CHECK(r.consistent);
            CHECK(r.supersingular == (r.curve.coeff(7) == 0));
        }
    }
}

TEST_CASE("classification agrees with the slope prediction over all of genus 4")
{
    // every normal form over GF(2), c_1 included
    for (const auto& r : classify(enumerate_normal_forms(4, 1))) {
        CHECK_MESSAGE(r.consistent, r.inconsistency);
        REQUIRE(r.theorem3);
        if (r.theorem3->exact)
            CHECK(r.np1() == *r.theorem3->exact);
        CHECK(r.np1() >= r.theorem3->lower_bound);
    }
}

TEST_CASE("the x^(2^i+1) family")
{
    const auto full = verify_geer(2, 1, 0);
    CHECK(full.holds());
    CHECK(full.genus == 4);
    CHECK(full.tuples == 16);
    CHECK(full.skipped_degenerate == 8);
    CHECK(full.checked == 8);
    CHECK(full.supersingular == 8);

    const auto sampled = verify_geer(1, 2, 16, 7);
    CHECK(sampled.holds());
    CHECK(sampled.genus == 2);
    CHECK(sampled.checked == 16);
    CHECK(sampled.supersingular == 16);
    CHECK(verify_geer(1, 2, 16, 7).to_json() == sampled.to_json());
}

TEST_CASE("supersingular parameter bound")
{
    CHECK(supersingular_parameter_bound(3).bound == 1);
    CHECK(supersingular_parameter_bound(3).empty_locus);
    CHECK(supersingular_parameter_bound(4).bound == 2);
    CHECK_FALSE(supersingular_parameter_bound(4).empty_locus);
    const auto b6 = supersingular_parameter_bound(6);
    CHECK(b6.bound == 3);
    CHECK(b6.forced_zero == std::vector<int>{1, 7, 11});
    for (int g : {5, 7, 8, 9, 20}) {
        const auto b = supersingular_parameter_bound(g);
        CHECK(b.bound == g - 2);
        if (!b.empty_locus)
            CHECK(b.free_coefficients == b.bound);
    }
    CHECK(supersingular_parameter_bound(14).bound == 11);
    CHECK_THROWS(supersingular_parameter_bound(2));
}

TEST_CASE("count cache round trip")
{
    TempDir dir;
    const CurveEquation c(BinaryField::make(1), {1, 0, 0, 0, 0, 0, 1});
    {
        CountCache cache(dir.path);
        CHECK(cache.size() == 0);
        CHECK_FALSE(cache.get(c, 1));
        const auto n1 = count_points(c, 1);
        cache.put(c, 1, n1);
        cache.put(c, 1, n1);
        CHECK_THROWS_AS(cache.put(c, 1, n1 + 2), std::logic_error);
        CHECK(cached_count(c, 2, &cache) == count_points(c, 2));
        CHECK(cache.size() == 2);
    }
    CountCache again(dir.path);
    CHECK(again.size() == 2);
    CHECK(again.get(c, 1) == count_points(c, 1));
    CHECK(cached_l_polynomial(c, &again).b == l_polynomial(c).b);
    CHECK(again.size() == 3);
}

TEST_CASE("a corrupt cache is rebuilt")
{
    TempDir dir;
    const CurveEquation c(BinaryField::make(1), {1, 0, 0, 0, 0, 0, 1});
    {
        CountCache cache(dir.path);
        cache.put(c, 1, count_points(c, 1));
    }
    {
        std::ofstream out(dir.path / "counts.txt", std::ios::app);
        out << "garbage line\n";
    }
    CountCache rebuilt(dir.path);
    CHECK(rebuilt.size() == 0);
    rebuilt.put(c, 1, count_points(c, 1));
    CountCache reread(dir.path);
    CHECK(reread.size() == 1);
}

TEST_CASE("cache on and off give identical records")
{
    TempDir dir;
    const auto curves = enumerate_normal_forms(4, 3, {1});
    ClassifyOptions plain;
    plain.threads = 1;
    const auto expected = dump_all(classify(curves, plain));

    CountCache cache(dir.path);
    ClassifyOptions cached = plain;
    cached.cache = &cache;

    // resume after a partial sweep
    const std::vector<CurveEquation> first_half(curves.begin(), curves.begin() + curves.size() / 2);
    classify(first_half, cached);
    CHECK(cache.size() == first_half.size() * 4);
    CHECK(dump_all(classify(curves, cached)) == expected);
    CHECK(cache.size() == curves.size() * 4);
    CHECK(dump_all(classify(curves, cached)) == expected);
    CountCache reread(dir.path);
    ClassifyOptions from_disk = plain;
    from_disk.cache = &reread;
    CHECK(dump_all(classify(curves, from_disk)) == expected);
}

TEST_CASE("a warm rerun is at least five times faster")
{
    // Counting over GF(2^18) dominates, so the cache has something to save.
    TempDir dir;
    std::mt19937_64 rng(83);
    std::vector<CurveEquation> curves;
    const auto F = BinaryField::make(6);
    for (int t = 0; t < 24; ++t)
        curves.emplace_back(F, std::vector<std::uint32_t>{static_cast<std::uint32_t>(rng() & 63), 0,
                                                          static_cast<std::uint32_t>(rng() & 63), 0,
                                                          static_cast<std::uint32_t>(rng() & 63), 0, 1});
    CountCache cache(dir.path);
    ClassifyOptions opts;
    opts.threads = 1;
    opts.cache = &cache;
    auto t0 = std::chrono::steady_clock::now();
    const auto first = dump_all(classify(curves, opts));
    const double cold = seconds_since(t0);
    double warm = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
        t0 = std::chrono::steady_clock::now();
        const auto recs = classify(curves, opts);
        warm = std::min(warm, seconds_since(t0));
        CHECK(dump_all(recs) == first);
    }
    MESSAGE("cold " << cold << " s, warm " << warm << " s");
    CHECK(cold >= 5 * warm);
}

TEST_CASE("classification is deterministic across thread counts")
{
    const auto curves = enumerate_normal_forms(3, 2);
    ClassifyOptions one;
    one.threads = 1;
    ClassifyOptions many;
    many.threads = 8;
    CHECK(dump_all(classify(curves, one)) == dump_all(classify(curves, many)));
    std::vector<CurveEquation> reversed(curves.rbegin(), curves.rend());
    CHECK(dump_all(classify(reversed, many)) == dump_all(classify(curves, one)));
}
