#include "asnp/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <random>
#include <stdexcept>
#include <thread>

#include "asnp/binary_lemmas.hpp"

namespace asnp {

namespace {

std::string field_name(unsigned e) { return "GF(2^" + std::to_string(e) + ")"; }

std::string curve_string(const CurveEquation& c) { return c.to_json()["coeffs"].dump(); }

} // namespace

std::vector<CurveEquation> enumerate_normal_forms(int g, unsigned e, const std::set<int>& zero)
{
    if (g < 1)
        throw std::invalid_argument("genus must be positive");
    const int d = 2 * g + 1;
    for (int i : zero) {
        if (i < 1 || i >= d || i % 2 == 0)
            throw std::invalid_argument("forced-zero index " + std::to_string(i) + " is not an odd index below " +
                                        std::to_string(d));
    }
    std::vector<int> free;
    for (int i = 1; i < d; i += 2) {
        if (!zero.contains(i))
            free.push_back(i);
    }
    const FieldPtr field = BinaryField::make(e);
    const std::uint64_t bits = static_cast<std::uint64_t>(e) * free.size();
    if (bits > 24)
        throw std::invalid_argument("sweep of (2^" + std::to_string(e) + ")^" + std::to_string(free.size()) +
                                    " curves exceeds the size cap");
    const std::uint64_t count = std::uint64_t{1} << bits;
    const std::uint32_t digit = field->mask();

    std::vector<CurveEquation> out;
    out.reserve(count);
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(d), 0);
    coeffs.back() = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
        for (std::size_t k = 0; k < free.size(); ++k)
            coeffs[static_cast<std::size_t>(free[k] - 1)] = static_cast<std::uint32_t>(code >> (k * e)) & digit;
        out.emplace_back(field, coeffs);
    }
    return out;
}

nlohmann::json ClassificationRecord::to_json() const
{
    nlohmann::json slopes = nlohmann::json::array();
    for (const auto& s : np.slopes)
        slopes.push_back(to_string(s));
    nlohmann::json j = {{"curve", curve.to_json()},
                        {"field", field_name(curve.field()->degree())},
                        {"L", L.to_json()},
                        {"slopes", slopes},
                        {"np1", to_string(np1())},
                        {"supersingular", supersingular},
                        {"theorem3", theorem3 ? theorem3->to_json() : nlohmann::json(nullptr)},
                        {"consistent", consistent}};
    if (!consistent)
        j["inconsistency"] = inconsistency;
    return j;
}

ClassificationRecord classify_one(const CurveEquation& c, CountCache* cache)
{
    ClassificationRecord rec{c, cached_l_polynomial(c, cache), {}, false, std::nullopt, true, {}};
    rec.np = newton_polygon(rec.L);
    rec.supersingular = is_supersingular(rec.np);
    const int g = genus(c);
    try {
        check_polygon_invariants(rec.np, g);
    } catch (const std::logic_error& err) {
        rec.consistent = false;
        rec.inconsistency = err.what();
        return rec;
    }
    if (g >= 3 && c.is_monic()) {
        rec.theorem3 = theorem3_slope(c);
        const Rational first = rec.np1();
        if (first < rec.theorem3->lower_bound) {
            rec.consistent = false;
            rec.inconsistency = "NP_1 = " + to_string(first) + " below 1/h";
        } else if (rec.theorem3->exact && first != *rec.theorem3->exact) {
            rec.consistent = false;
            rec.inconsistency = "NP_1 = " + to_string(first) + " but case " + to_string(rec.theorem3->slope_case) +
                                " predicts " + to_string(*rec.theorem3->exact);
        }
    }
    return rec;
}

std::vector<ClassificationRecord> classify(const std::vector<CurveEquation>& curves, const ClassifyOptions& options)
{
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(options.threads == 0 ? hw : options.threads, std::max<std::size_t>(curves.size(), 1)));
    std::vector<std::optional<ClassificationRecord>> slots(curves.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < curves.size(); i = next++)
            slots[i] = classify_one(curves[i], options.cache);
    };
    std::vector<std::future<void>> futures;
    for (unsigned t = 0; t < workers; ++t)
        futures.push_back(std::async(std::launch::async, work));
    for (auto& f : futures)
        f.get();

    std::vector<ClassificationRecord> out;
    out.reserve(curves.size());
    for (auto& s : slots)
        out.push_back(std::move(*s));
    std::stable_sort(out.begin(), out.end(),
                     [](const ClassificationRecord& a, const ClassificationRecord& b) { return a.curve < b.curve; });
    return out;
}

nlohmann::json GeerReport::to_json() const
{
    return {{"n", n},
            {"field", field_name(e)},
            {"genus", genus},
            {"tuples", tuples},
            {"skipped_degenerate", skipped_degenerate},
            {"checked", checked},
            {"supersingular", supersingular},
            {"holds", holds()},
            {"failures", failures}};
}

GeerReport verify_geer(int n, unsigned e, std::size_t samples, std::uint64_t seed, CountCache* cache)
{
    if (n < 0 || n > 4)
        throw std::invalid_argument("family index n must lie in [0, 4]");
    GeerReport rep;
    rep.n = n;
    rep.e = e;
    rep.genus = 1 << n;
    if (static_cast<unsigned>(rep.genus) * e > BinaryField::kMaxTableDegree)
        throw std::invalid_argument("e * 2^n = " + std::to_string(rep.genus * static_cast<int>(e)) + " exceeds 24");
    const FieldPtr field = BinaryField::make(e);
    std::vector<int> indices;
    for (int i = 0; i <= n + 1; ++i)
        indices.push_back((1 << i) + 1);
    const int D = indices.back();

    const auto check = [&](const std::vector<std::uint32_t>& tuple) {
        ++rep.tuples;
        if (tuple.back() == 0) {
            ++rep.skipped_degenerate;
            return;
        }
        std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(D), 0);
        for (std::size_t k = 0; k < indices.size(); ++k)
            coeffs[static_cast<std::size_t>(indices[k] - 1)] = tuple[k];
        const CurveEquation raw(field, coeffs);
        const CurveEquation normal = make_monic(reduce_odd(raw), true);
        const ClassificationRecord rec = classify_one(normal, cache);
        ++rep.checked;
        if (rec.supersingular)
            ++rep.supersingular;
        else
            rep.failures.push_back(curve_string(raw) + " has NP_1 = " + to_string(rec.np1()));
        if (!rec.consistent)
            rep.failures.push_back(curve_string(raw) + ": " + rec.inconsistency);
    };

    const std::size_t width = indices.size();
    std::vector<std::uint32_t> tuple(width, 0);
    if (samples == 0) {
        const std::uint64_t bits = static_cast<std::uint64_t>(e) * width;
        if (bits > 24)
            throw std::invalid_argument("exhaustive family sweep too large; pass a sample count");
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
            for (std::size_t k = 0; k < width; ++k)
                tuple[k] = static_cast<std::uint32_t>(code >> (k * e)) & field->mask();
            check(tuple);
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint32_t> any(0, field->mask());
        std::uniform_int_distribution<std::uint32_t> nonzero(1, field->mask());
        for (std::size_t s = 0; s < samples; ++s) {
            for (std::size_t k = 0; k + 1 < width; ++k)
                tuple[k] = any(rng);
            tuple.back() = nonzero(rng);
            check(tuple);
        }
    }
    return rep;
}

nlohmann::json ParameterBound::to_json() const
{
    return {{"g", g},
            {"h", h},
            {"bound", bound},
            {"free_coefficients", free_coefficients},
            {"forced_zero", forced_zero},
            {"empty_locus", empty_locus}};
}

ParameterBound supersingular_parameter_bound(int g)
{
    if (g < 3)
        throw std::invalid_argument("parameter bound needs g >= 3");
    ParameterBound pb;
    pb.g = g;
    pb.h = slope_denominator_h(g);
    const int edge = (1 << pb.h) - 2;
    pb.bound = g == edge ? g - 3 : g - 2;

    // c_1 can be killed since binom(2g+1, 1) is odd; the rest is forced by the slope cases.
    std::set<int> forced{1, (1 << pb.h) - 1};
    if (g == edge)
        forced.insert(3 * (1 << (pb.h - 1)) - 1);
    pb.forced_zero.assign(forced.begin(), forced.end());
    const int d = 2 * g + 1;
    pb.empty_locus = forced.contains(d);

    pb.free_coefficients = 0;
    for (int i = 1; i < d; i += 2)
        pb.free_coefficients += !forced.contains(i);
    if (!pb.empty_locus && pb.free_coefficients != pb.bound)
        throw std::logic_error("free coefficient count " + std::to_string(pb.free_coefficients) +
                               " disagrees with the bound " + std::to_string(pb.bound));
    return pb;
}

nlohmann::json SweepReport::to_json() const
{
    return {{"check", name},
            {"field", field_name(e)},
            {"scope", "verified over " + field_name(e) + " only"},
            {"curves", curves},
            {"supersingular", supersingular},
            {"holds", holds()},
            {"failures", failures}};
}

SweepReport verify_no_supersingular_genus3(unsigned e, const ClassifyOptions& options)
{
    SweepReport rep;
    rep.name = "thm1";
    rep.e = e;
    rep.records = classify(enumerate_normal_forms(3, e), options);
    for (const auto& rec : rep.records) {
        ++rep.curves;
        rep.supersingular += rec.supersingular;
        if (rec.np1() != Rational(1, 3))
            rep.failures.push_back(curve_string(rec.curve) + " has NP_1 = " + to_string(rec.np1()));
        if (!rec.consistent)
            rep.failures.push_back(curve_string(rec.curve) + ": " + rec.inconsistency);
    }
    return rep;
}

SweepReport verify_genus4_classification(unsigned e, const ClassifyOptions& options)
{
    SweepReport rep;
    rep.name = "thm2";
    rep.e = e;
    rep.records = classify(enumerate_normal_forms(4, e, {1}), options);
    for (const auto& rec : rep.records) {
        ++rep.curves;
        rep.supersingular += rec.supersingular;
        const bool predicted = rec.curve.coeff(7) == 0;
        if (rec.supersingular != predicted)
            rep.failures.push_back(curve_string(rec.curve) + (rec.supersingular ? " is" : " is not") +
                                   " supersingular");
        if (!rec.consistent)
            rep.failures.push_back(curve_string(rec.curve) + ": " + rec.inconsistency);
    }
    return rep;
}

} // namespace asnp
