#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "asnp/count_cache.hpp"
#include "asnp/slope_cert.hpp"
#include "asnp/zeta.hpp"

namespace asnp {

/// Largest number of curves a single sweep will enumerate.
inline constexpr std::uint64_t kMaxSweepSize = std::uint64_t{1} << 24;

/**
 * y^2 - y = x^{2g+1} + sum_{i<g} c_{2i+1} x^{2i+1} over GF(2^e) with the
 * indices in `zero` forced to vanish. Ordered by the coefficient vector read
 * as an integer with c_1 least significant.
 */
std::vector<CurveEquation> enumerate_normal_forms(int g, unsigned e, const std::set<int>& zero = {});

struct ClassificationRecord {
    CurveEquation curve;
    LPolynomial L;
    NewtonPolygon np;
    bool supersingular = false;
    std::optional<SlopePrediction> theorem3; ///< absent for g < 3
    bool consistent = false;
    std::string inconsistency;

    Rational np1() const { return asnp::np1(np); }
    nlohmann::json to_json() const;
};

/// Polygon invariants hold and the slope prediction (if any) matches the polygon.
ClassificationRecord classify_one(const CurveEquation& c, CountCache* cache = nullptr);

struct ClassifyOptions {
    CountCache* cache = nullptr;
    unsigned threads = 0; ///< 0: hardware concurrency
};

/// One record per curve, sorted by curve.
std::vector<ClassificationRecord> classify(const std::vector<CurveEquation>& curves, const ClassifyOptions& options = {});

struct GeerReport {
    int n = 0;
    unsigned e = 0;
    int genus = 0;
    std::size_t tuples = 0;
    std::size_t skipped_degenerate = 0;
    std::size_t checked = 0;
    std::size_t supersingular = 0;
    std::vector<std::string> failures;

    bool holds() const noexcept { return failures.empty() && checked > 0; }
    nlohmann::json to_json() const;
};

/**
 * y^2 - y = sum_{i=0}^{n+1} c_{2^i+1} x^{2^i+1} over GF(2^e), genus 2^n.
 * samples = 0 sweeps every tuple and skips those whose top coefficient is
 * zero; otherwise draws `samples` tuples with nonzero top coefficient.
 */
GeerReport verify_geer(int n, unsigned e, std::size_t samples, std::uint64_t seed = 1, CountCache* cache = nullptr);

struct ParameterBound {
    int g = 0;
    int h = 0;
    int bound = 0;
    int free_coefficients = 0;
    std::vector<int> forced_zero;
    /// A forced index is the leading one, so no curve of this genus survives the constraints.
    bool empty_locus = false;

    nlohmann::json to_json() const;
};

/**
 * g - 2, or g - 3 when g = 2^h - 2: the number of free coefficients in the
 * odd normal form after forcing c_1 = c_{2^h-1} = 0 (and c_{3*2^{h-1}-1} = 0
 * when g = 2^h - 2). The count is recomputed from the constraint set and must
 * agree unless the locus is empty.
 */
ParameterBound supersingular_parameter_bound(int g);

struct SweepReport {
    std::string name;
    unsigned e = 0;
    std::size_t curves = 0;
    std::size_t supersingular = 0;
    std::vector<std::string> failures;
    std::vector<ClassificationRecord> records;

    bool holds() const noexcept { return failures.empty(); }
    /// Summary only; records are emitted separately.
    nlohmann::json to_json() const;
};

/// All monic odd genus-3 curves over GF(2^e): NP_1 = 1/3 and none supersingular.
SweepReport verify_no_supersingular_genus3(unsigned e, const ClassifyOptions& options = {});

/// Genus-4 curves x^9 + c_7 x^7 + c_5 x^5 + c_3 x^3 over GF(2^e): supersingular iff c_7 = 0.
SweepReport verify_genus4_classification(unsigned e, const ClassifyOptions& options = {});

} // namespace asnp
