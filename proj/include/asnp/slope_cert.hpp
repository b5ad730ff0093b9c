#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "asnp/c_series.hpp"
#include "asnp/rational.hpp"

namespace asnp {

/// 1/h: the slope bound valid for every genus-g curve of 2-rank zero.
Rational np1_lower_bound(int g);

/// lambda_n = (n + g - 2) / (h (n - 1)), n >= 2.
Rational lambda_n(int g, int n);
/// lambda'_n = (n + g - h - 2) / (h (n - 2)), n >= 3.
Rational lambda_prime_n(int g, int n);

enum class SlopeCase { I, II, III };

std::string to_string(SlopeCase c);

/**
 * Smallest n0 with lambda_{n0} < hint, h | (n0 + g - 1) and
 * (g - 1) / (h (n0 - 1)) <= 1. For case III additionally lambda'_{n0} < hint
 * and (g - h) / (h (n0 - 1)) <= 1. Throws when hint <= 1/h.
 */
int schedule_n0(int g, SlopeCase target, const Rational& hint);

struct CertificateQuery {
    Rational lambda{0};
    int n_max = 6;
    std::uint64_t m_max = 8;
    /// Part ii only: the distinguished n0 and j.
    std::optional<int> n0;
    std::optional<int> j;
    /// Defaults to ceil(n_max * lambda) + 2 (n0 in place of n_max for part ii).
    std::optional<unsigned> K;
};

enum class Verdict { AllHold, ViolationFound, Inconclusive };

std::string to_string(Verdict v);

struct Witness {
    std::uint64_t m = 0;
    int n = 0;
    int j = 0;
    std::uint64_t r = 0;
    unsigned observed = 0;
    bool observed_at_least = false; ///< observed is the precision, the true order may be larger
    unsigned required = 0;
    std::string group;
};

struct SlopeBoundReport {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<Witness> witnesses;
    Rational lambda{0};
    int n_max = 0;
    std::uint64_t m_max = 0;
    unsigned K = 0;
    std::size_t checked = 0;
    /// All (m, n) beyond the bounds are covered by the digit-sum bound, since lambda <= 1/h.
    bool unconditional = false;

    nlohmann::json to_json() const;
};

/**
 * ord_2(C_{m 2^{n+g-1} - j}) >= ceil(n lambda) for 1 <= n <= n_max,
 * 1 <= m <= m_max, 1 <= j <= g. Uses the stable series: C_r(n + g - 2) agrees
 * with it mod 2^{n+g-2}, and every threshold here is at most n.
 */
SlopeBoundReport keylemma_check_i(const LiftedCurve& a, const CertificateQuery& q);

/**
 * The three hypothesis groups at fixed (n0, j):
 *   (1) the part-i inequality for n < n0 and m <= m_max,
 *   (2) the inequality at n = n0 for 2 <= m <= m_max,
 *   (3) ord_2(C_{2^{n0+g-1} - j}) < ceil(n0 lambda).
 * A failure in (1) or (2) is a violation; (3) not failing leaves the verdict
 * inconclusive; otherwise all-hold predicts NP_1 < lambda.
 */
SlopeBoundReport keylemma_check_ii(const LiftedCurve& a, const CertificateQuery& q);

struct SlopePrediction {
    Rational lower_bound{0};
    std::optional<Rational> exact;
    SlopeCase slope_case = SlopeCase::I;

    nlohmann::json to_json() const;
};

/**
 * Case II: g < 2^h - 2 and c_{2^h-1} != 0. Case III: g = 2^h - 2 and
 * c_{2^h-1} != 0 or c_{3*2^{h-1}-1} != 0. In both NP_1 = 1/h; otherwise
 * (case I) only NP_1 >= 1/h is known.
 */
SlopePrediction theorem3_slope(const CurveEquation& c);

} // namespace asnp
