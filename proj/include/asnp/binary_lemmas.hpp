#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "asnp/c_series.hpp"

namespace asnp {

/// h = floor(log2(g + 1) + 1), the denominator of the generic slope bound.
int slope_denominator_h(int g);

/// ceil(s(r) / h).
unsigned valuation_floor(std::uint64_t r, int h);

struct LemmaFailure {
    std::string where;
    std::string expected;
    std::string observed;
};

struct LemmaReport {
    std::string name;
    std::size_t checked = 0;
    std::vector<LemmaFailure> failures;

    bool holds() const noexcept { return failures.empty(); }
    nlohmann::json to_json() const;
};

/// ord_2(C_r) >= ceil(s(r)/h) for 1 <= r <= R on the stable series.
LemmaReport check_valuation_bound(const LiftedCurve& a, std::size_t R);

enum class ShiftReading {
    /// C_{2^b' r_b} = 2^b (C_{r_b} / 2^b)^{2^b'} mod 2^{b+1}: the unit part is raised by Frobenius.
    Frobenius,
    /// C_{2^b' r_b} = (C_{r_b})^{2^b'} mod 2^{b+1} as a ring power. Fails once b, b' >= 1.
    RingPower,
};

/**
 * C_{2^{bh+b'} - 2^{b'}} against C_{2^{bh} - 1} for 0 <= b <= b_max,
 * 0 <= b' <= bp_max. Needs precision at least b_max + 1.
 */
LemmaReport check_frobenius_shift(const LiftedCurve& a, int b_max, int bp_max,
                                  ShiftReading reading = ShiftReading::Frobenius);

/// g < 2^h - 2: C_{2^{bh}-1} = 2^b a_{2^h-1}^{(2^{bh}-1)/(2^h-1)} mod 2^{b+1}, 1 <= b <= b_max.
LemmaReport check_leading_congruence(const LiftedCurve& a, int b_max);

/**
 * g = 2^h - 2: C_{2^{bh}-1} = 2 A^{2^{(b-1)h}} C_{2^{(b-1)h}-1} + 4 B^{2^{(b-2)h}} C_{2^{(b-2)h}-1}
 * mod 2^{b+1} with A = a_{2^h-1}, B = a_{3*2^{h-1}-1} and C_r = 0 for r < 0.
 */
LemmaReport check_telescoping(const LiftedCurve& a, int b_min, int b_max);

} // namespace asnp
