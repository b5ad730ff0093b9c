#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "asnp/binary_field.hpp"

namespace asnp {

/// Raised when a transformation leaves an equation of genus zero.
class DegenerateCurve : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/**
 * y^2 - y = c_1 x + c_2 x^2 + ... + c_d x^d over GF(2^e), c_d != 0.
 *
 * There is no constant term in the data model. Genus is defined once the
 * equation is odd-reduced (only odd powers, odd degree d = 2g + 1).
 */
class CurveEquation {
public:
    /// `coeffs` holds c_1..c_d as field bits.
    CurveEquation(FieldPtr field, std::vector<std::uint32_t> coeffs);

    const FieldPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    /// c_i, or 0 when i is outside [1, d].
    std::uint32_t coeff(int i) const noexcept
    {
        return (i < 1 || i > degree()) ? 0 : coeffs_[static_cast<std::size_t>(i)];
    }
    /// c_1..c_d.
    std::span<const std::uint32_t> coefficients() const noexcept
    {
        return std::span<const std::uint32_t>(coeffs_).subspan(1);
    }

    bool is_odd_reduced() const noexcept;
    bool is_monic() const noexcept { return coeffs_.back() == 1; }

    nlohmann::json to_json() const;
    static CurveEquation from_json(const nlohmann::json& j);

    bool operator==(const CurveEquation& other) const noexcept
    {
        return field_ == other.field_ && coeffs_ == other.coeffs_;
    }
    /// Orders by (degree, c_d, c_{d-1}, ..., c_1): the integer encoding with c_1 least significant.
    bool operator<(const CurveEquation& other) const noexcept;

private:
    FieldPtr field_;
    std::vector<std::uint32_t> coeffs_; // index i is the x^i coefficient, coeffs_[0] == 0
};

/// (x, y) -> (zeta x + t0, y + h(x)). All entries are bits in the curve's field.
struct IsomorphismData {
    std::uint32_t zeta = 1;
    std::uint32_t t0 = 0;
    std::vector<std::uint32_t> h; // h_0..h_k
};

/// (d - 1) / 2 for an odd-reduced equation; throws std::invalid_argument otherwise.
int genus(const CurveEquation& c);

/**
 * Substitutes the isomorphism into the equation: f(zeta x + t0) + h(x)^2 + h(x).
 * A resulting constant is absorbed into y when it has trace zero; otherwise the
 * two sides are isomorphic only over the quadratic extension and this throws.
 */
CurveEquation apply_isomorphism(const CurveEquation& c, const IsomorphismData& iso);

/// Eliminates even powers top-down via h = sqrt(c_2i) x^i. Throws DegenerateCurve if degree < 3 remains.
CurveEquation reduce_odd(const CurveEquation& c);

/**
 * Scales x -> zeta x so that the leading coefficient becomes 1. If no
 * zeta^d = c_d^{-1} exists in the base field and `allow_extension` is set, the
 * equation is moved to the smallest extension that has one.
 */
CurveEquation make_monic(const CurveEquation& c, bool allow_extension = false);

/// The same equation with coefficients embedded into `target`.
CurveEquation embed_curve(const CurveEquation& c, const FieldPtr& target);

/// binom(d, 2^k m) is odd for some k >= 0.
bool lucas_admissible(int d, int m) noexcept;

struct KillResult {
    FieldPtr field;                        ///< GF(2^(e * searchdeg)), where the scan ran
    std::vector<CurveEquation> equations;  ///< distinct normal forms with c_m = 0, sorted
    std::uint64_t translations_scanned = 0;
    std::uint64_t twisted_translations = 0; ///< t0 with trace(f(t0)) = 1, not usable over this field
};

/**
 * Scans every t0 in GF(2^(e * searchdeg)) and keeps the normal forms of
 * f(x + t0) whose x^m coefficient vanishes.
 */
KillResult kill_coefficient(const CurveEquation& c, int m, unsigned searchdeg);

} // namespace asnp
