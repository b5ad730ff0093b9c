#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "asnp/curve.hpp"
#include "asnp/galois_ring.hpp"

namespace asnp {

/**
 * f(x) = sum a_i x^i over GR(2^K, e) with a_i = c_i mod 2 and a_d = 1.
 *
 * The lift is not unique; every congruence checked in this library is
 * expected to hold for all lifts, so tests sample several.
 */
class LiftedCurve {
public:
    /// a_i = verbatim coordinates of c_i. Requires a monic equation.
    static LiftedCurve verbatim(const CurveEquation& c, unsigned K);
    /// a_i = c_i + 2 * (uniform noise) for i < d, a_d = 1.
    static LiftedCurve random(const CurveEquation& c, unsigned K, std::mt19937_64& rng);

    const GaloisRing& ring() const noexcept { return ring_; }
    int degree() const noexcept { return static_cast<int>(a_.size()) - 1; }
    /// g with d = 2g + 1 (rounded down for even d).
    int genus() const noexcept { return (degree() - 1) / 2; }
    /// a_i, zero outside [1, d].
    const GrElement& coeff(int i) const;
    const CurveEquation& curve() const noexcept { return curve_; }

    /// The same lift read at a lower (or equal) precision.
    LiftedCurve with_precision(unsigned K) const;

private:
    LiftedCurve(CurveEquation curve, GaloisRing ring, std::vector<GrElement> a);

    CurveEquation curve_;
    GaloisRing ring_;
    std::vector<GrElement> a_; // a_[0] is zero
    GrElement zero_;
};

/**
 * 4^k * binom((2^N - 1)/2, k) mod 2^K, computed as
 * 2^(k - ord_2 k!) * prod_{i<k} (2^N - 1 - 2i) * oddpart(k!)^{-1}.
 * Its 2-adic valuation is s(k).
 */
std::uint64_t half_binom_factor(std::uint64_t k, unsigned N, unsigned K);

/// (-1)^k binom(2k, k) mod 2^K: the N -> infinity limit of half_binom_factor.
std::uint64_t stable_binom_factor(std::uint64_t k, unsigned K);

/// Coefficients 0..R of a power series over a Galois ring.
class TwoAdicSeries {
public:
    TwoAdicSeries(GaloisRing ring, std::size_t R);

    const GaloisRing& ring() const noexcept { return ring_; }
    std::size_t degree_cap() const noexcept { return R_; }
    GrElement term(std::size_t r) const;
    /// ord_2 of term r; ring().precision() stands for ">= K".
    unsigned ord2(std::size_t r) const;

    std::uint64_t* raw(std::size_t r) noexcept { return data_.data() + r * ring_.degree(); }
    const std::uint64_t* raw(std::size_t r) const noexcept { return data_.data() + r * ring_.degree(); }

private:
    GaloisRing ring_;
    std::size_t R_;
    std::vector<std::uint64_t> data_;
};

enum class SeriesMethod {
    /// sum_k T(k) [f^k] with truncated powers; quadratic in R.
    PowerSum,
    /// Coefficient recursion from (1 + 4f) S' = 2E f' S at a guard precision; linear in R.
    Recurrence,
};

/// C_r(N) for r = 0..R: coefficients of (1 + 4f)^((2^N - 1)/2) mod 2^K.
TwoAdicSeries c_series(const LiftedCurve& a, unsigned N, std::size_t R,
                       SeriesMethod method = SeriesMethod::PowerSum);

/// C_r for r = 0..R: coefficients of (1 + 4f)^(-1/2) mod 2^K.
TwoAdicSeries c_series_stable(const LiftedCurve& a, std::size_t R,
                              SeriesMethod method = SeriesMethod::PowerSum);

struct OrdEntry {
    std::size_t r;
    unsigned ord;     ///< valid when !at_least_K
    bool at_least_K;  ///< the coefficient vanishes mod 2^K
};

std::vector<OrdEntry> ord_profile(const TwoAdicSeries& s);

} // namespace asnp
