#pragma once

#include <cstdint>
#include <vector>

#include "asnp/binary_field.hpp"

namespace asnp {

/// Coordinates in the basis 1, x, ..., x^(e-1), each reduced mod 2^K.
struct GrElement {
    std::vector<std::uint64_t> coeffs;

    bool operator==(const GrElement&) const = default;
};

/**
 * GR(2^K, e) = (Z/2^K)[x] / (Phi), Phi the field modulus read with integer
 * coefficients. Arithmetic is wrapping 64-bit followed by masking, so every
 * operation is exact mod 2^K for K <= 62.
 */
class GaloisRing {
public:
    static constexpr unsigned kMaxPrecision = 62;

    GaloisRing(FieldPtr field, unsigned K);

    const FieldPtr& field() const noexcept { return field_; }
    unsigned precision() const noexcept { return K_; }
    unsigned degree() const noexcept { return e_; }
    std::uint64_t mask() const noexcept { return mask_; }

    GrElement zero() const { return GrElement{std::vector<std::uint64_t>(e_, 0)}; }
    GrElement one() const { return from_integer(1); }
    GrElement from_integer(std::int64_t n) const;

    /// Coordinates copied bit by bit from the field element.
    GrElement lift(std::uint32_t bits) const;
    /// Reduction mod 2 back to GF(2^e).
    std::uint32_t reduce(const GrElement& x) const;

    GrElement add(const GrElement& a, const GrElement& b) const;
    GrElement sub(const GrElement& a, const GrElement& b) const;
    GrElement mul(const GrElement& a, const GrElement& b) const;
    GrElement scale(const GrElement& a, std::uint64_t s) const;
    GrElement pow(const GrElement& a, std::uint64_t n) const;
    /// Reinterprets `a` in the same ring at precision `K` (reduces or zero-extends).
    GrElement truncate(const GrElement& a, unsigned K) const;

    /// Largest k with a in 2^k R; K for zero.
    unsigned ord2(const GrElement& a) const;
    bool is_zero(const GrElement& a) const;

    // Raw kernels over coordinate arrays of length degree().
    /// acc += a * b
    void mul_add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* acc) const;
    /// out = a * b
    void mul_into(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;

private:
    void reduce_wide(std::uint64_t* wide, std::uint64_t* out, bool accumulate) const;

    FieldPtr field_;
    unsigned K_;
    unsigned e_;
    std::uint64_t mask_;
    std::vector<unsigned> phi_support_; // j with Phi_j = 1, j < e
};

/// Inverse of an odd number mod 2^64.
std::uint64_t inverse_odd(std::uint64_t a) noexcept;

} // namespace asnp
