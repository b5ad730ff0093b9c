#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include <json.hpp>

namespace asnp {

class BinaryField;
using FieldPtr = std::shared_ptr<const BinaryField>;

/**
 * GF(2^m), 1 <= m <= 32, in the polynomial basis of the lexicographically
 * smallest irreducible modulus of degree m.
 *
 * Elements are plain m-bit words; bit i is the coefficient of x^i. The
 * descriptor is immutable after construction. Fields are interned per degree,
 * so two elements belong to the same field iff their descriptors compare equal
 * by pointer.
 *
 * Multiplication is shift-and-reduce. The point counter does not use it in
 * its inner loop; it reads trace_by_exponent() instead.
 */
class BinaryField {
public:
    static constexpr unsigned kMaxDegree = 32;
    /// Largest degree for which the discrete-log and trace tables are built.
    static constexpr unsigned kMaxTableDegree = 24;

    /// Interned descriptor for GF(2^m). Throws std::invalid_argument for m outside [1, 32].
    static FieldPtr make(unsigned m);

    unsigned degree() const noexcept { return m_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint32_t generator() const noexcept { return generator_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << m_; }
    std::uint64_t group_order() const noexcept { return size() - 1; }
    std::uint32_t mask() const noexcept { return static_cast<std::uint32_t>(size() - 1); }
    bool contains(std::uint64_t bits) const noexcept { return bits < size(); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t square(std::uint32_t a) const noexcept { return mul(a, a); }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t sqrt(std::uint32_t a) const noexcept;
    unsigned trace(std::uint32_t a) const noexcept;

    /// generator()^k.
    std::uint32_t generator_power(std::uint64_t k) const noexcept;

    /// Discrete logarithm to base generator(); a must be nonzero.
    std::uint64_t log(std::uint32_t a) const;

    /// Entry k is trace(generator()^k), 0 <= k < group_order(). Only for m <= kMaxTableDegree.
    const std::vector<std::uint8_t>& trace_by_exponent() const;

private:
    BinaryField(unsigned m, std::uint64_t modulus);

    unsigned m_;
    std::uint64_t modulus_;
    std::uint32_t generator_ = 1;
    std::uint32_t trace_mask_ = 0;

    mutable std::once_flag trace_table_once_;
    mutable std::vector<std::uint8_t> trace_table_;
    mutable std::once_flag log_table_once_;
    mutable std::vector<std::uint32_t> log_table_;
};

/// An element together with the field it lives in.
class FieldElement {
public:
    FieldElement(FieldPtr field, std::uint32_t bits);

    const FieldPtr& field() const noexcept { return field_; }
    std::uint32_t bits() const noexcept { return bits_; }
    bool is_zero() const noexcept { return bits_ == 0; }

    FieldElement operator+(const FieldElement& other) const;
    FieldElement operator*(const FieldElement& other) const;
    FieldElement inverse() const;
    FieldElement sqrt() const;
    FieldElement pow(std::uint64_t e) const;
    unsigned trace() const;

    /// Image under the canonical embedding into `target` (see FieldEmbedding).
    FieldElement embed(const FieldPtr& target) const;

    bool operator==(const FieldElement& other) const noexcept
    {
        return field_ == other.field_ && bits_ == other.bits_;
    }

private:
    void require_same_field(const FieldElement& other) const;

    FieldPtr field_;
    std::uint32_t bits_;
};

/**
 * Ring embedding GF(2^e) -> GF(2^(e*n)).
 *
 * The source generator is sent to target_generator^((2^(en)-1)/(2^e-1)) when
 * that element is a conjugate root of the source generator's minimal
 * polynomial; otherwise to the image fixed by the smallest-exponent root of
 * the source modulus. The map is stored as the images of the basis x^i.
 */
class FieldEmbedding {
public:
    /// Cached embedding; throws std::invalid_argument unless source degree divides target degree.
    static const FieldEmbedding& get(const FieldPtr& source, const FieldPtr& target);

    const FieldPtr& source() const noexcept { return source_; }
    const FieldPtr& target() const noexcept { return target_; }
    std::uint32_t apply(std::uint32_t a) const noexcept;

    FieldEmbedding(FieldPtr source, FieldPtr target);

private:
    FieldPtr source_;
    FieldPtr target_;
    std::array<std::uint32_t, BinaryField::kMaxDegree> basis_image_{};
};

nlohmann::json field_to_json(const FieldPtr& field);
/// "modulus" is optional; when present it must be the canonical one for the degree.
FieldPtr field_from_json(const nlohmann::json& j);

namespace gf2poly {
// Polynomials over GF(2) packed into 64-bit words, degree <= 63.
int degree(std::uint64_t p) noexcept;
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f) noexcept;
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;
/// Rabin irreducibility test for degree <= 32.
bool is_irreducible(std::uint64_t f) noexcept;
} // namespace gf2poly

} // namespace asnp
