#include "asnp/galois_ring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace asnp {

std::uint64_t inverse_odd(std::uint64_t a) noexcept
{
    std::uint64_t x = a; // correct to 3 bits
    for (int i = 0; i < 5; ++i)
        x *= 2 - a * x;
    return x;
}

GaloisRing::GaloisRing(FieldPtr field, unsigned K) : field_(std::move(field)), K_(K)
{
    if (!field_)
        throw std::invalid_argument("Galois ring without a residue field");
    if (K < 1 || K > kMaxPrecision)
        throw std::invalid_argument("precision K must lie in [1, 62], got " + std::to_string(K));
    e_ = field_->degree();
    mask_ = (std::uint64_t{1} << K_) - 1;
    for (unsigned j = 0; j < e_; ++j) {
        if ((field_->modulus() >> j) & 1)
            phi_support_.push_back(j);
    }
}

GrElement GaloisRing::from_integer(std::int64_t n) const
{
    GrElement r = zero();
    r.coeffs[0] = static_cast<std::uint64_t>(n) & mask_;
    return r;
}

GrElement GaloisRing::lift(std::uint32_t bits) const
{
    if (!field_->contains(bits))
        throw std::invalid_argument("lift of an element outside the residue field");
    GrElement r = zero();
    for (unsigned i = 0; i < e_; ++i)
        r.coeffs[i] = (bits >> i) & 1;
    return r;
}

std::uint32_t GaloisRing::reduce(const GrElement& x) const
{
    std::uint32_t bits = 0;
    for (unsigned i = 0; i < e_; ++i)
        bits |= static_cast<std::uint32_t>(x.coeffs[i] & 1) << i;
    return bits;
}

GrElement GaloisRing::add(const GrElement& a, const GrElement& b) const
{
    GrElement r = zero();
    for (unsigned i = 0; i < e_; ++i)
        r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) & mask_;
    return r;
}

GrElement GaloisRing::sub(const GrElement& a, const GrElement& b) const
{
    GrElement r = zero();
    for (unsigned i = 0; i < e_; ++i)
        r.coeffs[i] = (a.coeffs[i] - b.coeffs[i]) & mask_;
    return r;
}

void GaloisRing::reduce_wide(std::uint64_t* wide, std::uint64_t* out, bool accumulate) const
{
    // x^e = -sum_{j in support} x^j
    for (unsigned k = 2 * e_ - 2; k >= e_; --k) {
        const std::uint64_t c = wide[k];
        if (c != 0) {
            for (unsigned j : phi_support_)
                wide[k - e_ + j] -= c;
        }
        if (k == e_)
            break;
    }
    for (unsigned i = 0; i < e_; ++i)
        out[i] = ((accumulate ? out[i] : 0) + wide[i]) & mask_;
}

void GaloisRing::mul_add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* acc) const
{
    if (e_ == 1) {
        acc[0] = (acc[0] + a[0] * b[0]) & mask_;
        return;
    }
    std::uint64_t wide[2 * BinaryField::kMaxDegree] = {};
    for (unsigned i = 0; i < e_; ++i) {
        if (a[i] == 0)
            continue;
        for (unsigned j = 0; j < e_; ++j)
            wide[i + j] += a[i] * b[j];
    }
    reduce_wide(wide, acc, true);
}

void GaloisRing::mul_into(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const
{
    std::fill(out, out + e_, 0);
    mul_add(a, b, out);
}

GrElement GaloisRing::mul(const GrElement& a, const GrElement& b) const
{
    GrElement r = zero();
    mul_into(a.coeffs.data(), b.coeffs.data(), r.coeffs.data());
    return r;
}

GrElement GaloisRing::scale(const GrElement& a, std::uint64_t s) const
{
    GrElement r = zero();
    for (unsigned i = 0; i < e_; ++i)
        r.coeffs[i] = (a.coeffs[i] * s) & mask_;
    return r;
}

GrElement GaloisRing::pow(const GrElement& a, std::uint64_t n) const
{
    GrElement result = one();
    GrElement base = a;
    while (n != 0) {
        if (n & 1)
            result = mul(result, base);
        base = mul(base, base);
        n >>= 1;
    }
    return result;
}

GrElement GaloisRing::truncate(const GrElement& a, unsigned K) const
{
    const std::uint64_t m = (K >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << K) - 1);
    GrElement r = a;
    for (auto& c : r.coeffs)
        c &= m & mask_;
    return r;
}

unsigned GaloisRing::ord2(const GrElement& a) const
{
    unsigned best = K_;
    for (unsigned i = 0; i < e_; ++i) {
        const std::uint64_t c = a.coeffs[i] & mask_;
        if (c != 0)
            best = std::min(best, static_cast<unsigned>(std::countr_zero(c)));
    }
    return best;
}

bool GaloisRing::is_zero(const GrElement& a) const { return ord2(a) >= K_; }

} // namespace asnp
