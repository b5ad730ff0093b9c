#include "asnp/binary_field.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace asnp {

namespace gf2poly {

int degree(std::uint64_t p) noexcept
{
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

namespace {

std::uint64_t clmul32(std::uint64_t a, std::uint64_t b) noexcept
{
    std::uint64_t r = 0;
    while (b != 0) {
        r ^= a << std::countr_zero(b);
        b &= b - 1;
    }
    return r;
}

std::uint64_t mod(std::uint64_t a, std::uint64_t f) noexcept
{
    const int df = degree(f);
    for (int da = degree(a); da >= df; da = degree(a))
        a ^= f << (da - df);
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

} // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f) noexcept
{
    return mod(clmul32(mod(a, f), mod(b, f)), f);
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept
{
    while (b != 0) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(std::uint64_t f) noexcept
{
    const int n = degree(f);
    if (n < 1 || n > 32)
        return false;
    if (n == 1)
        return true;
    // x^(2^k) mod f for k = 0..n
    std::vector<std::uint64_t> frob(static_cast<std::size_t>(n) + 1);
    frob[0] = mod(2, f);
    for (int k = 1; k <= n; ++k)
        frob[k] = mulmod(frob[k - 1], frob[k - 1], f);
    if (frob[n] != mod(2, f))
        return false;
    for (std::uint64_t p : prime_factors(static_cast<std::uint64_t>(n))) {
        const std::uint64_t diff = frob[n / p] ^ mod(2, f);
        if (gcd(f, diff) != 1)
            return false;
    }
    return true;
}

} // namespace gf2poly

namespace {

std::uint64_t first_irreducible(unsigned m)
{
    // Odd candidates only: for m >= 2 an irreducible has constant term 1,
    // and for m = 1 this selects x + 1.
    const std::uint64_t top = std::uint64_t{1} << m;
    for (std::uint64_t f = top | 1; f < (top << 1); f += 2) {
        if (gf2poly::is_irreducible(f))
            return f;
    }
    throw std::logic_error("no irreducible polynomial of degree " + std::to_string(m));
}

} // namespace

BinaryField::BinaryField(unsigned m, std::uint64_t modulus) : m_(m), modulus_(modulus)
{
    for (unsigned i = 0; i < m_; ++i) {
        const std::uint32_t basis = std::uint32_t{1} << i;
        std::uint32_t acc = 0;
        std::uint32_t conj = basis;
        for (unsigned k = 0; k < m_; ++k) {
            acc ^= conj;
            conj = square(conj);
        }
        if (acc == 1)
            trace_mask_ |= basis;
    }

    const std::uint64_t order = group_order();
    if (order == 1) {
        generator_ = 1;
        return;
    }
    const auto factors = gf2poly::prime_factors(order);
    for (std::uint32_t cand = 2;; ++cand) {
        bool primitive = true;
        for (std::uint64_t p : factors) {
            if (pow(cand, order / p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            generator_ = cand;
            return;
        }
    }
}

FieldPtr BinaryField::make(unsigned m)
{
    if (m < 1 || m > kMaxDegree)
        throw std::invalid_argument("field degree must lie in [1, 32], got " + std::to_string(m));
    static std::mutex registry_mutex;
    static std::array<FieldPtr, kMaxDegree + 1> registry;
    std::lock_guard lock(registry_mutex);
    if (!registry[m])
        registry[m] = FieldPtr(new BinaryField(m, first_irreducible(m)));
    return registry[m];
}

std::uint32_t BinaryField::mul(std::uint32_t a, std::uint32_t b) const noexcept
{
    std::uint64_t r = 0;
    std::uint64_t wide = a;
    while (b != 0) {
        r ^= wide << std::countr_zero(b);
        b &= b - 1;
    }
    while (r >> m_) {
        const int top = 63 - std::countl_zero(r);
        r ^= modulus_ << (top - static_cast<int>(m_));
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t BinaryField::pow(std::uint32_t a, std::uint64_t e) const noexcept
{
    std::uint32_t result = 1;
    std::uint32_t base = a;
    while (e != 0) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::uint32_t BinaryField::inv(std::uint32_t a) const
{
    if (a == 0)
        throw std::domain_error("inverse of zero");
    return pow(a, size() - 2);
}

std::uint32_t BinaryField::sqrt(std::uint32_t a) const noexcept
{
    for (unsigned i = 1; i < m_; ++i)
        a = square(a);
    return a;
}

unsigned BinaryField::trace(std::uint32_t a) const noexcept
{
    return static_cast<unsigned>(std::popcount(a & trace_mask_) & 1);
}

std::uint32_t BinaryField::generator_power(std::uint64_t k) const noexcept
{
    return pow(generator_, k % group_order());
}

std::uint64_t BinaryField::log(std::uint32_t a) const
{
    if (a == 0 || !contains(a))
        throw std::domain_error("discrete log of zero or foreign element");
    const std::uint64_t order = group_order();
    // Baby-step giant-step; the baby table is built once per field.
    std::call_once(log_table_once_, [this, order] {
        std::uint64_t steps = 1;
        while (steps * steps < order)
            ++steps;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> baby;
        baby.reserve(steps);
        std::uint32_t x = 1;
        for (std::uint64_t j = 0; j < steps; ++j) {
            baby.emplace_back(x, static_cast<std::uint32_t>(j));
            x = mul(x, generator_);
        }
        std::sort(baby.begin(), baby.end());
        log_table_.reserve(2 * steps);
        for (const auto& [value, j] : baby) {
            log_table_.push_back(value);
            log_table_.push_back(j);
        }
    });
    const std::size_t steps = log_table_.size() / 2;
    const std::uint32_t giant = inv(pow(generator_, steps));
    std::uint32_t y = a;
    for (std::uint64_t i = 0; i <= steps; ++i) {
        std::size_t lo = 0;
        std::size_t hi = steps;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (log_table_[2 * mid] < y)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < steps && log_table_[2 * lo] == y)
            return (i * steps + log_table_[2 * lo + 1]) % order;
        y = mul(y, giant);
    }
    throw std::logic_error("discrete log not found");
}

const std::vector<std::uint8_t>& BinaryField::trace_by_exponent() const
{
    if (m_ > kMaxTableDegree)
        throw std::invalid_argument("trace table requested for degree above " +
                                    std::to_string(kMaxTableDegree));
    std::call_once(trace_table_once_, [this] {
        const std::uint64_t order = group_order();
        trace_table_.resize(order);
        std::uint32_t x = 1;
        for (std::uint64_t k = 0; k < order; ++k) {
            trace_table_[k] = static_cast<std::uint8_t>(trace(x));
            x = mul(x, generator_);
        }
    });
    return trace_table_;
}

FieldElement::FieldElement(FieldPtr field, std::uint32_t bits) : field_(std::move(field)), bits_(bits)
{
    if (!field_)
        throw std::invalid_argument("field element without a field");
    if (!field_->contains(bits_))
        throw std::invalid_argument("element bits exceed field size");
}

void FieldElement::require_same_field(const FieldElement& other) const
{
    if (field_ != other.field_)
        throw std::invalid_argument("operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& other) const
{
    require_same_field(other);
    return {field_, bits_ ^ other.bits_};
}

FieldElement FieldElement::operator*(const FieldElement& other) const
{
    require_same_field(other);
    return {field_, field_->mul(bits_, other.bits_)};
}

FieldElement FieldElement::inverse() const { return {field_, field_->inv(bits_)}; }
FieldElement FieldElement::sqrt() const { return {field_, field_->sqrt(bits_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(bits_, e)}; }
unsigned FieldElement::trace() const { return field_->trace(bits_); }

FieldElement FieldElement::embed(const FieldPtr& target) const
{
    return {target, FieldEmbedding::get(field_, target).apply(bits_)};
}

FieldEmbedding::FieldEmbedding(FieldPtr source, FieldPtr target)
    : source_(std::move(source)), target_(std::move(target))
{
    const unsigned e = source_->degree();
    const unsigned big = target_->degree();
    if (big % e != 0)
        throw std::invalid_argument("cannot embed GF(2^" + std::to_string(e) + ") into GF(2^" +
                                    std::to_string(big) + ")");
    if (e == big) {
        for (unsigned i = 0; i < e; ++i)
            basis_image_[i] = std::uint32_t{1} << i;
        return;
    }

    const BinaryField& T = *target_;
    const std::uint64_t cofactor = T.group_order() / source_->group_order();
    const std::uint32_t sub_gen = T.generator_power(cofactor);

    // Roots of the source modulus inside the subfield generated by sub_gen.
    const std::uint64_t P = source_->modulus();
    std::vector<std::uint32_t> roots;
    std::uint32_t rho = 1;
    for (std::uint64_t j = 0; j < source_->group_order(); ++j) {
        std::uint32_t acc = 0;
        for (int i = static_cast<int>(e); i >= 0; --i)
            acc = T.mul(acc, rho) ^ static_cast<std::uint32_t>((P >> i) & 1);
        if (acc == 0)
            roots.push_back(rho);
        rho = T.mul(rho, sub_gen);
    }
    if (roots.empty())
        throw std::logic_error("source modulus has no root in target field");

    auto image_of = [&](std::uint32_t root, std::uint32_t a) {
        std::uint32_t out = 0;
        std::uint32_t power = 1;
        for (unsigned i = 0; i < e; ++i) {
            if ((a >> i) & 1)
                out ^= power;
            power = T.mul(power, root);
        }
        return out;
    };

    std::uint32_t chosen = roots.front();
    for (std::uint32_t root : roots) {
        if (image_of(root, source_->generator()) == sub_gen) {
            chosen = root;
            break;
        }
    }
    std::uint32_t power = 1;
    for (unsigned i = 0; i < e; ++i) {
        basis_image_[i] = power;
        power = T.mul(power, chosen);
    }
}

const FieldEmbedding& FieldEmbedding::get(const FieldPtr& source, const FieldPtr& target)
{
    static std::mutex cache_mutex;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FieldEmbedding>> cache;
    const auto key = std::make_pair(source->degree(), target->degree());
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<FieldEmbedding>(source, target)).first;
    return *it->second;
}

std::uint32_t FieldEmbedding::apply(std::uint32_t a) const noexcept
{
    std::uint32_t out = 0;
    while (a != 0) {
        out ^= basis_image_[std::countr_zero(a)];
        a &= a - 1;
    }
    return out;
}

nlohmann::json field_to_json(const FieldPtr& field)
{
    return {{"m", field->degree()}, {"modulus", field->modulus()}};
}

FieldPtr field_from_json(const nlohmann::json& j)
{
    const auto m = j.at("m").get<unsigned>();
    FieldPtr field = BinaryField::make(m);
    if (!j.contains("modulus"))
        return field;
    const auto modulus = j.at("modulus").get<std::uint64_t>();
    if (modulus != field->modulus())
        throw std::invalid_argument("modulus " + std::to_string(modulus) +
                                    " is not the canonical modulus for degree " + std::to_string(m));
    return field;
}

} // namespace asnp
