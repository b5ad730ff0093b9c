#include "asnp/curve.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>

namespace asnp {

namespace {

using Poly = std::vector<std::uint32_t>; // index = power of x, includes constant

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

/// f(zeta x + t0) by Horner over the field.
Poly compose_affine(const BinaryField& F, const Poly& f, std::uint32_t zeta, std::uint32_t t0)
{
    Poly acc;
    for (std::size_t i = f.size(); i-- > 0;) {
        // acc = acc * (zeta x + t0) + f_i
        Poly next(acc.size() + 1, 0);
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k] ^= F.mul(acc[k], t0);
            next[k + 1] ^= F.mul(acc[k], zeta);
        }
        next[0] ^= f[i];
        acc = std::move(next);
    }
    return acc;
}

/// Drops a constant term that is an Artin-Schreier image (trace 0) over the field.
void absorb_constant(const BinaryField& F, Poly& p)
{
    if (p.empty() || p[0] == 0)
        return;
    if (F.trace(p[0]) != 0)
        throw std::domain_error("constant term has trace 1 over GF(2^" + std::to_string(F.degree()) +
                                "); extend the field to remove it");
    p[0] = 0;
}

CurveEquation from_poly(const FieldPtr& field, Poly p)
{
    trim(p);
    if (p.size() < 2)
        throw DegenerateCurve("equation reduces to a constant");
    return CurveEquation(field, Poly(p.begin() + 1, p.end()));
}

Poly to_poly(const CurveEquation& c)
{
    Poly p(static_cast<std::size_t>(c.degree()) + 1, 0);
    for (int i = 1; i <= c.degree(); ++i)
        p[static_cast<std::size_t>(i)] = c.coeff(i);
    return p;
}

Poly reduce_odd_poly(const BinaryField& F, Poly p)
{
    trim(p);
    for (std::size_t k = p.size(); k-- > 1;) {
        if (k % 2 != 0 || p[k] == 0)
            continue;
        // h = sqrt(c_k) x^(k/2): h^2 + h cancels x^k and adds sqrt(c_k) to x^(k/2)
        p[k / 2] ^= F.sqrt(p[k]);
        p[k] = 0;
    }
    trim(p);
    return p;
}

} // namespace

CurveEquation::CurveEquation(FieldPtr field, std::vector<std::uint32_t> coeffs) : field_(std::move(field))
{
    if (!field_)
        throw std::invalid_argument("curve without a field");
    if (coeffs.empty())
        throw std::invalid_argument("empty coefficient vector");
    if (coeffs.back() == 0)
        throw std::invalid_argument("leading coefficient is zero");
    for (std::uint32_t c : coeffs) {
        if (!field_->contains(c))
            throw std::invalid_argument("coefficient " + std::to_string(c) + " outside GF(2^" +
                                        std::to_string(field_->degree()) + ")");
    }
    coeffs_.reserve(coeffs.size() + 1);
    coeffs_.push_back(0);
    coeffs_.insert(coeffs_.end(), coeffs.begin(), coeffs.end());
}

bool CurveEquation::is_odd_reduced() const noexcept
{
    if (degree() % 2 == 0 || degree() < 3)
        return false;
    for (int i = 2; i < degree(); i += 2) {
        if (coeffs_[static_cast<std::size_t>(i)] != 0)
            return false;
    }
    return true;
}

bool CurveEquation::operator<(const CurveEquation& other) const noexcept
{
    if (field_->degree() != other.field_->degree())
        return field_->degree() < other.field_->degree();
    if (degree() != other.degree())
        return degree() < other.degree();
    return std::lexicographical_compare(coeffs_.rbegin(), coeffs_.rend(), other.coeffs_.rbegin(),
                                        other.coeffs_.rend());
}

nlohmann::json CurveEquation::to_json() const
{
    return {{"field", field_to_json(field_)},
            {"coeffs", std::vector<std::uint32_t>(coeffs_.begin() + 1, coeffs_.end())}};
}

CurveEquation CurveEquation::from_json(const nlohmann::json& j)
{
    return CurveEquation(field_from_json(j.at("field")), j.at("coeffs").get<std::vector<std::uint32_t>>());
}

int genus(const CurveEquation& c)
{
    if (!c.is_odd_reduced())
        throw std::invalid_argument("genus is defined only for odd-reduced equations of degree >= 3");
    return (c.degree() - 1) / 2;
}

CurveEquation apply_isomorphism(const CurveEquation& c, const IsomorphismData& iso)
{
    const BinaryField& F = *c.field();
    if (iso.zeta == 0)
        throw std::invalid_argument("isomorphism scaling zeta must be nonzero");
    if (!F.contains(iso.zeta) || !F.contains(iso.t0))
        throw std::invalid_argument("isomorphism data outside the curve's field");
    Poly h = iso.h;
    trim(h);
    if (!h.empty() && 2 * static_cast<int>(h.size() - 1) >= c.degree())
        throw std::invalid_argument("deg h must satisfy 2 deg h < deg f");

    Poly out = compose_affine(F, to_poly(c), iso.zeta, iso.t0);
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!F.contains(h[i]))
            throw std::invalid_argument("isomorphism data outside the curve's field");
        out[i] ^= h[i];
        out[2 * i] ^= F.square(h[i]);
    }
    absorb_constant(F, out);
    return from_poly(c.field(), std::move(out));
}

CurveEquation reduce_odd(const CurveEquation& c)
{
    Poly p = reduce_odd_poly(*c.field(), to_poly(c));
    if (p.size() < 4)
        throw DegenerateCurve("odd reduction has degree " + std::to_string(static_cast<int>(p.size()) - 1) +
                              " < 3 (genus 0)");
    return from_poly(c.field(), std::move(p));
}

CurveEquation embed_curve(const CurveEquation& c, const FieldPtr& target)
{
    const FieldEmbedding& emb = FieldEmbedding::get(c.field(), target);
    std::vector<std::uint32_t> coeffs;
    coeffs.reserve(c.coefficients().size());
    for (std::uint32_t a : c.coefficients())
        coeffs.push_back(emb.apply(a));
    return CurveEquation(target, std::move(coeffs));
}

namespace {

/// Smallest k >= 0 with (g^k)^d = u in the cyclic group of `F`, if any.
std::optional<std::uint32_t> dth_root(const BinaryField& F, std::uint32_t u, std::uint64_t d)
{
    const std::uint64_t order = F.group_order();
    const std::uint64_t target = F.log(u);
    const std::uint64_t g = std::gcd(d, order);
    if (target % g != 0)
        return std::nullopt;
    const std::uint64_t mod = order / g;
    if (mod == 1)
        return F.generator_power(0);
    // k = (target / g) * (d / g)^{-1} mod (order / g)
    const auto inverse = [](std::int64_t a, std::int64_t m) {
        std::int64_t t = 0, new_t = 1, r = m, new_r = a % m;
        while (new_r != 0) {
            const std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        return t < 0 ? t + m : t;
    };
    const auto dd = static_cast<std::int64_t>((d / g) % mod);
    const auto k = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((target / g) % mod) * static_cast<std::uint64_t>(inverse(dd, static_cast<std::int64_t>(mod)))) % mod);
    return F.generator_power(k);
}

CurveEquation scale_x(const CurveEquation& c, std::uint32_t zeta)
{
    const BinaryField& F = *c.field();
    std::vector<std::uint32_t> coeffs;
    std::uint32_t power = 1;
    for (std::uint32_t a : c.coefficients()) {
        power = F.mul(power, zeta);
        coeffs.push_back(F.mul(a, power));
    }
    return CurveEquation(c.field(), std::move(coeffs));
}

} // namespace

CurveEquation make_monic(const CurveEquation& c, bool allow_extension)
{
    if (!c.is_odd_reduced())
        throw std::invalid_argument("make_monic expects an odd-reduced equation");
    if (c.is_monic())
        return c;
    const unsigned e = c.field()->degree();
    const auto d = static_cast<std::uint64_t>(c.degree());
    for (unsigned k = 1; e * k <= BinaryField::kMaxDegree; ++k) {
        if (k > 1 && !allow_extension)
            break;
        const CurveEquation here = (k == 1) ? c : embed_curve(c, BinaryField::make(e * k));
        const BinaryField& F = *here.field();
        const std::uint32_t u = F.inv(here.coeff(here.degree()));
        if (auto zeta = dth_root(F, u, d))
            return scale_x(here, *zeta);
    }
    throw std::domain_error("no d-th root of the leading coefficient in GF(2^" + std::to_string(e) +
                            ")" + (allow_extension ? " or its extensions up to degree 32" : ""));
}

bool lucas_admissible(int d, int m) noexcept
{
    if (m <= 0 || d <= 0)
        return false;
    for (long long x = m; x <= d; x <<= 1) {
        if ((x & d) == x)
            return true;
    }
    return false;
}

KillResult kill_coefficient(const CurveEquation& c, int m, unsigned searchdeg)
{
    if (!c.is_odd_reduced() || !c.is_monic())
        throw std::invalid_argument("kill_coefficient expects an odd-reduced monic equation");
    const int g = genus(c);
    if (m % 2 == 0 || m < 1 || m >= 2 * g)
        throw std::invalid_argument("m must be odd with 1 <= m < 2g");
    if (!lucas_admissible(c.degree(), m))
        throw std::invalid_argument("binom(" + std::to_string(c.degree()) + ", 2^k * " + std::to_string(m) +
                                    ") is even for every k");
    const unsigned big = c.field()->degree() * searchdeg;
    if (searchdeg == 0 || big > 24)
        throw std::invalid_argument("search field degree must lie in [1, 24]");

    KillResult result;
    result.field = BinaryField::make(big);
    const BinaryField& F = *result.field;
    const CurveEquation lifted = embed_curve(c, result.field);
    const Poly f = to_poly(lifted);

    std::set<CurveEquation> found;
    for (std::uint64_t t0 = 0; t0 < F.size(); ++t0) {
        ++result.translations_scanned;
        Poly p = compose_affine(F, f, 1, static_cast<std::uint32_t>(t0));
        if (F.trace(p[0]) != 0) {
            ++result.twisted_translations;
            continue;
        }
        p[0] = 0;
        CurveEquation candidate = make_monic(from_poly(result.field, reduce_odd_poly(F, std::move(p))));
        if (candidate.coeff(m) == 0)
            found.insert(std::move(candidate));
    }
    result.equations.assign(found.begin(), found.end());
    return result;
}

} // namespace asnp
