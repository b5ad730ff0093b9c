#include "asnp/zeta.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace asnp {

namespace {

unsigned ord2(const mpz_class& x)
{
    return static_cast<unsigned>(mpz_scan1(x.get_mpz_t(), 0));
}

mpz_class power_of_two(unsigned k)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

std::uint64_t count_with_table(const CurveEquation& c, const BinaryField& F)
{
    const std::uint64_t order = F.group_order();
    const auto& table = F.trace_by_exponent();
    std::vector<std::uint64_t> idx;
    std::vector<std::uint64_t> step;
    for (int i = 1; i <= c.degree(); ++i) {
        if (c.coeff(i) == 0)
            continue;
        idx.push_back(F.log(c.coeff(i)));
        step.push_back(static_cast<std::uint64_t>(i) % order);
    }
    std::uint64_t trace_zero = 1; // x = 0
    const std::size_t terms = idx.size();
    for (std::uint64_t k = 0; k < order; ++k) {
        unsigned t = 0;
        for (std::size_t j = 0; j < terms; ++j) {
            t ^= table[idx[j]];
            idx[j] += step[j];
            if (idx[j] >= order)
                idx[j] -= order;
        }
        trace_zero += (t == 0);
    }
    return 1 + 2 * trace_zero;
}

std::uint64_t count_with_horner(const CurveEquation& c, const BinaryField& F)
{
    std::uint64_t trace_zero = 0;
    for (std::uint64_t x = 0; x < F.size(); ++x) {
        std::uint32_t acc = 0;
        for (int i = c.degree(); i >= 1; --i)
            acc = F.mul(acc ^ c.coeff(i), static_cast<std::uint32_t>(x));
        trace_zero += (F.trace(acc) == 0);
    }
    return 1 + 2 * trace_zero;
}

} // namespace

mpz_class LPolynomial::q() const { return power_of_two(e); }

nlohmann::json LPolynomial::to_json() const
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& x : b) {
        if (x.fits_slong_p())
            coeffs.push_back(x.get_si());
        else
            coeffs.push_back(x.get_str());
    }
    return {{"q", q().get_str()}, {"g", g}, {"b", coeffs}};
}

std::uint64_t count_points(const CurveEquation& c, unsigned n)
{
    if (!c.is_odd_reduced())
        throw std::invalid_argument("point counting expects an odd-reduced equation");
    const unsigned big = c.field()->degree() * n;
    if (n == 0 || big > BinaryField::kMaxDegree)
        throw std::invalid_argument("extension degree e*n = " + std::to_string(big) + " outside [1, 32]");
    const FieldPtr target = BinaryField::make(big);
    const CurveEquation lifted = embed_curve(c, target);
    if (big <= BinaryField::kMaxTableDegree)
        return count_with_table(lifted, *target);
    return count_with_horner(lifted, *target);
}

LPolynomial l_polynomial_from_counts(unsigned e, int g, std::span<const std::uint64_t> counts)
{
    if (g < 1 || counts.size() < static_cast<std::size_t>(g))
        throw std::invalid_argument("need N_1..N_g to recover L");
    LPolynomial L;
    L.e = e;
    L.g = g;
    L.b.assign(static_cast<std::size_t>(2 * g + 1), 0);
    L.b[0] = 1;

    std::vector<mpz_class> p(static_cast<std::size_t>(g) + 1);
    for (int n = 1; n <= g; ++n) {
        const mpz_class qn = power_of_two(e * static_cast<unsigned>(n));
        const mpz_class N = mpz_class(std::to_string(counts[static_cast<std::size_t>(n - 1)]));
        p[n] = qn + 1 - N;
        // Weil: |q^n + 1 - N_n| <= 2g q^(n/2)
        if (p[n] * p[n] > 4 * g * g * qn)
            throw std::invalid_argument("N_" + std::to_string(n) + " violates the Weil bound");
    }
    for (int n = 1; n <= g; ++n) {
        mpz_class s = p[n];
        for (int i = 1; i < n; ++i)
            s += L.b[i] * p[n - i];
        if (!mpz_divisible_ui_p(s.get_mpz_t(), static_cast<unsigned long>(n)))
            throw std::invalid_argument("point counts are not consistent with any L-polynomial");
        L.b[n] = -s / n;
    }
    for (int i = 0; i < g; ++i)
        L.b[2 * g - i] = power_of_two(e * static_cast<unsigned>(g - i)) * L.b[i];
    return L;
}

LPolynomial l_polynomial(const CurveEquation& c)
{
    const int g = genus(c);
    std::vector<std::uint64_t> counts;
    for (int n = 1; n <= g; ++n)
        counts.push_back(count_points(c, static_cast<unsigned>(n)));
    return l_polynomial_from_counts(c.field()->degree(), g, counts);
}

NewtonPolygon newton_polygon(const LPolynomial& L)
{
    const int top = 2 * L.g;
    std::vector<int> ords(static_cast<std::size_t>(top) + 1, -1);
    for (int i = 0; i <= top; ++i) {
        if (L.b[i] != 0)
            ords[i] = static_cast<int>(ord2(L.b[i]));
    }
    if (ords[0] < 0 || ords[top] < 0)
        throw std::invalid_argument("L-polynomial has vanishing end coefficients");

    NewtonPolygon np;
    const auto e = static_cast<std::int64_t>(L.e);
    int i = 0;
    np.vertices.emplace_back(0, Rational(ords[0], e));
    while (i < top) {
        int best = -1;
        Rational best_slope;
        for (int j = i + 1; j <= top; ++j) {
            if (ords[j] < 0)
                continue;
            const Rational slope(ords[j] - ords[i], j - i);
            if (best < 0 || slope <= best_slope) {
                best = j;
                best_slope = slope;
            }
        }
        for (int k = i; k < best; ++k)
            np.slopes.push_back(best_slope / e);
        i = best;
        np.vertices.emplace_back(i, Rational(ords[i], e));
    }
    return np;
}

Rational np1(const NewtonPolygon& np)
{
    if (np.slopes.empty())
        throw std::invalid_argument("empty Newton polygon");
    return np.slopes.front();
}

bool is_supersingular(const NewtonPolygon& np)
{
    for (const auto& s : np.slopes) {
        if (s != Rational(1, 2))
            return false;
    }
    return !np.slopes.empty();
}

int two_rank(const NewtonPolygon& np)
{
    int zeros = 0;
    for (const auto& s : np.slopes)
        zeros += (s == Rational(0));
    return zeros;
}

void check_polygon_invariants(const NewtonPolygon& np, int g)
{
    const auto fail = [](const std::string& what) { throw std::logic_error("Newton polygon invariant: " + what); };
    const auto n = np.slopes.size();
    if (n != static_cast<std::size_t>(2 * g))
        fail("expected 2g slopes");
    Rational sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Rational& s = np.slopes[k];
        if (s < 0 || s > 1)
            fail("slope outside [0, 1]");
        if (k > 0 && s < np.slopes[k - 1])
            fail("slopes not nondecreasing");
        if (s + np.slopes[n - 1 - k] != Rational(1))
            fail("slopes not symmetric");
        sum += s;
    }
    if (sum != Rational(g))
        fail("slopes do not sum to g");
    if (two_rank(np) != 0)
        fail("nonzero 2-rank");
    const Rational first = np1(np);
    // Genus 1 and 2 curves of 2-rank zero are supersingular, so 1/max(g, 2) is the floor.
    if (first < Rational(1, std::max(g, 2)) || first > Rational(1, 2))
        fail("first slope outside [1/g, 1/2]");
}

} // namespace asnp
