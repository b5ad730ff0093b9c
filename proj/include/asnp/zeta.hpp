#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "asnp/curve.hpp"
#include "asnp/rational.hpp"

namespace asnp {

/// L(T) = sum b_i T^i of a genus-g curve over GF(2^e).
struct LPolynomial {
    unsigned e = 1;
    int g = 0;
    std::vector<mpz_class> b; // b_0..b_2g

    mpz_class q() const;
    nlohmann::json to_json() const;
};

/// Lower convex hull of (i, ord_2(b_i)/e); slopes sorted, one entry per unit of horizontal run.
struct NewtonPolygon {
    std::vector<std::pair<int, Rational>> vertices;
    std::vector<Rational> slopes;
};

/**
 * N_n: the number of points over GF(2^(e*n)) on the smooth model of an
 * odd-reduced equation, including the single point at infinity.
 *
 * x runs over zero and the generator powers of the extension field; each
 * nonzero term contributes trace(g^(log c_i + i*k)), read from the field's
 * trace table.
 */
std::uint64_t count_points(const CurveEquation& c, unsigned n);

/// Recovers L from N_1..N_g by Newton's identities and the functional equation.
LPolynomial l_polynomial_from_counts(unsigned e, int g, std::span<const std::uint64_t> counts);

LPolynomial l_polynomial(const CurveEquation& c);

NewtonPolygon newton_polygon(const LPolynomial& L);

/// Smallest slope.
Rational np1(const NewtonPolygon& np);
bool is_supersingular(const NewtonPolygon& np);
/// Multiplicity of slope 0.
int two_rank(const NewtonPolygon& np);

/**
 * Throws std::logic_error unless the polygon is that of a genus-g curve of
 * 2-rank zero: 2g symmetric slopes in (0, 1) summing to g, with
 * 1/max(g, 2) <= NP_1 <= 1/2.
 */
void check_polygon_invariants(const NewtonPolygon& np, int g);

} // namespace asnp
