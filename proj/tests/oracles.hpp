#pragma once

// Slow reference computations that share no code with the library.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace oracle {

/// Carry-less product reduced mod `modulus` (degree m), bit by bit.
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus, unsigned m)
{
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < m; ++i) {
        if ((b >> i) & 1)
            acc ^= a << i;
    }
    for (int bit = 2 * static_cast<int>(m) - 2; bit >= static_cast<int>(m); --bit) {
        if ((acc >> bit) & 1)
            acc ^= modulus << (bit - static_cast<int>(m));
    }
    return acc;
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t modulus, unsigned m)
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1)
            r = mul(r, a, modulus, m);
        a = mul(a, a, modulus, m);
        e >>= 1;
    }
    return r;
}

inline int poly_degree(std::uint64_t p)
{
    int d = -1;
    for (int i = 0; i < 64; ++i) {
        if ((p >> i) & 1)
            d = i;
    }
    return d;
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b)
{
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a))
        a ^= b << (da - db);
    return a;
}

/// Trial division by every polynomial of degree 1..m/2.
inline bool irreducible(std::uint64_t p)
{
    const int m = poly_degree(p);
    if (m < 1)
        return false;
    for (std::uint64_t q = 2; poly_degree(q) <= m / 2; ++q) {
        if (poly_mod(p, q) == 0)
            return false;
    }
    return true;
}

/// Smallest degree-m irreducible with constant term 1.
inline std::uint64_t smallest_modulus(unsigned m)
{
    for (std::uint64_t p = (std::uint64_t{1} << m) | 1;; p += 2) {
        if (irreducible(p))
            return p;
    }
}

inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t modulus, unsigned m)
{
    std::uint64_t x = a;
    for (std::uint64_t k = 1;; ++k) {
        if (x == 1)
            return k;
        x = mul(x, a, modulus, m);
    }
}

/**
 * Affine solutions of y^2 + y = f(x) over the field given by `modulus`,
 * plus one point at infinity. `f` holds c_1..c_d already in that field.
 */
inline std::uint64_t count_points(const std::vector<std::uint64_t>& f, std::uint64_t modulus, unsigned m)
{
    const std::uint64_t q = std::uint64_t{1} << m;
    std::vector<std::uint32_t> hits(q, 0); // number of y with y^2 + y = v
    for (std::uint64_t y = 0; y < q; ++y)
        ++hits[mul(y, y, modulus, m) ^ y];
    std::uint64_t total = 1;
    for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;)
            acc = mul(acc ^ f[i], x, modulus, m);
        total += hits[acc];
    }
    return total;
}

/// Coefficients 0..R of (1 + 4f)^((2^N - 1)/2), or of (1 + 4f)^(-1/2) when N is unset, over Z.
inline std::vector<mpz_class> c_series(const std::vector<long>& f, std::optional<unsigned> N, std::size_t R)
{
    // f[i-1] is the x^i coefficient.
    std::vector<mpz_class> out(R + 1, 0);
    std::vector<mpz_class> power(R + 1, 0);
    power[0] = 1;
    mpq_class binom = 1; // binom(E, k) with E = (2^N - 1)/2 or -1/2
    mpq_class E;
    if (N) {
        mpz_class two_n;
        mpz_ui_pow_ui(two_n.get_mpz_t(), 2, *N);
        E = mpq_class(two_n - 1, 2);
    } else {
        E = mpq_class(-1, 2);
    }
    E.canonicalize();
    mpz_class four_k = 1;
    for (std::size_t k = 0; k <= R; ++k) {
        const mpq_class t = binom * four_k;
        if (t.get_den() != 1)
            return {};
        for (std::size_t r = 0; r <= R; ++r)
            out[r] += t.get_num() * power[r];
        std::vector<mpz_class> next(R + 1, 0);
        for (std::size_t r = 0; r <= R; ++r) {
            if (power[r] == 0)
                continue;
            for (std::size_t i = 1; i <= f.size() && r + i <= R; ++i)
                next[r + i] += power[r] * f[i - 1];
        }
        power.swap(next);
        binom = binom * (E - static_cast<long>(k)) / static_cast<long>(k + 1);
        four_k *= 4;
    }
    return out;
}

inline unsigned ord2(const mpz_class& x)
{
    return static_cast<unsigned>(mpz_scan1(x.get_mpz_t(), 0));
}

inline std::uint64_t mod_pow2(const mpz_class& x, unsigned K)
{
    mpz_class m;
    mpz_fdiv_r_2exp(m.get_mpz_t(), x.get_mpz_t(), K);
    return m.get_ui();
}

/// Partitions of r into at most d parts.
inline std::uint64_t partitions(std::uint64_t r, std::uint64_t d, std::uint64_t largest)
{
    if (r == 0)
        return 1;
    if (d == 0)
        return 0;
    std::uint64_t total = 0;
    for (std::uint64_t first = 1; first <= std::min(r, largest); ++first)
        total += partitions(r - first, d - 1, first);
    return total;
}

} // namespace oracle
