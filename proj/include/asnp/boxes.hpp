#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "asnp/c_series.hpp"

namespace asnp {

/// s(m): number of ones in the binary expansion.
unsigned digit_sum(std::uint64_t m) noexcept;

/// k_1 >= k_2 >= ... >= k_d >= 0.
struct IndexTuple {
    std::vector<std::uint64_t> k;

    std::uint64_t r() const noexcept;
    std::string to_string() const;
    bool operator==(const IndexTuple&) const = default;
};

inline constexpr std::uint64_t kIndexTupleCap = 40;

/**
 * Every nonincreasing d-tuple summing to r, in decreasing lexicographic order
 * ((3,0) before (2,1)). Throws for r above `cap`.
 */
void for_each_index_tuple(int d, std::uint64_t r, const std::function<void(const IndexTuple&)>& visit,
                          std::uint64_t cap = kIndexTupleCap);
std::vector<IndexTuple> enumerate_index_tuples(int d, std::uint64_t r, std::uint64_t cap = kIndexTupleCap);

/// s(k_1 - k_2) + ... + s(k_{d-1} - k_d) + s(k_d).
unsigned tuple_digit_sum(const IndexTuple& k) noexcept;

/**
 * Digit matrix of an index tuple. rows[l][v] is the entry in row l+1 at bit v;
 * the last row holds the digits of k_d and each row above adds the digits of
 * the next difference.
 */
struct TwoAdicBox {
    std::vector<std::vector<unsigned>> rows;

    std::uint64_t row_value(std::size_t l) const;
    /// Column sums over all rows, one per bit position (least significant first).
    std::vector<unsigned> column_sums() const;
    /// gamma_1, gamma_2, ...: the nonzero column sums, most significant column first.
    std::vector<unsigned> gammas() const;
};

TwoAdicBox box_of(const IndexTuple& k);

/**
 * C_r by direct summation over K_r. `N` unset gives the stable coefficient.
 */
GrElement c_r_oracle(const LiftedCurve& a, std::uint64_t r, std::optional<unsigned> N = std::nullopt);

struct MiracleReport {
    int d = 0;
    std::uint64_t r = 0;
    int h = 0;
    std::size_t tuples = 0;
    unsigned bound = 0;          ///< ceil(s(r)/h)
    unsigned min_tuple_sum = 0;  ///< min over K_r of s(k)
    std::size_t equality_cases = 0;
    std::vector<std::string> failures;
    std::optional<IndexTuple> counterexample;

    bool holds() const noexcept { return failures.empty(); }
    nlohmann::json to_json() const;
};

/**
 * Exhausts K_r: s(k) >= ceil(s(r)/h) for every tuple, and each tuple with
 * s(k) = s(r)/h has a 0/1 box with s(r)/h top-row ones and every nonzero
 * column sum of digit sum h. Here h = floor(log2(d + 1)) and d must be odd;
 * for d = 2 the tuple (4, 2) already has a box entry of 2.
 */
MiracleReport check_miracle(int d, std::uint64_t r);

} // namespace asnp
