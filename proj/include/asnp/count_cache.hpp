#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "asnp/curve.hpp"
#include "asnp/zeta.hpp"

namespace asnp {

/**
 * Append-only store of point counts N_n keyed by (curve, n).
 *
 * counts.txt holds "hash n count" lines; curves.txt maps each hash to the
 * canonical JSON of its curve, written once. A file that fails to parse is
 * discarded and rebuilt, with a warning on stderr.
 */
class CountCache {
public:
    explicit CountCache(std::filesystem::path dir);

    /// A cache in $ASNP_CACHE_DIR, or null when the variable is unset or empty.
    static std::unique_ptr<CountCache> from_env();

    /// FNV-1a of the canonical curve JSON.
    static std::uint64_t key(const CurveEquation& c);

    std::optional<std::uint64_t> get(const CurveEquation& c, unsigned n) const;
    /// Throws std::logic_error if a different count is already stored.
    void put(const CurveEquation& c, unsigned n, std::uint64_t count);

    std::size_t size() const;
    const std::filesystem::path& directory() const noexcept { return dir_; }

private:
    void load();
    void reset(const std::string& reason);

    std::filesystem::path dir_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::uint64_t, unsigned>, std::uint64_t> counts_;
    std::set<std::uint64_t> manifest_;
};

/// count_points through an optional cache.
std::uint64_t cached_count(const CurveEquation& c, unsigned n, CountCache* cache);

/// l_polynomial through an optional cache.
LPolynomial cached_l_polynomial(const CurveEquation& c, CountCache* cache);

} // namespace asnp
