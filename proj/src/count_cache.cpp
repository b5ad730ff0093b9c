#include "asnp/count_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace asnp {

namespace {

constexpr const char* kCountsFile = "counts.txt";
constexpr const char* kManifestFile = "curves.txt";

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

CountCache::CountCache(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
    load();
}

std::unique_ptr<CountCache> CountCache::from_env()
{
    const char* dir = std::getenv("ASNP_CACHE_DIR");
    if (dir == nullptr || *dir == '\0')
        return nullptr;
    return std::make_unique<CountCache>(dir);
}

std::uint64_t CountCache::key(const CurveEquation& c) { return fnv1a(c.to_json().dump()); }

void CountCache::load()
{
    {
        std::ifstream in(dir_ / kManifestFile);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            std::istringstream ss(line);
            std::uint64_t h = 0;
            std::string json;
            if (!(ss >> h) || !std::getline(ss, json) || !nlohmann::json::accept(json)) {
                reset("unreadable manifest line");
                return;
            }
            manifest_.insert(h);
        }
    }
    std::ifstream in(dir_ / kCountsFile);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ss(line);
        std::uint64_t h = 0;
        unsigned n = 0;
        std::uint64_t count = 0;
        std::string rest;
        if (!(ss >> h >> n >> count) || (ss >> rest) || !manifest_.contains(h)) {
            reset("unreadable count line");
            return;
        }
        const auto [it, inserted] = counts_.emplace(std::make_pair(h, n), count);
        if (!inserted && it->second != count) {
            reset("conflicting counts");
            return;
        }
    }
}

void CountCache::reset(const std::string& reason)
{
    std::cerr << "warning: count cache in " << dir_.string() << " is corrupt (" << reason << "); rebuilding\n";
    counts_.clear();
    manifest_.clear();
    std::ofstream(dir_ / kCountsFile, std::ios::trunc);
    std::ofstream(dir_ / kManifestFile, std::ios::trunc);
}

std::optional<std::uint64_t> CountCache::get(const CurveEquation& c, unsigned n) const
{
    const std::uint64_t h = key(c);
    std::lock_guard lock(mutex_);
    const auto it = counts_.find({h, n});
    if (it == counts_.end())
        return std::nullopt;
    return it->second;
}

void CountCache::put(const CurveEquation& c, unsigned n, std::uint64_t count)
{
    const std::string json = c.to_json().dump();
    const std::uint64_t h = fnv1a(json);
    std::lock_guard lock(mutex_);
    const auto it = counts_.find({h, n});
    if (it != counts_.end()) {
        if (it->second != count)
            throw std::logic_error("count cache disagrees with a fresh count for " + json);
        return;
    }
    if (manifest_.insert(h).second) {
        std::ofstream out(dir_ / kManifestFile, std::ios::app);
        out << h << ' ' << json << '\n';
    }
    counts_.emplace(std::make_pair(h, n), count);
    std::ofstream out(dir_ / kCountsFile, std::ios::app);
    out << h << ' ' << n << ' ' << count << '\n';
}

std::size_t CountCache::size() const
{
    std::lock_guard lock(mutex_);
    return counts_.size();
}

std::uint64_t cached_count(const CurveEquation& c, unsigned n, CountCache* cache)
{
    if (cache != nullptr) {
        if (const auto hit = cache->get(c, n))
            return *hit;
    }
    const std::uint64_t count = count_points(c, n);
    if (cache != nullptr)
        cache->put(c, n, count);
    return count;
}

LPolynomial cached_l_polynomial(const CurveEquation& c, CountCache* cache)
{
    const int g = genus(c);
    std::vector<std::uint64_t> counts;
    for (int n = 1; n <= g; ++n)
        counts.push_back(cached_count(c, static_cast<unsigned>(n), cache));
    return l_polynomial_from_counts(c.field()->degree(), g, counts);
}

} // namespace asnp
