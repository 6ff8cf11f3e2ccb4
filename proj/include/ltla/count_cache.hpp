#pragma once

// On-disk cache of count tables: one JSON file per (model, d, constraints, N).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ltla/enumerate.hpp"
#include "ltla/json_io.hpp"

namespace ltla {

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string constraint_digest(const std::string& description)
{
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << fnv1a64(description);
    return os.str();
}

inline constexpr const char* kCacheDirEnv = "LTLA_CACHE_DIR";

/// $LTLA_CACHE_DIR, else $XDG_CACHE_HOME/ltla, else ~/.cache/ltla, else ./.ltla-cache.
inline std::filesystem::path default_cache_dir()
{
    if (const char* d = std::getenv(kCacheDirEnv); d && *d) {
        return d;
    }
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) {
        return std::filesystem::path(x) / "ltla";
    }
    if (const char* h = std::getenv("HOME"); h && *h) {
        return std::filesystem::path(h) / ".cache" / "ltla";
    }
    return ".ltla-cache";
}

struct CacheEntry {
    std::filesystem::path path;
    std::string model;
    int dim = 0;
    int max_bonds = 0;
    std::string constraints;
    std::string engine;
    bool valid = false;
};

class CountCache {
public:
    explicit CountCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(Model model, int dim, const std::string& constraints, int max_bonds) const
    {
        return dir_ / ("count-" + std::string(to_string(model)) + "-d" + std::to_string(dim) + "-"
                       + constraint_digest(constraints) + "-n" + std::to_string(max_bonds) + ".json");
    }

    std::optional<CountTable> load(Model model, int dim, const std::string& constraints, int max_bonds) const
    {
        const auto p = path_for(model, dim, constraints, max_bonds);
        std::ifstream in(p);
        if (!in) {
            return std::nullopt;
        }
        try {
            const Json j = Json::parse(in);
            if (j.at("engine").get<std::string>() != kEngineVersion) {
                return std::nullopt;
            }
            CountTable t = count_table_from_json(j.at("table"));
            if (t.model != model || t.dim != dim || t.max_bonds != max_bonds || t.constraints != constraints) {
                return std::nullopt;
            }
            return t;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    /// Write to a temporary in the same directory, then rename over the target.
    void store(const CountTable& t) const
    {
        std::filesystem::create_directories(dir_);
        const auto target = path_for(t.model, t.dim, t.constraints, t.max_bonds);
        auto tmp = target;
        tmp += ".tmp." + std::to_string(::getpid());
        Json j;
        j["engine"] = std::string(kEngineVersion);
        j["table"] = to_json(t);
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) {
                throw std::runtime_error("cache: cannot write " + tmp.string());
            }
            out << j.dump(2) << '\n';
            if (!out) {
                throw std::runtime_error("cache: write failed for " + tmp.string());
            }
        }
        std::filesystem::rename(tmp, target);
    }

    std::vector<CacheEntry> list() const
    {
        std::vector<CacheEntry> out;
        if (!std::filesystem::is_directory(dir_)) {
            return out;
        }
        for (const auto& de : std::filesystem::directory_iterator(dir_)) {
            if (!de.is_regular_file()) {
                continue;
            }
            const std::string name = de.path().filename().string();
            if (name.rfind("count-", 0) != 0) {
                continue;
            }
            CacheEntry e;
            e.path = de.path();
            try {
                std::ifstream in(de.path());
                const Json j = Json::parse(in);
                e.engine = j.at("engine").get<std::string>();
                const CountTable t = count_table_from_json(j.at("table"));
                e.model = std::string(to_string(t.model));
                e.dim = t.dim;
                e.max_bonds = t.max_bonds;
                e.constraints = t.constraints;
                e.valid = e.engine == kEngineVersion && de.path().extension() == ".json"
                          && de.path() == path_for(t.model, t.dim, t.constraints, t.max_bonds);
            } catch (const std::exception&) {
                e.valid = false;
            }
            out.push_back(std::move(e));
        }
        std::sort(out.begin(), out.end(), [](const CacheEntry& a, const CacheEntry& b) { return a.path < b.path; });
        return out;
    }

    /// Removes unreadable, stale-version and leftover temporary files.
    std::vector<std::filesystem::path> gc() const
    {
        std::vector<std::filesystem::path> removed;
        for (const auto& e : list()) {
            if (!e.valid) {
                std::filesystem::remove(e.path);
                removed.push_back(e.path);
            }
        }
        return removed;
    }

private:
    std::filesystem::path dir_;
};

/// count() through the cache when one is given.
inline CountTable cached_count(const EnumerationSpec& spec, unsigned workers, const CountCache* cache)
{
    const std::string desc = describe(spec.constraints);
    if (cache) {
        if (auto hit = cache->load(spec.model, spec.dim, desc, spec.max_bonds)) {
            return *hit;
        }
    }
    CountTable t = count(spec, workers);
    if (cache) {
        cache->store(t);
    }
    return t;
}

} // namespace ltla
