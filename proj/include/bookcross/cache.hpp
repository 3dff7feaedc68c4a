#ifndef BOOKCROSS_CACHE_HPP
#define BOOKCROSS_CACHE_HPP

// JSON forms of results and the JSON-lines bound cache.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bookcross/error.hpp"
#include "bookcross/exact.hpp"
#include "bookcross/sdpbound.hpp"

namespace bookcross {

using json = nlohmann::json;

inline json to_json(const ExactResult& r) {
    return {{"n", r.n},
            {"k", r.k},
            {"nu", r.nu},
            {"cut", r.cut_size},
            {"optimal", r.proved_optimal},
            {"nodes", r.nodes_explored},
            {"seconds", r.wall_seconds}};
}

/// One cache line. The timestamp is the only field that varies between
/// identical runs.
struct CacheRecord {
    CertifiedBound bound;
    double solver_tol = 0.0;
    std::string timestamp;
};

inline json to_json(const CertifiedBound& b) {
    return {{"n", b.n},
            {"k", b.k},
            {"fj", b.fj_value},
            {"nu_lower", b.nu_lower},
            {"margin", b.certificate_feasibility_margin},
            {"method", b.method}};
}

inline json to_json(const CacheRecord& r) {
    json j = to_json(r.bound);
    j["solver_tol"] = r.solver_tol;
    j["timestamp"] = r.timestamp;
    return j;
}

inline CacheRecord cache_record_from_json(const json& j) {
    try {
        CacheRecord r;
        r.bound.n = j.at("n").get<int>();
        r.bound.k = j.at("k").get<int>();
        r.bound.fj_value = j.at("fj").get<double>();
        r.bound.nu_lower = j.at("nu_lower").get<std::int64_t>();
        r.bound.certificate_feasibility_margin = j.at("margin").get<double>();
        r.bound.method = j.at("method").get<std::string>();
        r.solver_tol = j.value("solver_tol", 0.0);
        r.timestamp = j.value("timestamp", std::string{});
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bound cache: malformed record: ") + e.what());
    }
}

inline std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// $BOOKCROSS_CACHE_DIR if set, else `fallback`.
inline std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback) {
    if (const char* env = std::getenv("BOOKCROSS_CACHE_DIR"); env && *env) return env;
    return fallback;
}

class BoundCache {
public:
    explicit BoundCache(std::filesystem::path dir) : file_(std::move(dir) / "bounds.jsonl") { load(); }

    const std::filesystem::path& file() const { return file_; }
    const std::vector<CacheRecord>& records() const { return records_; }

    std::optional<CacheRecord> find(int n, int k) const {
        for (const auto& r : records_)
            if (r.bound.n == n && r.bound.k == k) return r;
        return std::nullopt;
    }

    /// Stores the record unless the cache already holds a bound for (n, k)
    /// that is at least as strong (smaller FJ value). Returns whether it
    /// was stored.
    bool store(const CacheRecord& rec) {
        for (auto& r : records_) {
            if (r.bound.n != rec.bound.n || r.bound.k != rec.bound.k) continue;
            if (r.bound.nu_lower > rec.bound.nu_lower || r.bound.fj_value <= rec.bound.fj_value) return false;
            r = rec;
            save();
            return true;
        }
        records_.push_back(rec);
        save();
        return true;
    }

private:
    void load() {
        std::ifstream in(file_);
        if (!in) return;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception& e) {
                throw ParseError(file_.string() + ":" + std::to_string(lineno) + ": " + e.what());
            }
            records_.push_back(cache_record_from_json(j));
        }
    }

    void save() const {
        std::filesystem::create_directories(file_.parent_path());
        const auto tmp = file_.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw InputError("bound cache: cannot write " + tmp);
            for (const auto& r : records_) out << to_json(r).dump() << '\n';
        }
        std::filesystem::rename(tmp, file_);
    }

    std::filesystem::path file_;
    std::vector<CacheRecord> records_;
};

}  // namespace bookcross

#endif  // BOOKCROSS_CACHE_HPP
