#pragma once

// Shared fixture plumbing for the test binaries: temp trees on disk,
// deterministic generators, and small independent oracles that deliberately
// avoid the library's own scanners.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

namespace fs = std::filesystem;

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto base = fs::temp_directory_path();
        std::random_device rd;
        for (int attempt = 0; attempt < 64; ++attempt) {
            fs::path candidate =
                base / ("coursegen-" + tag + "-" + std::to_string(rd()));
            std::error_code ec;
            if (fs::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir for " + tag);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    fs::path path_;
};

inline void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("cannot write " + p.string());
}

inline void write_tree(const fs::path& root,
                       const std::map<std::string, std::string>& files) {
    fs::create_directories(root);
    for (const auto& [rel, content] : files) write_file(root / rel, content);
}

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Relative path -> bytes for every regular file under root.
inline std::map<std::string, std::string> tree_snapshot(const fs::path& root) {
    std::map<std::string, std::string> out;
    if (!fs::exists(root)) return out;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        out[entry.path().lexically_relative(root).generic_string()] =
            read_file(entry.path());
    }
    return out;
}

// Kahn topological sort; the independent cyclicity oracle.
inline bool kahn_is_acyclic(std::size_t n,
                            const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w : adj[v]) ++indeg[w];
    }
    std::vector<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v) {
        if (indeg[v] == 0) queue.push_back(v);
    }
    std::size_t removed = 0;
    while (!queue.empty()) {
        std::size_t v = queue.back();
        queue.pop_back();
        ++removed;
        for (std::size_t w : adj[v]) {
            if (--indeg[w] == 0) queue.push_back(w);
        }
    }
    return removed == n;
}

// Deterministic pseudo-random helpers. Seeded mt19937 keeps runs stable.
struct Rng {
    std::mt19937 engine;

    explicit Rng(std::uint32_t seed) : engine(seed) {}

    std::size_t below(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine);
    }

    int range(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine);
    }

    bool chance(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine) < p;
    }

    std::string identifier(std::size_t min_len, std::size_t max_len) {
        static const char* first = "abcdefghijklmnopqrstuvwxyz_";
        static const char* rest = "abcdefghijklmnopqrstuvwxyz0123456789_";
        std::size_t len = min_len + below(max_len - min_len + 1);
        std::string out;
        out += first[below(27)];
        while (out.size() < len) out += rest[below(37)];
        return out;
    }
};

// A generated well-formed CGLO source in canonical form (LF newlines,
// single-space property values, closing ---), for round-trip testing.
inline std::string random_canonical_source(Rng& rng) {
    std::string out;
    bool header = rng.chance(0.8);
    if (header) {
        out += "---\n";
        int keys = rng.range(1, 8);
        std::vector<std::string> used;
        for (int i = 0; i < keys; ++i) {
            std::string key = rng.identifier(2, 10);
            bool dup = false;
            for (const auto& u : used) {
                if (u == key) dup = true;
            }
            if (dup) continue;
            used.push_back(key);
            out += key;
            out += ':';
            if (rng.chance(0.9)) {
                out += ' ';
                static const char* vocab[] = {"Syllabus", "value", "x",
                                              "Course Themes", "tbd", "42",
                                              "a b c", "final (v2)"};
                out += vocab[rng.below(8)];
            }
            out += '\n';
        }
        out += "---\n";
    }

    static const char* words[] = {"content", "reuse",  "course", "slide",
                                  "object",  "topic",  "see",    "merge",
                                  "the",     "a",      "note",   "load"};
    int chunks = rng.range(0, 24);
    bool at_line_start = true;
    for (int i = 0; i < chunks; ++i) {
        int kind = rng.range(0, 9);
        if (kind <= 5) {
            out += words[rng.below(12)];
            out += rng.chance(0.25) ? "\n" : " ";
            at_line_start = out.empty() || out.back() == '\n';
        } else if (kind == 6) {
            out += "$$include :" + rng.identifier(3, 8) + "\n";
            at_line_start = true;
        } else if (kind == 7) {
            out += "see $$link_to :" + rng.identifier(3, 8) + ".\n";
            at_line_start = true;
        } else if (kind == 8) {
            if (!at_line_start) out += "\n";
            out += "#### ";
            out += words[rng.below(12)];
            out += "\n\n";
            at_line_start = true;
        } else {
            if (!at_line_start) out += "\n";
            out += "```\ncode $$include :ignored\n```\n";
            at_line_start = true;
        }
    }
    // A headerless source must not begin with a header delimiter.
    if (!header && out.rfind("---", 0) == 0) out.insert(0, "x ");
    return out;
}

}  // namespace testutil
