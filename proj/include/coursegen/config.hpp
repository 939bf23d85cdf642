#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "coursegen/corpus.hpp"
#include "coursegen/diagnostics.hpp"

namespace coursegen::config {

enum class OutputFormat { Site, Slides };

struct BuildConfig {
    std::string title;
    std::filesystem::path course_root;
    std::vector<std::filesystem::path> libraries;
    // References as written; resolved against the corpus at validation time.
    std::vector<std::string> toc;
    std::string root_topic;
    OutputFormat format = OutputFormat::Site;
    std::filesystem::path out_dir = "_site";
    bool strict = false;
    std::size_t max_depth = 32;
    std::filesystem::path template_path;

    // Course root first, then libraries in declaration order.
    std::vector<RootDesc> roots() const;
};

struct ConfigResult {
    BuildConfig config;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

// Reads a config file of `key: value` lines, the same line grammar as CGLO
// headers. Blank lines and lines starting with `#` are skipped. `library`
// and `toc` may repeat and accumulate in order; every other key may appear
// at most once. Relative paths are resolved against the config file's
// directory. Missing course_root, unreadable files, bad values, and
// repeated scalar keys are reported as error diagnostics; unknown keys are
// warnings. If root_topic is unset it defaults to the first toc entry.
ConfigResult load_config(const std::filesystem::path& path);

}  // namespace coursegen::config
