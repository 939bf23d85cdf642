#include "coursegen/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coursegen::config {

namespace {

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

std::filesystem::path resolve_against(const std::filesystem::path& base,
                                      const std::filesystem::path& p) {
    if (p.is_absolute()) return p.lexically_normal();
    return (base / p).lexically_normal();
}

}  // namespace

std::vector<RootDesc> BuildConfig::roots() const {
    std::vector<RootDesc> out;
    out.push_back({course_root, RootRole::Course});
    for (const auto& lib : libraries) out.push_back({lib, RootRole::Library});
    return out;
}

ConfigResult load_config(const std::filesystem::path& path) {
    ConfigResult res;
    const std::string file = path.generic_string();

    std::ifstream in(path, std::ios::binary);
    if (!in) {
        res.diagnostics.push_back({Severity::Error, DiagCode::IoError, file, 1, 1,
                                   "cannot read config file"});
        return res;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    BuildConfig& cfg = res.config;
    const std::filesystem::path base = path.has_parent_path()
                                           ? path.parent_path()
                                           : std::filesystem::path(".");
    bool have_course_root = false;
    std::vector<std::string> seen_scalars;

    auto error_at = [&](int line, std::string msg) {
        res.diagnostics.push_back(
            {Severity::Error, DiagCode::MalformedConfig, file, line, 1, std::move(msg)});
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw(text.data() + pos,
                             (eol == std::string::npos ? text.size() : eol) - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            error_at(line_no, "expected 'key: value'");
            continue;
        }
        std::string key(trim(line.substr(0, colon)));
        std::string value(trim(line.substr(colon + 1)));
        if (!is_identifier(key)) {
            error_at(line_no, "'" + key + "' is not a valid key");
            continue;
        }

        bool repeatable = key == "library" || key == "toc";
        if (!repeatable) {
            if (std::find(seen_scalars.begin(), seen_scalars.end(), key) !=
                seen_scalars.end()) {
                error_at(line_no, "duplicate key '" + key + "'");
                continue;
            }
            seen_scalars.push_back(key);
        }

        if (key == "title") {
            cfg.title = value;
        } else if (key == "course_root") {
            cfg.course_root = resolve_against(base, value);
            have_course_root = true;
        } else if (key == "library") {
            cfg.libraries.push_back(resolve_against(base, value));
        } else if (key == "toc") {
            if (value.empty()) {
                error_at(line_no, "toc entry is empty");
            } else {
                cfg.toc.push_back(value);
            }
        } else if (key == "root_topic") {
            cfg.root_topic = value;
        } else if (key == "format") {
            if (value == "site") {
                cfg.format = OutputFormat::Site;
            } else if (value == "slides") {
                cfg.format = OutputFormat::Slides;
            } else {
                error_at(line_no, "format must be 'site' or 'slides', got '" + value + "'");
            }
        } else if (key == "out_dir") {
            cfg.out_dir = resolve_against(base, value);
        } else if (key == "strict") {
            if (value == "true") {
                cfg.strict = true;
            } else if (value == "false") {
                cfg.strict = false;
            } else {
                error_at(line_no, "strict must be 'true' or 'false', got '" + value + "'");
            }
        } else if (key == "max_depth") {
            try {
                std::size_t consumed = 0;
                long v = std::stol(value, &consumed);
                if (consumed != value.size() || v < 1) throw std::invalid_argument(value);
                cfg.max_depth = static_cast<std::size_t>(v);
            } catch (const std::exception&) {
                error_at(line_no, "max_depth must be a positive integer, got '" + value + "'");
            }
        } else if (key == "template") {
            cfg.template_path = resolve_against(base, value);
        } else {
            res.diagnostics.push_back({Severity::Warning, DiagCode::UnknownConfigKey, file,
                                       line_no, 1, "unknown key '" + key + "'"});
        }
    }

    if (!have_course_root) {
        res.diagnostics.push_back({Severity::Error, DiagCode::MissingRequiredKey, file, 1, 1,
                                   "missing required key 'course_root'"});
    }
    if (cfg.root_topic.empty() && !cfg.toc.empty()) cfg.root_topic = cfg.toc.front();

    sort_diagnostics(res.diagnostics);
    return res;
}

}  // namespace coursegen::config
