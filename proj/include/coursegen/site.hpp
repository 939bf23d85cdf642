#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "coursegen/config.hpp"
#include "coursegen/corpus.hpp"
#include "coursegen/diagnostics.hpp"

namespace coursegen::site {

struct NavEntry {
    std::string name;
    std::string title;
    // Output-relative page path.
    std::string path;

    bool operator==(const NavEntry&) const = default;
};

struct SitePlan {
    // Canonical name -> output-relative page path.
    std::map<std::string, std::string> pages;
    // Resolved toc entries in declaration order.
    std::vector<NavEntry> nav;
    // Object rendered to index.html; empty when no root topic is configured.
    std::string index_name;
    // Output-relative path -> source file path.
    std::map<std::string, std::filesystem::path> assets;
    // Page template text with {{title}}, {{nav}}, {{content}} placeholders.
    std::string page_template;
};

class site_error : public error {
public:
    site_error(DiagCode code, std::string message)
        : error(std::move(message)), code(code) {}

    DiagCode code;
};

// Assigns one page per active object not marked `standalone: false`; objects
// that are resolved link targets or toc entries get a page regardless, so
// every rendered anchor has somewhere to point. Throws site_error on output
// path collisions or an unreadable template file.
SitePlan plan_site(const Corpus& corpus, const config::BuildConfig& config);

// Renders one planned page: the expanded body as HTML, surviving link
// directives as anchors (title text, page-relative href) or as marked
// broken-link spans, wrapped in the plan's template. Throws expand errors.
std::string render_page(const std::string& name, const Corpus& corpus,
                        const SitePlan& plan, const config::BuildConfig& config);

// All pages, the index page, and assets as output-relative path -> bytes.
std::map<std::string, std::string> render_site(const Corpus& corpus,
                                               const SitePlan& plan,
                                               const config::BuildConfig& config);

struct WriteSummary {
    std::size_t files_written = 0;
    std::size_t bytes_written = 0;
};

// Replaces the contents of out_dir with exactly the given files: stale
// files and directories from earlier builds are removed, each file is
// written to a temporary name and renamed into place.
WriteSummary write_outputs(const std::map<std::string, std::string>& files,
                           const std::filesystem::path& out_dir);

}  // namespace coursegen::site
