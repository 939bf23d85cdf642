#include "coursegen/site.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "coursegen/expand.hpp"
#include "coursegen/markdown.hpp"

namespace coursegen::site {

namespace {

constexpr const char* kBuiltinTemplate = R"(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{{title}}</title>
<style>
body { margin: 2rem auto; max-width: 46rem; padding: 0 1rem; font-family: sans-serif; line-height: 1.5; }
nav ul { list-style: none; padding: 0; margin: 0 0 1.5rem 0; border-bottom: 1px solid #ddd; }
nav li { display: inline-block; margin-right: 1rem; }
pre { background: #f4f4f4; padding: 0.75rem; overflow-x: auto; }
code { background: #f4f4f4; }
.broken-link { color: #b00020; border-bottom: 1px dotted #b00020; }
</style>
</head>
<body>
<nav>{{nav}}</nav>
<main>
{{content}}</main>
</body>
</html>
)";

bool is_fragment(const CGLO& obj) {
    const std::string* flag = obj.doc.property("standalone");
    return flag != nullptr && *flag == "false";
}

std::string page_path_for(const std::string& name) { return name + ".html"; }

std::string relative_href(const std::string& base_dir, const std::string& target) {
    if (base_dir.empty()) return target;
    return std::filesystem::path(target)
        .lexically_relative(base_dir)
        .generic_string();
}

std::string dir_of(const std::string& rel_path) {
    return std::filesystem::path(rel_path).parent_path().generic_string();
}

void replace_all(std::string& text, std::string_view needle, std::string_view with) {
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), with);
        pos += with.size();
    }
}

// Rendering of one object against an arbitrary base directory; index.html
// reuses this with the output root as base.
std::string render_page_at(const std::string& name, const std::string& base_dir,
                           const Corpus& corpus, const SitePlan& plan,
                           const config::BuildConfig& config) {
    const CGLO* obj = corpus.find_active(name);
    if (obj == nullptr) {
        throw site_error(DiagCode::BrokenInclude, "no object named '" + name + "'");
    }
    expand::ExpandedBody expanded = expand::expand(name, corpus, config.max_depth);

    std::vector<md::RawSplice> splices;
    splices.reserve(expanded.remaining_links.size());
    for (const expand::RemainingLink& link : expanded.remaining_links) {
        ResolveResult r = corpus.resolve(link.target);
        std::string html;
        auto page = r.status == ResolveStatus::Found ? plan.pages.find(r.object->name)
                                                     : plan.pages.end();
        if (page != plan.pages.end()) {
            std::string href = relative_href(base_dir, page->second);
            std::string text = r.object->doc.title_or(r.object->name);
            html = "<a href=\"" + md::escape_attr(href) + "\">" +
                   md::escape_html(text) + "</a>";
        } else {
            html = "<span class=\"broken-link\">" + md::escape_html(link.target) +
                   "</span>";
        }
        splices.push_back({link.span, std::move(html)});
    }

    std::string nav;
    if (!plan.nav.empty()) {
        nav = "<ul>\n";
        for (const NavEntry& entry : plan.nav) {
            nav += "<li><a href=\"" +
                   md::escape_attr(relative_href(base_dir, entry.path)) + "\">" +
                   md::escape_html(entry.title) + "</a></li>\n";
        }
        nav += "</ul>";
    }

    std::string html = plan.page_template;
    replace_all(html, "{{title}}", md::escape_html(obj->doc.title_or(name)));
    replace_all(html, "{{nav}}", nav);
    replace_all(html, "{{content}}", md::render_html(expanded.text, splices));
    return html;
}

}  // namespace

SitePlan plan_site(const Corpus& corpus, const config::BuildConfig& config) {
    SitePlan plan;

    std::set<std::string> forced;
    for (const CGLO* obj : corpus.active_objects()) {
        for (const DirectiveNode& d : obj->doc.directives) {
            if (d.kind != DirectiveKind::LinkTo) continue;
            ResolveResult r = corpus.resolve(d.target);
            if (r.status == ResolveStatus::Found) forced.insert(r.object->name);
        }
    }
    auto resolve_name = [&](const std::string& ref) -> std::string {
        if (ref.empty()) return "";
        ResolveResult r = corpus.resolve(ref);
        return r.status == ResolveStatus::Found ? r.object->name : "";
    };
    for (const std::string& entry : config.toc) {
        std::string name = resolve_name(entry);
        if (!name.empty()) forced.insert(name);
    }
    std::string index_name = resolve_name(config.root_topic);
    if (!index_name.empty()) forced.insert(index_name);
    plan.index_name = index_name;

    std::map<std::string, std::string> used;  // output path -> owner
    auto claim = [&](const std::string& path, const std::string& owner) {
        auto [it, inserted] = used.emplace(path, owner);
        if (!inserted) {
            throw site_error(DiagCode::DuplicateOutputPath,
                             "output path '" + path + "' claimed by both '" +
                                 it->second + "' and '" + owner + "'");
        }
    };

    for (const CGLO* obj : corpus.active_objects()) {
        if (is_fragment(*obj) && forced.count(obj->name) == 0) continue;
        std::string path =
            std::filesystem::path(page_path_for(obj->name)).lexically_normal().generic_string();
        claim(path, obj->name);
        plan.pages.emplace(obj->name, std::move(path));
    }

    if (!index_name.empty() && plan.pages.at(index_name) != "index.html") {
        claim("index.html", index_name + " (index)");
    }

    for (const AssetFile& asset : corpus.assets()) {
        std::string path =
            std::filesystem::path(asset.rel_path).lexically_normal().generic_string();
        if (plan.assets.count(path) != 0) continue;  // shadowed by earlier root
        claim(path, asset.source.generic_string());
        plan.assets.emplace(std::move(path), asset.source);
    }

    // A path that doubles as a directory prefix of another cannot be written.
    std::set<std::string> dirs;
    for (const auto& [path, owner] : used) {
        for (std::filesystem::path d = std::filesystem::path(path).parent_path();
             !d.empty(); d = d.parent_path()) {
            dirs.insert(d.generic_string());
        }
    }
    for (const auto& [path, owner] : used) {
        if (dirs.count(path) != 0) {
            throw site_error(DiagCode::DuplicateOutputPath,
                             "output path '" + path +
                                 "' is also a directory of another output");
        }
    }

    for (const std::string& entry : config.toc) {
        std::string name = resolve_name(entry);
        if (name.empty()) continue;
        const CGLO* obj = corpus.find_active(name);
        plan.nav.push_back({name, obj->doc.title_or(name), plan.pages.at(name)});
    }

    if (config.template_path.empty()) {
        plan.page_template = kBuiltinTemplate;
    } else {
        std::ifstream in(config.template_path, std::ios::binary);
        if (!in) {
            throw site_error(DiagCode::IoError,
                             "cannot read template '" +
                                 config.template_path.generic_string() + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        plan.page_template = buf.str();
    }
    return plan;
}

std::string render_page(const std::string& name, const Corpus& corpus,
                        const SitePlan& plan, const config::BuildConfig& config) {
    auto it = plan.pages.find(name);
    if (it == plan.pages.end()) {
        throw site_error(DiagCode::BrokenInclude, "'" + name + "' has no planned page");
    }
    return render_page_at(name, dir_of(it->second), corpus, plan, config);
}

std::map<std::string, std::string> render_site(const Corpus& corpus,
                                               const SitePlan& plan,
                                               const config::BuildConfig& config) {
    std::map<std::string, std::string> files;
    for (const auto& [name, path] : plan.pages) {
        files[path] = render_page_at(name, dir_of(path), corpus, plan, config);
    }
    if (!plan.index_name.empty() && plan.pages.at(plan.index_name) != "index.html") {
        files["index.html"] = render_page_at(plan.index_name, "", corpus, plan, config);
    }
    for (const auto& [path, source] : plan.assets) {
        std::ifstream in(source, std::ios::binary);
        if (!in) {
            throw site_error(DiagCode::IoError,
                             "cannot read asset '" + source.generic_string() + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        files[path] = buf.str();
    }
    return files;
}

WriteSummary write_outputs(const std::map<std::string, std::string>& files,
                           const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw site_error(DiagCode::IoError, "cannot create '" +
                                                out_dir.generic_string() +
                                                "': " + ec.message());
    }

    std::set<std::string> needed_dirs;
    for (const auto& [rel, bytes] : files) {
        for (fs::path d = fs::path(rel).parent_path(); !d.empty(); d = d.parent_path()) {
            auto [it, inserted] = needed_dirs.insert(d.generic_string());
            if (files.count(*it) != 0) {
                throw site_error(DiagCode::DuplicateOutputPath,
                                 "output path '" + *it + "' is both a file and a directory");
            }
            if (!inserted) break;
        }
    }

    auto fail = [](const fs::path& p, const std::error_code& e) {
        throw site_error(DiagCode::IoError,
                         "cannot update '" + p.generic_string() + "': " + e.message());
    };

    // Children sort after parents, so reverse order deletes leaves first.
    std::vector<std::pair<std::string, bool>> existing;
    for (const auto& entry : fs::recursive_directory_iterator(out_dir)) {
        fs::path rel = entry.path().lexically_relative(out_dir);
        existing.emplace_back(rel.generic_string(), entry.is_directory());
    }
    std::sort(existing.rbegin(), existing.rend());
    for (const auto& [rel, is_dir] : existing) {
        fs::path full = out_dir / rel;
        if (is_dir) {
            if (files.count(rel) != 0) {
                fs::remove_all(full, ec);  // directory shadowing a planned file
                if (ec) fail(full, ec);
            } else if (needed_dirs.count(rel) == 0) {
                fs::remove(full, ec);  // stale; still non-empty only on race
                if (ec) fail(full, ec);
            }
        } else {
            if (files.count(rel) == 0 || needed_dirs.count(rel) != 0) {
                fs::remove(full, ec);
                if (ec) fail(full, ec);
            }
        }
    }

    for (const std::string& d : needed_dirs) {
        fs::create_directories(out_dir / d, ec);
        if (ec) fail(out_dir / d, ec);
    }

    WriteSummary summary;
    for (const auto& [rel, bytes] : files) {
        fs::path final_path = out_dir / rel;
        fs::path tmp_path = final_path;
        tmp_path += ".tmp-new";
        {
            std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out) fail(tmp_path, std::make_error_code(std::errc::io_error));
        }
        fs::rename(tmp_path, final_path, ec);
        if (ec) fail(final_path, ec);
        ++summary.files_written;
        summary.bytes_written += bytes.size();
    }
    return summary;
}

}  // namespace coursegen::site
