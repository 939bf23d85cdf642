#include "coursegen/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

namespace coursegen {

namespace fs = std::filesystem;

namespace {

bool is_hidden(const fs::path& p) {
    std::string name = p.filename().string();
    return name.size() > 1 && name[0] == '.';
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw corpus_error("cannot read file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string to_canonical_name(const fs::path& rel) {
    fs::path stem = rel;
    stem.replace_extension();
    return stem.generic_string();
}

}  // namespace

std::string CGLO::basename() const {
    std::size_t slash = name.rfind('/');
    return slash == std::string::npos ? name : name.substr(slash + 1);
}

std::vector<const CGLO*> Corpus::active_objects() const {
    std::vector<const CGLO*> out;
    out.reserve(objects_.size());
    for (const auto& obj : objects_) {
        if (is_active(obj)) out.push_back(&obj);
    }
    return out;
}

bool Corpus::is_active(const CGLO& obj) const {
    auto it = by_name_.find(obj.name);
    return it != by_name_.end() && &objects_[it->second.front()] == &obj;
}

ResolveResult Corpus::resolve(std::string_view ref) const {
    ResolveResult res;
    if (ref.find('/') != std::string_view::npos) {
        auto it = by_name_.find(ref);
        if (it == by_name_.end()) return res;
        res.status = ResolveStatus::Found;
        res.object = &objects_[it->second.front()];  // earliest root wins
        return res;
    }
    auto it = by_basename_.find(ref);
    if (it == by_basename_.end()) return res;
    if (it->second.size() > 1) {
        res.status = ResolveStatus::Ambiguous;
        for (std::size_t idx : it->second) res.candidates.push_back(objects_[idx].name);
        return res;
    }
    res.status = ResolveStatus::Found;
    res.object = &objects_[it->second.front()];
    return res;
}

const CGLO* Corpus::find_active(std::string_view name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &objects_[it->second.front()];
}

const CGLO* Corpus::find(std::size_t root_index, std::string_view name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return nullptr;
    for (std::size_t idx : it->second) {
        if (objects_[idx].root_index == root_index) return &objects_[idx];
    }
    return nullptr;
}

std::vector<std::string> Corpus::list_names() const {
    std::vector<std::string> names;
    names.reserve(objects_.size());
    for (const auto& obj : objects_) names.push_back(obj.name);
    return names;
}

std::string Corpus::display_path(const CGLO& obj) const {
    fs::path p = roots_[obj.root_index].path / fs::path(obj.name + ".md");
    return p.lexically_normal().generic_string();
}

Corpus load_corpus(const std::vector<RootDesc>& roots, bool strict) {
    Corpus corpus;
    corpus.roots_ = roots;

    for (std::size_t ri = 0; ri < roots.size(); ++ri) {
        const fs::path& root = roots[ri].path;
        if (!fs::exists(root) || !fs::is_directory(root)) {
            throw corpus_error("root directory not found: " + root.string());
        }
        std::vector<fs::path> files;
        fs::recursive_directory_iterator it(root), end;
        for (; it != end; ++it) {
            if (is_hidden(it->path())) {
                if (it->is_directory()) it.disable_recursion_pending();
                continue;
            }
            if (it->is_regular_file()) files.push_back(it->path());
        }
        // Directory iteration order is unspecified; sort for determinism.
        std::vector<std::pair<std::string, fs::path>> entries;
        for (const auto& f : files) {
            entries.emplace_back(f.lexically_relative(root).generic_string(), f);
        }
        std::sort(entries.begin(), entries.end());

        for (const auto& [rel, file] : entries) {
            if (file.extension() == ".md") {
                std::string display = (root / fs::path(rel)).lexically_normal().generic_string();
                ParseResult parsed = parse_document(read_file(file), display);
                for (auto& d : parsed.diagnostics) {
                    if (strict && d.severity == Severity::Error) {
                        throw corpus_error(format_diagnostic(d));
                    }
                    corpus.diagnostics_.push_back(std::move(d));
                }
                corpus.objects_.push_back({to_canonical_name(rel), ri, std::move(parsed.doc)});
            } else {
                corpus.assets_.push_back({rel, ri, file});
            }
        }
    }

    std::sort(corpus.objects_.begin(), corpus.objects_.end(), [](const CGLO& a, const CGLO& b) {
        return std::tie(a.root_index, a.name) < std::tie(b.root_index, b.name);
    });
    std::sort(corpus.assets_.begin(), corpus.assets_.end(),
              [](const AssetFile& a, const AssetFile& b) {
                  return std::tie(a.root_index, a.rel_path) < std::tie(b.root_index, b.rel_path);
              });
    for (std::size_t i = 0; i < corpus.objects_.size(); ++i) {
        const CGLO& obj = corpus.objects_[i];
        corpus.by_name_[obj.name].push_back(i);
        corpus.by_basename_[obj.basename()].push_back(i);
    }
    sort_diagnostics(corpus.diagnostics_);
    return corpus;
}

}  // namespace coursegen
