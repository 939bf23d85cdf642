#pragma once

#include "coursegen/document.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace coursegen {

enum class RootRole { Course, Library };

struct RootDesc {
    std::filesystem::path path;
    RootRole role = RootRole::Library;
};

// One learning object. The canonical name is the root-relative file path
// with '/' separators and the .md extension stripped.
struct CGLO {
    std::string name;
    std::size_t root_index = 0;
    ParsedDocument doc;

    std::string basename() const;
};

// A non-.md file carried through to the output tree unchanged.
struct AssetFile {
    std::string rel_path;  // '/'-separated, root-relative
    std::size_t root_index = 0;
    std::filesystem::path source;
};

enum class ResolveStatus { Found, NotFound, Ambiguous };

struct ResolveResult {
    ResolveStatus status = ResolveStatus::NotFound;
    const CGLO* object = nullptr;
    std::vector<std::string> candidates;  // canonical names, Ambiguous only
};

class corpus_error : public error {
public:
    using error::error;
};

// Immutable once loaded. Objects iterate in (root order, lexicographic
// name) order; repeated loads of the same trees agree byte-for-byte.
class Corpus {
public:
    const std::vector<RootDesc>& roots() const { return roots_; }
    const std::vector<CGLO>& objects() const { return objects_; }
    const std::vector<AssetFile>& assets() const { return assets_; }
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

    // Shadowing winners: for a name present in several roots, the object
    // from the earliest declared root.
    std::vector<const CGLO*> active_objects() const;
    bool is_active(const CGLO& obj) const;

    // Path-qualified refs match canonical names, first declared root wins.
    // Bare refs match by basename and must be unique corpus-wide.
    ResolveResult resolve(std::string_view ref) const;

    const CGLO* find_active(std::string_view name) const;
    const CGLO* find(std::size_t root_index, std::string_view name) const;

    // All canonical names in iteration order (shadowed duplicates included).
    std::vector<std::string> list_names() const;

    // Display path of an object's source file, for diagnostics.
    std::string display_path(const CGLO& obj) const;

private:
    friend Corpus load_corpus(const std::vector<RootDesc>&, bool);

    std::vector<RootDesc> roots_;
    std::vector<CGLO> objects_;  // sorted by (root_index, name)
    std::vector<AssetFile> assets_;
    std::vector<Diagnostic> diagnostics_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_name_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_basename_;
};

// Reads every .md file under every root (recursively, hidden entries
// skipped) into a Corpus. Parse problems become corpus diagnostics unless
// strict, in which case the first error aborts the load.
// Throws corpus_error if a root does not exist.
Corpus load_corpus(const std::vector<RootDesc>& roots, bool strict = false);

}  // namespace coursegen
