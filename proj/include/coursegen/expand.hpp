#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "coursegen/corpus.hpp"
#include "coursegen/document.hpp"
#include "coursegen/markdown.hpp"

namespace coursegen::expand {

// A contiguous region of expanded text attributed to one source object.
struct ProvenanceRecord {
    md::Span span;
    std::string source;

    bool operator==(const ProvenanceRecord&) const = default;
};

// A link directive surviving expansion, with its span remapped into the
// expanded text.
struct RemainingLink {
    std::string target;
    md::Span span;
    std::string source;

    bool operator==(const RemainingLink&) const = default;
};

struct ExpandedBody {
    std::string text;
    std::vector<RemainingLink> remaining_links;
    std::vector<ProvenanceRecord> provenance;
};

enum class ExpandErrorKind {
    TargetNotFound,
    TargetAmbiguous,
    Cycle,
    DepthExceeded,
};

class expand_error : public error {
public:
    expand_error(ExpandErrorKind kind, std::string message)
        : error(std::move(message)), kind(kind) {}

    ExpandErrorKind kind;
    // For Cycle: the chain of object names, first == last.
    // For DepthExceeded: the include chain that overflowed.
    std::vector<std::string> chain;
    // The reference text as written in the directive.
    std::string ref;
    // Object containing the offending directive and the directive's span
    // within that object's body.
    std::string source_name;
    md::Span span{0, 0};
};

inline constexpr std::size_t kDefaultMaxDepth = 32;

// Expands all $include / $include_topic directives of the named object,
// splicing target bodies in place. $link_to directives are preserved and
// reported with spans remapped into the expanded text. Throws expand_error
// on unresolved or ambiguous include targets, include cycles, and nesting
// deeper than max_depth.
ExpandedBody expand(const std::string& name, const Corpus& corpus,
                    std::size_t max_depth = kDefaultMaxDepth);

// Enumerates elementary cycles among include edges of the active objects.
// Each cycle is reported as a name chain whose first and last entries are
// equal, e.g. [a, b, a]; a self-include yields [a, a]. The result is empty
// iff the include graph is acyclic; enumeration stops after max_cycles
// entries. Cycles are rotated to start at their smallest name and sorted.
std::vector<std::vector<std::string>> detect_cycles(const Corpus& corpus,
                                                    std::size_t max_cycles = 1000);

// Graph-level core of detect_cycles, usable without a corpus: nodes are
// arbitrary labels, edges[i] lists indices into nodes.
std::vector<std::vector<std::string>> find_elementary_cycles(
    const std::vector<std::string>& nodes,
    const std::vector<std::vector<std::size_t>>& edges,
    std::size_t max_cycles = 1000);

}  // namespace coursegen::expand
