#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coursegen/config.hpp"
#include "coursegen/corpus.hpp"
#include "coursegen/diagnostics.hpp"
#include "coursegen/markdown.hpp"

namespace coursegen::graph {

enum class EdgeKind { Link, Include };

struct GraphNode {
    std::string name;
    RootRole role = RootRole::Course;
    std::size_t root_index = 0;

    bool operator==(const GraphNode&) const = default;
};

struct Edge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::Link;
    // Directive span in the source object's body.
    md::Span span{0, 0};

    bool operator==(const Edge&) const = default;
};

struct UnresolvedRef {
    std::string from;
    std::string ref;
    EdgeKind kind = EdgeKind::Link;
    ResolveStatus status = ResolveStatus::NotFound;
    std::vector<std::string> candidates;
    md::Span span{0, 0};

    bool operator==(const UnresolvedRef&) const = default;
};

struct DependencyGraph {
    std::vector<RootDesc> roots;
    // Active objects in corpus order (root order, then name).
    std::vector<GraphNode> nodes;
    // One edge per resolvable directive occurrence, in source order per node.
    std::vector<Edge> edges;
    std::vector<UnresolvedRef> unresolved;

    const GraphNode* node(std::string_view name) const;
};

DependencyGraph build_graph(const Corpus& corpus);

// DOT digraph: course nodes are boxes, library nodes ellipses; include edges
// solid, link edges dashed.
std::string emit_dot(const DependencyGraph& graph);

// Full diagnostic pass: corpus parse issues, broken/ambiguous references,
// include cycles, missing titles on page-bearing objects, and orphans
// unreachable from the toc or root_topic (skipped when neither is set).
// Strict mode promotes warnings to errors. Sorted by (file, line, col).
std::vector<Diagnostic> lint(const Corpus& corpus, const config::BuildConfig& config);

struct ReuseReport {
    // In-degree per node over resolved edges; zero entries included.
    std::map<std::string, std::size_t> include_in_degree;
    std::map<std::string, std::size_t> link_in_degree;
    // Edges whose endpoints are both course objects.
    std::size_t intra_course_edges = 0;
    // Course-to-library edge count keyed by target root index.
    std::map<std::size_t, std::size_t> course_to_library;
    // Nodes unreachable from the seeds, excluding the seeds themselves;
    // empty when no seeds are given.
    std::vector<std::string> orphans;
    std::size_t total_objects = 0;
    std::size_t total_edges = 0;
    std::size_t total_unresolved = 0;
};

// seeds: canonical names to treat as reachability roots (resolved toc plus
// root_topic); unknown names are ignored.
ReuseReport reuse_report(const DependencyGraph& graph,
                         const std::vector<std::string>& seeds = {});

std::string format_reuse_report(const ReuseReport& report, const DependencyGraph& graph);

}  // namespace coursegen::graph
