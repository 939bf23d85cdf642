#include "coursegen/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "coursegen/document.hpp"
#include "coursegen/expand.hpp"

namespace coursegen::graph {

namespace {

std::string dot_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) out += sep;
        out += parts[i];
    }
    return out;
}

// Names reachable from seeds following edges forward, seeds included.
std::set<std::string> reachable(const std::vector<Edge>& edges,
                                const std::vector<std::string>& seeds) {
    std::map<std::string, std::vector<const Edge*>, std::less<>> adj;
    for (const Edge& e : edges) adj[e.from].push_back(&e);
    std::set<std::string> seen(seeds.begin(), seeds.end());
    std::deque<std::string> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        std::string name = std::move(queue.front());
        queue.pop_front();
        auto it = adj.find(name);
        if (it == adj.end()) continue;
        for (const Edge* e : it->second) {
            if (seen.insert(e->to).second) queue.push_back(e->to);
        }
    }
    return seen;
}

bool is_fragment(const CGLO& obj) {
    const std::string* flag = obj.doc.property("standalone");
    return flag != nullptr && *flag == "false";
}

}  // namespace

const GraphNode* DependencyGraph::node(std::string_view name) const {
    for (const GraphNode& n : nodes) {
        if (n.name == name) return &n;
    }
    return nullptr;
}

DependencyGraph build_graph(const Corpus& corpus) {
    DependencyGraph g;
    g.roots = corpus.roots();
    for (const CGLO* obj : corpus.active_objects()) {
        g.nodes.push_back(
            {obj->name, g.roots[obj->root_index].role, obj->root_index});
        for (const DirectiveNode& d : obj->doc.directives) {
            EdgeKind kind =
                d.kind == DirectiveKind::LinkTo ? EdgeKind::Link : EdgeKind::Include;
            ResolveResult r = corpus.resolve(d.target);
            if (r.status == ResolveStatus::Found) {
                g.edges.push_back({obj->name, r.object->name, kind, d.span});
            } else {
                g.unresolved.push_back(
                    {obj->name, d.target, kind, r.status, r.candidates, d.span});
            }
        }
    }
    return g;
}

std::string emit_dot(const DependencyGraph& graph) {
    std::string out = "digraph coursegen {\n";
    for (const GraphNode& n : graph.nodes) {
        out += "  \"" + dot_escape(n.name) + "\" [shape=" +
               (n.role == RootRole::Course ? "box" : "ellipse") + "];\n";
    }
    for (const Edge& e : graph.edges) {
        out += "  \"" + dot_escape(e.from) + "\" -> \"" + dot_escape(e.to) +
               "\" [style=" + (e.kind == EdgeKind::Include ? "solid" : "dashed") +
               "];\n";
    }
    out += "}\n";
    return out;
}

std::vector<Diagnostic> lint(const Corpus& corpus, const config::BuildConfig& config) {
    std::vector<Diagnostic> diags = corpus.diagnostics();
    DependencyGraph g = build_graph(corpus);

    auto locate_in = [&](const std::string& name, md::Span span, int& line, int& col,
                         std::string& file) {
        const CGLO* obj = corpus.find_active(name);
        if (obj == nullptr) return;
        LineCol lc = locate(obj->doc, span.begin);
        line = lc.line;
        col = lc.col;
        file = obj->doc.origin;
    };

    for (const UnresolvedRef& u : g.unresolved) {
        int line = 1;
        int col = 1;
        std::string file;
        locate_in(u.from, u.span, line, col, file);
        if (u.status == ResolveStatus::Ambiguous) {
            diags.push_back({Severity::Error, DiagCode::AmbiguousRef, file, line, col,
                             "ambiguous reference '" + u.ref +
                                 "' (candidates: " + join(u.candidates, ", ") + ")"});
        } else if (u.kind == EdgeKind::Include) {
            diags.push_back({Severity::Error, DiagCode::BrokenInclude, file, line, col,
                             "include of unknown object '" + u.ref + "'"});
        } else {
            diags.push_back({Severity::Warning, DiagCode::BrokenLink, file, line, col,
                             "link to unknown object '" + u.ref + "'"});
        }
    }

    for (const auto& chain : expand::detect_cycles(corpus)) {
        int line = 1;
        int col = 1;
        std::string file;
        const CGLO* head = corpus.find_active(chain.front());
        if (head != nullptr) {
            file = head->doc.origin;
            for (const DirectiveNode& d : head->doc.directives) {
                if (d.kind != DirectiveKind::Include) continue;
                ResolveResult r = corpus.resolve(d.target);
                if (r.status == ResolveStatus::Found && r.object->name == chain[1]) {
                    LineCol lc = locate(head->doc, d.span.begin);
                    line = lc.line;
                    col = lc.col;
                    break;
                }
            }
        }
        diags.push_back({Severity::Error, DiagCode::IncludeCycle, file, line, col,
                         "include cycle: " + join(chain, " -> ")});
    }

    for (const CGLO* obj : corpus.active_objects()) {
        if (is_fragment(*obj)) continue;
        if (obj->doc.property("title") == nullptr) {
            diags.push_back({Severity::Warning, DiagCode::MissingTitle, obj->doc.origin,
                             1, 1, "missing 'title' property"});
        }
    }

    std::vector<std::string> seeds;
    auto add_seed = [&](const std::string& ref) {
        if (ref.empty()) return;
        ResolveResult r = corpus.resolve(ref);
        if (r.status == ResolveStatus::Found) seeds.push_back(r.object->name);
    };
    for (const std::string& entry : config.toc) add_seed(entry);
    add_seed(config.root_topic);
    if (!seeds.empty()) {
        std::set<std::string> reached = reachable(g.edges, seeds);
        for (const CGLO* obj : corpus.active_objects()) {
            if (reached.count(obj->name) != 0) continue;
            diags.push_back({Severity::Info, DiagCode::Orphan, obj->doc.origin, 1, 1,
                             "unreachable from the table of contents"});
        }
    }

    if (config.strict) promote_warnings(diags);
    sort_diagnostics(diags);
    return diags;
}

ReuseReport reuse_report(const DependencyGraph& graph,
                         const std::vector<std::string>& seeds) {
    ReuseReport rep;
    rep.total_objects = graph.nodes.size();
    rep.total_edges = graph.edges.size();
    rep.total_unresolved = graph.unresolved.size();

    std::map<std::string, const GraphNode*, std::less<>> by_name;
    for (const GraphNode& n : graph.nodes) {
        by_name.emplace(n.name, &n);
        rep.include_in_degree.emplace(n.name, 0);
        rep.link_in_degree.emplace(n.name, 0);
    }

    for (const Edge& e : graph.edges) {
        auto& counter =
            e.kind == EdgeKind::Include ? rep.include_in_degree : rep.link_in_degree;
        ++counter[e.to];
        const GraphNode* from = by_name.at(e.from);
        const GraphNode* to = by_name.at(e.to);
        if (from->role == RootRole::Course && to->role == RootRole::Course) {
            ++rep.intra_course_edges;
        } else if (from->role == RootRole::Course && to->role == RootRole::Library) {
            ++rep.course_to_library[to->root_index];
        }
    }

    if (!seeds.empty()) {
        std::set<std::string> reached = reachable(graph.edges, seeds);
        for (const GraphNode& n : graph.nodes) {
            if (reached.count(n.name) == 0) rep.orphans.push_back(n.name);
        }
        std::sort(rep.orphans.begin(), rep.orphans.end());
    }
    return rep;
}

std::string format_reuse_report(const ReuseReport& report, const DependencyGraph& graph) {
    std::size_t course_objects = 0;
    for (const GraphNode& n : graph.nodes) {
        if (n.role == RootRole::Course) ++course_objects;
    }
    std::size_t include_edges = 0;
    std::size_t link_edges = 0;
    for (const Edge& e : graph.edges) {
        if (e.kind == EdgeKind::Include) {
            ++include_edges;
        } else {
            ++link_edges;
        }
    }

    std::ostringstream out;
    out << "reuse report\n";
    out << "  objects: " << report.total_objects << " (course " << course_objects
        << ", library " << report.total_objects - course_objects << ")\n";
    out << "  resolved edges: " << report.total_edges << " (" << include_edges
        << " include, " << link_edges << " link)\n";
    out << "  unresolved refs: " << report.total_unresolved << "\n";
    out << "  type 1 (reuse within the course tree): " << report.intra_course_edges
        << " edge(s)\n";
    out << "  type 2/3 (course -> library):";
    if (report.course_to_library.empty()) {
        out << " none\n";
    } else {
        out << "\n";
        for (const auto& [root_index, count] : report.course_to_library) {
            std::string label = root_index < graph.roots.size()
                                    ? graph.roots[root_index].path.generic_string()
                                    : "root " + std::to_string(root_index);
            out << "    " << label << ": " << count << " edge(s)\n";
        }
    }
    out << "  type 4 (reuse across institutions): outside the scope of one corpus\n";

    std::vector<std::pair<std::string, std::size_t>> included;
    for (const auto& [name, count] : report.include_in_degree) {
        if (count > 0) included.emplace_back(name, count);
    }
    std::sort(included.begin(), included.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (included.size() > 10) included.resize(10);
    out << "  most included:";
    if (included.empty()) {
        out << " none\n";
    } else {
        out << "\n";
        for (const auto& [name, count] : included) {
            out << "    " << name << ": " << count << "\n";
        }
    }

    out << "  orphans:";
    if (report.orphans.empty()) {
        out << " none\n";
    } else {
        out << "\n";
        for (const std::string& name : report.orphans) {
            out << "    " << name << "\n";
        }
    }
    return out.str();
}

}  // namespace coursegen::graph
