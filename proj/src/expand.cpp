#include "coursegen/expand.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace coursegen::expand {

namespace {

std::string join_chain(const std::vector<std::string>& chain) {
    std::string out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i != 0) out += " -> ";
        out += chain[i];
    }
    return out;
}

struct MemoEntry {
    ExpandedBody body;
    // Stack slots consumed by fully expanding this object, itself included.
    std::size_t internal_depth = 1;
};

class Expander {
public:
    Expander(const Corpus& corpus, std::size_t max_depth)
        : corpus_(corpus), max_depth_(max_depth) {}

    ExpandedBody run(const std::string& name) {
        const CGLO* root = corpus_.find_active(name);
        if (root == nullptr) {
            ResolveResult r = corpus_.resolve(name);
            if (r.status == ResolveStatus::Ambiguous) {
                expand_error err(ExpandErrorKind::TargetAmbiguous,
                                 "'" + name + "' is ambiguous (candidates: " +
                                     join_names(r.candidates) + ")");
                err.ref = name;
                throw err;
            }
            if (r.status == ResolveStatus::NotFound) {
                expand_error err(ExpandErrorKind::TargetNotFound,
                                 "no object named '" + name + "'");
                err.ref = name;
                throw err;
            }
            root = r.object;
        }
        if (max_depth_ == 0) {
            expand_error err(ExpandErrorKind::DepthExceeded,
                             "include depth limit is 0");
            err.chain = {root->name};
            throw err;
        }
        return visit(*root).first->body;
    }

private:
    static std::string join_names(const std::vector<std::string>& names) {
        std::string out;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i != 0) out += ", ";
            out += names[i];
        }
        return out;
    }

    static void add_provenance(ExpandedBody& out, md::Span s,
                               const std::string& source) {
        if (s.begin == s.end) return;
        if (!out.provenance.empty()) {
            ProvenanceRecord& last = out.provenance.back();
            if (last.source == source && last.span.end == s.begin) {
                last.span.end = s.end;
                return;
            }
        }
        out.provenance.push_back({s, source});
    }

    static void append_segment(ExpandedBody& out, const std::string& body,
                               std::size_t from, std::size_t to,
                               const std::string& source) {
        if (from >= to) return;
        std::size_t at = out.text.size();
        out.text.append(body, from, to - from);
        add_provenance(out, {at, out.text.size()}, source);
    }

    static void splice(ExpandedBody& out, const ExpandedBody& child) {
        std::size_t off = out.text.size();
        out.text += child.text;
        for (RemainingLink link : child.remaining_links) {
            link.span.begin += off;
            link.span.end += off;
            out.remaining_links.push_back(std::move(link));
        }
        for (const ProvenanceRecord& rec : child.provenance) {
            add_provenance(out, {rec.span.begin + off, rec.span.end + off},
                           rec.source);
        }
    }

    const CGLO& resolve_child(const CGLO& from, const DirectiveNode& d) {
        ResolveResult r = corpus_.resolve(d.target);
        if (r.status == ResolveStatus::Found) return *r.object;
        ExpandErrorKind kind = r.status == ResolveStatus::Ambiguous
                                   ? ExpandErrorKind::TargetAmbiguous
                                   : ExpandErrorKind::TargetNotFound;
        std::string msg = "cannot include '" + d.target + "' from '" +
                          from.name + "': ";
        if (kind == ExpandErrorKind::TargetAmbiguous) {
            msg += "ambiguous reference (candidates: " +
                   join_names(r.candidates) + ")";
        } else {
            msg += "no such object";
        }
        expand_error err(kind, std::move(msg));
        err.ref = d.target;
        err.source_name = from.name;
        err.span = d.span;
        err.chain = stack_;
        throw err;
    }

    void check_cycle_and_depth(const CGLO& from, const DirectiveNode& d,
                               const CGLO& child) {
        auto it = std::find(stack_.begin(), stack_.end(), child.name);
        if (it != stack_.end()) {
            std::vector<std::string> chain(it, stack_.end());
            chain.push_back(child.name);
            expand_error err(ExpandErrorKind::Cycle,
                             "include cycle: " + join_chain(chain));
            err.chain = std::move(chain);
            err.ref = d.target;
            err.source_name = from.name;
            err.span = d.span;
            throw err;
        }
        if (stack_.size() >= max_depth_) {
            std::vector<std::string> chain = stack_;
            chain.push_back(child.name);
            expand_error err(ExpandErrorKind::DepthExceeded,
                             "include depth exceeds " +
                                 std::to_string(max_depth_) + " at '" +
                                 child.name + "'");
            err.chain = std::move(chain);
            err.ref = d.target;
            err.source_name = from.name;
            err.span = d.span;
            throw err;
        }
    }

    // Returns the memo entry for obj, expanding it if needed. A cached entry
    // is reused only when its nesting still fits under max_depth from the
    // current stack; otherwise the subtree is re-walked so a DepthExceeded
    // error points at the exact offending directive.
    std::pair<const MemoEntry*, std::size_t> visit(const CGLO& obj) {
        auto hit = memo_.find(obj.name);
        if (hit != memo_.end() &&
            stack_.size() + hit->second.internal_depth <= max_depth_) {
            return {&hit->second, hit->second.internal_depth};
        }

        stack_.push_back(obj.name);
        ExpandedBody out;
        std::size_t deepest_child = 0;
        const std::string& body = obj.doc.body;
        std::size_t pos = 0;
        for (const DirectiveNode& d : obj.doc.directives) {
            append_segment(out, body, pos, d.span.begin, obj.name);
            if (d.kind == DirectiveKind::LinkTo) {
                std::size_t at = out.text.size();
                out.text.append(body, d.span.begin, d.span.size());
                add_provenance(out, {at, out.text.size()}, obj.name);
                out.remaining_links.push_back(
                    {d.target, {at, out.text.size()}, obj.name});
            } else {
                const CGLO& child = resolve_child(obj, d);
                check_cycle_and_depth(obj, d, child);
                auto [entry, depth] = visit(child);
                splice(out, entry->body);
                deepest_child = std::max(deepest_child, depth);
            }
            pos = d.span.end;
        }
        append_segment(out, body, pos, body.size(), obj.name);
        stack_.pop_back();

        std::size_t depth = 1 + deepest_child;
        auto [slot, inserted] = memo_.insert_or_assign(
            obj.name, MemoEntry{std::move(out), depth});
        (void)inserted;
        return {&slot->second, depth};
    }

    const Corpus& corpus_;
    std::size_t max_depth_;
    std::vector<std::string> stack_;
    std::map<std::string, MemoEntry, std::less<>> memo_;
};

// Tarjan strongly connected components restricted to vertices >= floor;
// edges to vertices below floor are ignored.
struct SccFinder {
    const std::vector<std::vector<std::size_t>>& adj;
    std::size_t floor;
    std::vector<int> idx;
    std::vector<int> low;
    std::vector<int> comp;
    std::vector<char> on_stack;
    std::vector<std::size_t> stack;
    int counter = 0;
    int ncomp = 0;

    SccFinder(const std::vector<std::vector<std::size_t>>& adj,
              std::size_t floor, std::size_t n)
        : adj(adj),
          floor(floor),
          idx(n, -1),
          low(n, 0),
          comp(n, -1),
          on_stack(n, 0) {}

    void run() {
        for (std::size_t v = floor; v < idx.size(); ++v) {
            if (idx[v] < 0) dfs(v);
        }
    }

    void dfs(std::size_t v) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (std::size_t w : adj[v]) {
            if (w < floor) continue;
            if (idx[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], idx[w]);
            }
        }
        if (low[v] == idx[v]) {
            while (true) {
                std::size_t w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comp[w] = ncomp;
                if (w == v) break;
            }
            ++ncomp;
        }
    }
};

// Johnson's elementary circuit search within one strongly connected
// component. Self-loops are stripped from adj and reported separately.
struct CircuitFinder {
    const std::vector<std::vector<std::size_t>>& adj;
    std::size_t s = 0;
    std::size_t max_cycles;
    std::vector<std::vector<std::size_t>>& out;
    std::vector<char> in_scc;
    std::vector<char> blocked;
    std::vector<std::vector<std::size_t>> blocked_by;
    std::vector<std::size_t> stack;

    CircuitFinder(const std::vector<std::vector<std::size_t>>& adj,
                  std::size_t n, std::size_t max_cycles,
                  std::vector<std::vector<std::size_t>>& out)
        : adj(adj),
          max_cycles(max_cycles),
          out(out),
          in_scc(n, 0),
          blocked(n, 0),
          blocked_by(n) {}

    bool full() const { return out.size() >= max_cycles; }

    void unblock(std::size_t u) {
        blocked[u] = 0;
        std::vector<std::size_t> waiting = std::move(blocked_by[u]);
        blocked_by[u].clear();
        for (std::size_t w : waiting) {
            if (blocked[w]) unblock(w);
        }
    }

    bool circuit(std::size_t v) {
        if (full()) return true;
        bool found = false;
        stack.push_back(v);
        blocked[v] = 1;
        for (std::size_t w : adj[v]) {
            if (!in_scc[w]) continue;
            if (full()) break;
            if (w == s) {
                out.push_back(stack);
                found = true;
            } else if (!blocked[w]) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (std::size_t w : adj[v]) {
                if (!in_scc[w]) continue;
                auto& waiters = blocked_by[w];
                if (std::find(waiters.begin(), waiters.end(), v) ==
                    waiters.end()) {
                    waiters.push_back(v);
                }
            }
        }
        stack.pop_back();
        return found;
    }
};

}  // namespace

ExpandedBody expand(const std::string& name, const Corpus& corpus,
                    std::size_t max_depth) {
    Expander ex(corpus, max_depth);
    return ex.run(name);
}

std::vector<std::vector<std::string>> find_elementary_cycles(
    const std::vector<std::string>& nodes,
    const std::vector<std::vector<std::size_t>>& edges,
    std::size_t max_cycles) {
    std::size_t n = nodes.size();

    // Process vertices in name order so enumeration is deterministic and
    // every chain starts at its lexicographically smallest member.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (nodes[a] != nodes[b]) return nodes[a] < nodes[b];
        return a < b;
    });
    std::vector<std::size_t> rank(n);
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;

    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<char> self_loop(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w : edges[v]) {
            if (w >= n) continue;
            if (w == v) {
                self_loop[rank[v]] = 1;
            } else {
                adj[rank[v]].push_back(rank[w]);
            }
        }
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    std::vector<std::vector<std::size_t>> chains;
    for (std::size_t v = 0; v < n && chains.size() < max_cycles; ++v) {
        if (self_loop[v]) chains.push_back({v, v});
    }

    for (std::size_t s = 0; s < n && chains.size() < max_cycles; ++s) {
        SccFinder scc(adj, s, n);
        scc.run();
        CircuitFinder finder(adj, n, max_cycles, chains);
        finder.s = s;
        std::size_t members = 0;
        for (std::size_t v = s; v < n; ++v) {
            if (scc.comp[v] == scc.comp[s]) {
                finder.in_scc[v] = 1;
                ++members;
            }
        }
        if (members < 2) continue;
        std::size_t before = chains.size();
        finder.circuit(s);
        for (std::size_t i = before; i < chains.size(); ++i) {
            chains[i].push_back(s);
        }
    }

    std::vector<std::vector<std::string>> result;
    result.reserve(chains.size());
    for (const auto& chain : chains) {
        std::vector<std::string> named;
        named.reserve(chain.size());
        for (std::size_t r : chain) named.push_back(nodes[order[r]]);
        result.push_back(std::move(named));
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<std::vector<std::string>> detect_cycles(const Corpus& corpus,
                                                    std::size_t max_cycles) {
    std::vector<const CGLO*> active = corpus.active_objects();
    std::vector<std::string> names;
    names.reserve(active.size());
    for (const CGLO* obj : active) names.push_back(obj->name);
    std::sort(names.begin(), names.end());
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);

    std::vector<std::vector<std::size_t>> edges(names.size());
    for (const CGLO* obj : active) {
        std::size_t from = index.at(obj->name);
        for (const DirectiveNode& d : obj->doc.directives) {
            if (d.kind != DirectiveKind::Include) continue;
            ResolveResult r = corpus.resolve(d.target);
            if (r.status != ResolveStatus::Found) continue;
            edges[from].push_back(index.at(r.object->name));
        }
    }
    return find_elementary_cycles(names, edges, max_cycles);
}

}  // namespace coursegen::expand
