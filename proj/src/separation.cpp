#include "dagcons/separation.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dagcons {

namespace {

struct AdjLists {
    std::vector<std::vector<NodeId>> children;
    std::vector<std::vector<NodeId>> parents;

    explicit AdjLists(const Dag& g)
        : children(static_cast<std::size_t>(g.node_count())),
          parents(static_cast<std::size_t>(g.node_count())) {
        const int n = g.node_count();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (g.has_arc(a, b)) {
                    children[a].push_back(b);
                    parents[b].push_back(a);
                }
    }
};

void check_query(const Dag& g, const SeparationQuery& q) {
    const int n = g.node_count();
    if (q.x.empty() || q.y.empty()) throw InvalidQueryError("X and Y must be non-empty");
    std::vector<char> tag(static_cast<std::size_t>(n), 0);
    auto mark = [&](const std::vector<NodeId>& set, char bit) {
        for (NodeId v : set) {
            if (v < 0 || v >= n) throw InvalidQueryError("query node out of range");
            if (tag[v] != 0 && tag[v] != bit) throw InvalidQueryError("query sets overlap");
            if (tag[v] == bit) throw InvalidQueryError("node repeated in a query set");
            tag[v] = bit;
        }
    };
    mark(q.x, 1);
    mark(q.y, 2);
    mark(q.z, 3);
}

// Reachability over (node, entry-direction) states. Entry "via incoming arc"
// allows forward continuation when the node is outside Z and backward
// continuation (collider) when it is inside Z; entry "via outgoing arc"
// requires the node outside Z and allows both continuations.
bool separated_core(const AdjLists& adj, const SeparationQuery& q, int n) {
    std::vector<char> in_z(static_cast<std::size_t>(n), 0);
    for (NodeId v : q.z) in_z[v] = 1;
    std::vector<char> in_y(static_cast<std::size_t>(n), 0);
    for (NodeId v : q.y) in_y[v] = 1;

    // visited bit 1: entered via incoming arc, bit 2: entered via outgoing arc
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<NodeId, char>> stack;
    auto push = [&](NodeId v, char dir) {
        if (visited[v] & dir) return;
        visited[v] = static_cast<char>(visited[v] | dir);
        stack.push_back({v, dir});
    };
    for (NodeId x : q.x) {
        for (NodeId c : adj.children[x]) push(c, 1);
        for (NodeId p : adj.parents[x]) push(p, 2);
    }
    while (!stack.empty()) {
        auto [v, dir] = stack.back();
        stack.pop_back();
        if (in_y[v]) return false;
        if (dir == 1) {
            if (!in_z[v]) {
                for (NodeId c : adj.children[v]) push(c, 1);
            } else {
                for (NodeId p : adj.parents[v]) push(p, 2);
            }
        } else {
            if (in_z[v]) continue;
            for (NodeId c : adj.children[v]) push(c, 1);
            for (NodeId p : adj.parents[v]) push(p, 2);
        }
    }
    return true;
}

bool separated_oracle_core(const Dag& g, const SeparationQuery& q) {
    const int n = g.node_count();
    // Ancestral closure of X u Y u Z.
    std::vector<char> anc(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> stack;
    auto seed = [&](const std::vector<NodeId>& set) {
        for (NodeId v : set)
            if (!anc[v]) {
                anc[v] = 1;
                stack.push_back(v);
            }
    };
    seed(q.x);
    seed(q.y);
    seed(q.z);
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (int p = 0; p < n; ++p)
            if (g.has_arc(p, v) && !anc[p]) {
                anc[p] = 1;
                stack.push_back(p);
            }
    }
    // Moralize the induced subgraph.
    std::vector<char> und(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    auto link = [&](int a, int b) {
        und[static_cast<std::size_t>(a) * n + b] = 1;
        und[static_cast<std::size_t>(b) * n + a] = 1;
    };
    for (int v = 0; v < n; ++v) {
        if (!anc[v]) continue;
        std::vector<NodeId> pas;
        for (int p = 0; p < n; ++p)
            if (anc[p] && g.has_arc(p, v)) pas.push_back(p);
        for (NodeId p : pas) link(p, v);
        for (std::size_t i = 0; i < pas.size(); ++i)
            for (std::size_t j = i + 1; j < pas.size(); ++j) link(pas[i], pas[j]);
    }
    // Delete Z, then look for an X-to-Y connection.
    std::vector<char> blocked(static_cast<std::size_t>(n), 0);
    for (NodeId v : q.z) blocked[v] = 1;
    std::vector<char> reached(static_cast<std::size_t>(n), 0);
    for (NodeId v : q.x)
        if (!blocked[v]) {
            reached[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w)
            if (und[static_cast<std::size_t>(v) * n + w] && !blocked[w] && !reached[w]) {
                reached[w] = 1;
                stack.push_back(w);
            }
    }
    for (NodeId y : q.y)
        if (reached[y]) return false;
    return true;
}

}  // namespace

bool d_separated(const Dag& g, const SeparationQuery& q) {
    check_query(g, q);
    AdjLists adj(g);
    return separated_core(adj, q, g.node_count());
}

bool d_separated_oracle(const Dag& g, const SeparationQuery& q) {
    check_query(g, q);
    return separated_oracle_core(g, q);
}

std::vector<char> d_separated_many(const Dag& g, const std::vector<SeparationQuery>& qs) {
    for (const auto& q : qs) check_query(g, q);
    AdjLists adj(g);
    const int n = g.node_count();
    std::vector<char> out(qs.size(), 0);
    const std::int64_t count = static_cast<std::int64_t>(qs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = separated_core(adj, qs[static_cast<std::size_t>(i)], n) ? 1 : 0;
    return out;
}

std::vector<char> d_separated_many_serial(const Dag& g, const std::vector<SeparationQuery>& qs) {
    for (const auto& q : qs) check_query(g, q);
    AdjLists adj(g);
    const int n = g.node_count();
    std::vector<char> out(qs.size(), 0);
    for (std::size_t i = 0; i < qs.size(); ++i)
        out[i] = separated_core(adj, qs[i], n) ? 1 : 0;
    return out;
}

std::vector<SeparationStatement> all_separation_statements(const Dag& g, int limit) {
    const int n = g.node_count();
    if (n > limit || n > 20)
        throw SizeLimitError("statement materialization limited to " + std::to_string(limit) +
                             " nodes");
    AdjLists adj(g);
    std::vector<SeparationStatement> out;
    SeparationQuery q;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            std::vector<NodeId> rest;
            for (int v = 0; v < n; ++v)
                if (v != a && v != b) rest.push_back(v);
            const std::uint32_t subsets = 1u << rest.size();
            for (std::uint32_t sel = 0; sel < subsets; ++sel) {
                q.x = {a};
                q.y = {b};
                q.z.clear();
                std::uint32_t mask = 0;
                for (std::size_t i = 0; i < rest.size(); ++i)
                    if (sel & (1u << i)) {
                        q.z.push_back(rest[i]);
                        mask |= 1u << rest[i];
                    }
                if (separated_core(adj, q, n)) out.push_back({a, b, mask});
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dagcons
