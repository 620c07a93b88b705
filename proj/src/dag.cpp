#include "dagcons/dag.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace dagcons {

NodeOrder::NodeOrder(std::vector<NodeId> perm) : perm_(std::move(perm)) {
    const int n = static_cast<int>(perm_.size());
    pos_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        NodeId v = perm_[i];
        if (v < 0 || v >= n) throw NotAPermutationError("node id out of range in ordering");
        if (pos_[v] != -1) throw NotAPermutationError("node repeated in ordering");
        pos_[v] = i;
    }
}

NodeOrder NodeOrder::identity(int n) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    return NodeOrder(std::move(perm));
}

CardinalityMap::CardinalityMap(std::vector<std::uint64_t> r) : r_(std::move(r)) {
    for (auto v : r_)
        if (v < 2) throw Error("cardinality must be at least 2");
}

CardinalityMap CardinalityMap::uniform(int n, std::uint64_t r) {
    return CardinalityMap(std::vector<std::uint64_t>(static_cast<std::size_t>(n), r));
}

Dag::Dag(int n, std::vector<std::string> names) : n_(n), names_(std::move(names)) {
    if (n_ < 0) throw Error("negative node count");
    if (static_cast<int>(names_.size()) != n_) throw Error("name count does not match node count");
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty()) throw Error("empty node name");
        for (char c : name)
            if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
                throw Error("node name contains whitespace or '#': " + name);
        if (!seen.insert(name).second) throw DuplicateNodeError("duplicate node name: " + name);
    }
    adj_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
}

Dag Dag::from_matrix(std::vector<std::string> names, std::vector<std::uint8_t> adj) {
    const int n = static_cast<int>(names.size());
    Dag d(n, std::move(names));
    if (adj.size() != d.adj_.size()) throw Error("adjacency matrix size mismatch");
    for (int a = 0; a < n; ++a)
        if (adj[static_cast<std::size_t>(a) * n + a]) throw SelfArcError("self-arc in matrix");
    d.adj_ = std::move(adj);
    for (auto& cell : d.adj_)
        if (cell > 1) cell = 1;
    d.arc_count_ = static_cast<int>(std::count(d.adj_.begin(), d.adj_.end(), std::uint8_t{1}));
    if (!d.is_acyclic()) throw CycleError("matrix encodes a directed cycle");
    return d;
}

std::optional<NodeId> Dag::index_of(std::string_view name) const {
    for (int i = 0; i < n_; ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::vector<NodeId> Dag::parents(NodeId b) const {
    std::vector<NodeId> out;
    for (int a = 0; a < n_; ++a)
        if (adj_[idx(a, b)]) out.push_back(a);
    return out;
}

std::vector<NodeId> Dag::children(NodeId a) const {
    std::vector<NodeId> out;
    for (int b = 0; b < n_; ++b)
        if (adj_[idx(a, b)]) out.push_back(b);
    return out;
}

std::vector<Arc> Dag::arcs() const {
    std::vector<Arc> out;
    out.reserve(static_cast<std::size_t>(arc_count_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (adj_[idx(a, b)]) out.push_back({a, b});
    return out;
}

void Dag::add_arc(NodeId a, NodeId b) {
    if (a == b) throw SelfArcError("self-arc " + names_[a] + " -> " + names_[b]);
    if (adj_[idx(a, b)]) throw DuplicateArcError("duplicate arc " + names_[a] + " -> " + names_[b]);
    adj_[idx(a, b)] = 1;
    ++arc_count_;
}

void Dag::remove_arc(NodeId a, NodeId b) {
    if (!adj_[idx(a, b)]) throw MissingArcError("missing arc " + names_[a] + " -> " + names_[b]);
    adj_[idx(a, b)] = 0;
    --arc_count_;
}

std::optional<std::vector<NodeId>> Dag::topological_order() const {
    std::vector<int> indeg(static_cast<std::size_t>(n_), 0);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (adj_[idx(a, b)]) ++indeg[b];
    std::vector<NodeId> stack, order;
    order.reserve(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int b = 0; b < n_; ++b)
            if (adj_[idx(v, b)] && --indeg[b] == 0) stack.push_back(b);
    }
    if (static_cast<int>(order.size()) != n_) return std::nullopt;
    return order;
}

bool Dag::is_acyclic() const { return topological_order().has_value(); }

bool Dag::same_node_set(const Dag& o) const { return names_ == o.names_; }

std::vector<std::string> default_node_names(int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    return names;
}

Dag construct_dag(int n, const std::vector<Arc>& arcs, std::vector<std::string> names) {
    Dag d(n, std::move(names));
    for (const Arc& arc : arcs) {
        if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n)
            throw Error("arc references a node index out of range");
        d.add_arc(arc.from, arc.to);
    }
    if (!d.is_acyclic()) throw CycleError("arc set contains a directed cycle");
    return d;
}

bool is_consistent(const Dag& g, const NodeOrder& order) {
    if (order.size() != g.node_count())
        throw NodeSetMismatchError("ordering does not cover the node set");
    const int n = g.node_count();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.has_arc(a, b) && order.position(a) >= order.position(b)) return false;
    return true;
}

std::vector<NodeId> descendants(const Dag& g, NodeId a) {
    const int n = g.node_count();
    if (a < 0 || a >= n) throw Error("node index out of range");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (int b = 0; b < n; ++b)
            if (g.has_arc(v, b) && !seen[b]) {
                seen[b] = 1;
                stack.push_back(b);
            }
    }
    std::vector<NodeId> out;
    for (int v = 0; v < n; ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

bool is_covered(const Dag& g, Arc arc) {
    if (!g.has_arc(arc.from, arc.to))
        throw MissingArcError("missing arc " + g.name(arc.from) + " -> " + g.name(arc.to));
    const int n = g.node_count();
    for (int x = 0; x < n; ++x) {
        if (x == arc.from) continue;
        if (g.has_arc(x, arc.from) != g.has_arc(x, arc.to)) return false;
    }
    return true;
}

std::pair<Dag, std::vector<Arc>> cover_arc(const Dag& g, Arc arc, const NodeOrder& ref) {
    if (ref.size() != g.node_count())
        throw NodeSetMismatchError("reference ordering does not cover the node set");
    if (!g.has_arc(arc.from, arc.to))
        throw MissingArcError("missing arc " + g.name(arc.from) + " -> " + g.name(arc.to));
    const NodeId y = arc.from, z = arc.to;
    const int n = g.node_count();
    std::vector<Arc> additions;
    for (int x = 0; x < n; ++x) {
        if (x == y || x == z) continue;
        const bool pa_y = g.has_arc(x, y), pa_z = g.has_arc(x, z);
        if (pa_y && !pa_z) additions.push_back({x, z});
        if (pa_z && !pa_y) additions.push_back({x, y});
    }
    std::sort(additions.begin(), additions.end(), [&ref](const Arc& a, const Arc& b) {
        return ref.position(a.from) < ref.position(b.from);
    });
    Dag out = g;
    for (const Arc& add : additions) {
        auto below = descendants(out, add.to);
        if (std::binary_search(below.begin(), below.end(), add.from))
            throw CycleError("covering " + g.name(y) + " -> " + g.name(z) +
                             " would create a cycle");
        out.add_arc(add.from, add.to);
    }
    return {std::move(out), std::move(additions)};
}

Dag reverse_covered_arc(const Dag& g, Arc arc) {
    if (!is_covered(g, arc))
        throw NotCoveredError("arc " + g.name(arc.from) + " -> " + g.name(arc.to) +
                              " is not covered");
    Dag out = g;
    out.remove_arc(arc.from, arc.to);
    out.add_arc(arc.to, arc.from);
    return out;
}

std::uint64_t parameter_count(const Dag& g, const CardinalityMap& cards) {
    if (cards.size() != g.node_count())
        throw NodeSetMismatchError("cardinality map does not cover the node set");
    const int n = g.node_count();
    std::uint64_t total = 0;
    for (int b = 0; b < n; ++b) {
        std::uint64_t prod = 1;
        for (int a = 0; a < n; ++a)
            if (g.has_arc(a, b)) prod *= cards.at(a);
        total += prod * (cards.at(b) - 1);
    }
    return total;
}

bool equivalent(const Dag& g, const Dag& h) {
    if (!g.same_node_set(h)) throw NodeSetMismatchError("equivalence over different node sets");
    const int n = g.node_count();
    auto adjacent = [](const Dag& d, int a, int b) { return d.has_arc(a, b) || d.has_arc(b, a); };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (adjacent(g, a, b) != adjacent(h, a, b)) return false;
    // Shared skeleton; compare unshielded colliders.
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (a == c || b == c || adjacent(g, a, b)) continue;
                const bool vg = g.has_arc(a, c) && g.has_arc(b, c);
                const bool vh = h.has_arc(a, c) && h.has_arc(b, c);
                if (vg != vh) return false;
            }
    return true;
}

}  // namespace dagcons
