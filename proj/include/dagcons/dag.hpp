#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dagcons/errors.hpp"

namespace dagcons {

using NodeId = int;

struct Arc {
    NodeId from = -1;
    NodeId to = -1;
    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Total order (permutation) of the node set. Positions are queryable in
/// constant time through the inverse array.
class NodeOrder {
public:
    explicit NodeOrder(std::vector<NodeId> perm);
    static NodeOrder identity(int n);

    int size() const { return static_cast<int>(perm_.size()); }
    NodeId node_at(int pos) const { return perm_[pos]; }
    int position(NodeId v) const { return pos_[v]; }
    const std::vector<NodeId>& perm() const { return perm_; }

    friend bool operator==(const NodeOrder&, const NodeOrder&) = default;

private:
    std::vector<NodeId> perm_;
    std::vector<int> pos_;
};

/// Node -> number of states of the corresponding random variable (>= 2).
class CardinalityMap {
public:
    explicit CardinalityMap(std::vector<std::uint64_t> r);
    static CardinalityMap uniform(int n, std::uint64_t r);

    int size() const { return static_cast<int>(r_.size()); }
    std::uint64_t at(NodeId v) const { return r_[v]; }

    friend bool operator==(const CardinalityMap&, const CardinalityMap&) = default;

private:
    std::vector<std::uint64_t> r_;
};

/// Directed acyclic graph over a fixed, labelled node set with
/// adjacency-matrix semantics.
///
/// Validated construction (the `Dag(n, names)` / `from_matrix` /
/// `construct_dag` entry points) guarantees acyclicity. `add_arc` and
/// `remove_arc` enforce the self-arc and duplicate invariants only; the
/// algorithms that mutate working copies maintain acyclicity themselves and
/// the public operations recheck it where the contract demands.
class Dag {
public:
    Dag(int n, std::vector<std::string> names);
    static Dag from_matrix(std::vector<std::string> names, std::vector<std::uint8_t> adj);

    int node_count() const { return n_; }
    int arc_count() const { return arc_count_; }
    bool has_arc(NodeId a, NodeId b) const { return adj_[idx(a, b)] != 0; }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(NodeId v) const { return names_[v]; }
    std::optional<NodeId> index_of(std::string_view name) const;

    std::vector<NodeId> parents(NodeId b) const;
    std::vector<NodeId> children(NodeId a) const;
    /// All arcs sorted by (from, to).
    std::vector<Arc> arcs() const;

    void add_arc(NodeId a, NodeId b);
    void remove_arc(NodeId a, NodeId b);

    bool is_acyclic() const;
    std::optional<std::vector<NodeId>> topological_order() const;

    /// Same size and identical labels in the same index positions.
    bool same_node_set(const Dag& o) const;

    friend bool operator==(const Dag& a, const Dag& b) {
        return a.names_ == b.names_ && a.adj_ == b.adj_;
    }

private:
    std::size_t idx(NodeId a, NodeId b) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(b);
    }

    int n_ = 0;
    int arc_count_ = 0;
    std::vector<std::string> names_;
    std::vector<std::uint8_t> adj_;
};

std::vector<std::string> default_node_names(int n);

/// Builds a validated DAG; rejects self-arcs, duplicates and cycles.
Dag construct_dag(int n, const std::vector<Arc>& arcs, std::vector<std::string> names);

/// True iff every arc of g goes from an earlier to a later position in order.
bool is_consistent(const Dag& g, const NodeOrder& order);

/// All nodes reachable from a by descending routes, a itself included.
/// Returned sorted ascending.
std::vector<NodeId> descendants(const Dag& g, NodeId a);

/// True iff Pa(arc.from) = Pa(arc.to) \ {arc.from}.
bool is_covered(const Dag& g, Arc arc);

/// Adds the smallest set of arcs making `arc` covered. Additions are ordered
/// by ascending position of the new parent in `ref`. Throws CycleError if an
/// addition would create a cycle, which cannot happen in the percolation
/// context the operation is designed for.
std::pair<Dag, std::vector<Arc>> cover_arc(const Dag& g, Arc arc, const NodeOrder& ref);

/// Replaces a covered arc by its reversal; the separation statements of the
/// graph are unchanged.
Dag reverse_covered_arc(const Dag& g, Arc arc);

/// Sum over nodes B of (product of r_A over parents A) * (r_B - 1).
std::uint64_t parameter_count(const Dag& g, const CardinalityMap& cards);

/// Markov equivalence: identical skeletons and identical unshielded
/// colliders.
bool equivalent(const Dag& g, const Dag& h);

}  // namespace dagcons
