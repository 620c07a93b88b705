#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "dagcons/dag.hpp"

namespace dagcons {

/// X, Y, Z must be pairwise disjoint; X and Y non-empty.
struct SeparationQuery {
    std::vector<NodeId> x;
    std::vector<NodeId> y;
    std::vector<NodeId> z;
};

/// Decides X separated from Y given Z by reachability over
/// (node, entry-direction) states; one query is linear in the arc count.
bool d_separated(const Dag& g, const SeparationQuery& q);

/// Independent oracle: X and Y disconnected in the moralized induced subgraph
/// over the ancestors of X u Y u Z after deleting Z.
bool d_separated_oracle(const Dag& g, const SeparationQuery& q);

/// Batch kernel over one graph; parallel across queries.
std::vector<char> d_separated_many(const Dag& g, const std::vector<SeparationQuery>& qs);
/// Serial reference for the batch kernel.
std::vector<char> d_separated_many_serial(const Dag& g, const std::vector<SeparationQuery>& qs);

/// Canonical singleton statement a separated from b given the nodes in
/// z_mask, with a < b.
struct SeparationStatement {
    NodeId a;
    NodeId b;
    std::uint32_t z_mask;
    friend bool operator==(const SeparationStatement&, const SeparationStatement&) = default;
    friend auto operator<=>(const SeparationStatement&, const SeparationStatement&) = default;
};

/// Materializes every singleton separation statement of g, sorted. Intended
/// for small n; throws SizeLimitError above `limit`.
std::vector<SeparationStatement> all_separation_statements(const Dag& g, int limit = 7);

}  // namespace dagcons
