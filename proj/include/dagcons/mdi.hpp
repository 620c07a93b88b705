#pragma once

#include <vector>

#include "dagcons/dag.hpp"

namespace dagcons {

/// Sink selection rule used when constructing the order beta.
///
/// corrected: each round takes the sink of the residual graph that is
/// rightmost in alpha; this is the choice that makes the percolation methods
/// return the minimal directed independence map.
///
/// legacy_trace: reproduces the underdetermined original behaviour with a
/// deterministic rule (highest node index among current sinks), optionally
/// pinned to an explicit preference list so a specific published failing run
/// can be replayed exactly.
struct TieBreak {
    enum class Mode { corrected, legacy_trace };

    Mode mode = Mode::corrected;
    std::vector<NodeId> legacy_sink_preference;

    static TieBreak corrected() { return {Mode::corrected, {}}; }
    static TieBreak legacy() { return {Mode::legacy_trace, {}}; }
    static TieBreak legacy_with(std::vector<NodeId> preference) {
        return {Mode::legacy_trace, std::move(preference)};
    }
};

struct Step {
    enum class Kind { add, reverse, swap_nodes };
    Kind kind;
    NodeId a;
    NodeId b;
    friend bool operator==(const Step&, const Step&) = default;
};

/// Machine-readable percolation log: the starting beta plus every arc
/// addition, covered reversal and beta interchange in execution order. A
/// reverse step is always followed by the swap_nodes step of the same pair.
struct StepLog {
    std::vector<NodeId> initial_beta;
    std::vector<Step> steps;
};

/// Returns an ordering consistent with g and as close to alpha as possible:
/// sinks of the residual graph are prepended and then bubbled rightward past
/// neighbours they are not parents of while they sit left of their alpha
/// position.
NodeOrder construct_beta(const Dag& g, const NodeOrder& alpha, const TieBreak& tie);

/// The four percolation schemes. All return the same DAG for a given tie
/// mode; with the corrected tie-break that DAG is the minimal directed
/// independence map of g relative to alpha.
Dag method_a(const Dag& g, const NodeOrder& alpha, const TieBreak& tie, StepLog* log = nullptr);
Dag method_b(const Dag& g, const NodeOrder& alpha, const TieBreak& tie, StepLog* log = nullptr);
Dag method_a2(const Dag& g, const NodeOrder& alpha, const TieBreak& tie, StepLog* log = nullptr);
Dag method_b2(const Dag& g, const NodeOrder& alpha, const TieBreak& tie, StepLog* log = nullptr);

/// Direct evaluation of the characterization: the parent set of each node A
/// is the unique inclusion-minimal subset X of A's alpha-predecessors with
/// A separated from the remaining predecessors given X. Exponential; guarded
/// by `limit`.
Dag mdi_bruteforce(const Dag& g, const NodeOrder& alpha, int limit = 12);

/// Incremental-association Markov boundary construction of the same map:
/// grow dependent predecessors, then shrink spurious ones. O(a n^3) overall.
Dag mdi_iamb(const Dag& g, const NodeOrder& alpha);

}  // namespace dagcons
