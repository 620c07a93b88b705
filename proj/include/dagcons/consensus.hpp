#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dagcons/dag.hpp"

namespace dagcons {

/// m DAGs over a shared labelled node set, the variable cardinalities, and
/// an optional parameter bound for the decision problem.
struct ConsensusInstance {
    std::vector<Dag> dags;
    CardinalityMap cards;
    std::optional<std::uint64_t> bound;

    ConsensusInstance(std::vector<Dag> dags_, CardinalityMap cards_,
                      std::optional<std::uint64_t> bound_ = std::nullopt);
};

struct ConsensusResult {
    Dag dag;
    std::uint64_t params;
    std::optional<NodeOrder> ordering;
};

struct SearchConfig {
    enum class Strategy { hill_climb, annealing, restarts };
    enum class Neighborhood { adjacent_swap, arbitrary_swap };

    Strategy strategy = Strategy::restarts;
    std::uint64_t seed = 0;
    /// hill_climb: neighbourhood sweeps; restarts: number of restarts;
    /// annealing: number of proposals.
    int max_iters = 100;
    Neighborhood neighborhood = Neighborhood::adjacent_swap;
};

/// Objective values in acceptance order of the reported run (the winning
/// restart when restarting).
struct SearchStats {
    std::vector<std::uint64_t> accepted_objectives;
};

/// Union of the minimal directed independence maps of the given DAGs
/// relative to alpha; the unique minimal I-map of the intersection of their
/// independence models that is consistent with alpha.
ConsensusResult heuristic_consensus(const ConsensusInstance& inst, const NodeOrder& alpha);

/// Polynomial membership check: I(g) contained in the intersection of the
/// instance models, decided through the causal list of g relative to an
/// ordering consistent with g.
bool verify_imap(const Dag& g, const ConsensusInstance& inst);

/// verify_imap plus the parameter bound; requires inst.bound.
bool verify_instance(const Dag& g, const ConsensusInstance& inst);

/// Exhaustive consensus for tiny node sets: enumerates every DAG over the
/// node set, keeps the I-maps of the instance, and returns all optima of
/// minimal parameter count (possibly pairwise non-equivalent), sorted
/// canonically. Parallel across the enumeration space.
std::vector<ConsensusResult> exact_consensus(const ConsensusInstance& inst, int limit = 5);
/// Serial reference for exact_consensus.
std::vector<ConsensusResult> exact_consensus_serial(const ConsensusInstance& inst, int limit = 5);

/// Local search over node orderings with the heuristic's parameter count as
/// objective. Deterministic for a given config; restarts run in parallel.
ConsensusResult search_ordering(const ConsensusInstance& inst, const SearchConfig& cfg,
                                SearchStats* stats = nullptr);
/// Serial reference for search_ordering.
ConsensusResult search_ordering_serial(const ConsensusInstance& inst, const SearchConfig& cfg,
                                       SearchStats* stats = nullptr);

/// Builds the three-DAG consensus instance of the feedback-arc-set reduction
/// for an arbitrary input digraph given as (tail, head) name pairs. The
/// decision bound is not derivable from the inputs and is left to the caller.
ConsensusInstance reduce_fas_to_consensus(
    const std::vector<std::pair<std::string, std::string>>& arcs,
    std::optional<std::uint64_t> bound = std::nullopt);

/// Number of singleton separation statements of g; exposes the
/// "most independences" reading of optimality next to the parameter count.
std::size_t independence_count(const Dag& g, int limit = 7);

}  // namespace dagcons
