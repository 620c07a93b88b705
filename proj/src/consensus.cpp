#include "dagcons/consensus.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>

#include "dagcons/mdi.hpp"
#include "dagcons/separation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dagcons {

ConsensusInstance::ConsensusInstance(std::vector<Dag> dags_, CardinalityMap cards_,
                                     std::optional<std::uint64_t> bound_)
    : dags(std::move(dags_)), cards(std::move(cards_)), bound(bound_) {
    if (dags.empty()) throw Error("instance needs at least one DAG");
    for (const Dag& d : dags)
        if (!d.same_node_set(dags.front()))
            throw NodeSetMismatchError("instance DAGs have different node sets");
    if (cards.size() != dags.front().node_count())
        throw NodeSetMismatchError("cardinality map does not cover the node set");
    if (bound && *bound < 1) throw Error("bound must be positive");
}

ConsensusResult heuristic_consensus(const ConsensusInstance& inst, const NodeOrder& alpha) {
    const Dag& first = inst.dags.front();
    if (alpha.size() != first.node_count())
        throw NodeSetMismatchError("ordering does not cover the node set");
    Dag h(first.node_count(), first.names());
    for (const Dag& g : inst.dags) {
        Dag mapped = method_b2(g, alpha, TieBreak::corrected());
        for (const Arc& arc : mapped.arcs())
            if (!h.has_arc(arc.from, arc.to)) h.add_arc(arc.from, arc.to);
    }
    assert(h.is_acyclic());  // every summand is consistent with alpha
    return {h, parameter_count(h, inst.cards), NodeOrder(alpha)};
}

bool verify_imap(const Dag& g, const ConsensusInstance& inst) {
    if (!g.same_node_set(inst.dags.front()))
        throw NodeSetMismatchError("candidate is over a different node set");
    const int n = g.node_count();
    const NodeOrder alpha = construct_beta(g, NodeOrder::identity(n), TieBreak::corrected());
    SeparationQuery q;
    for (int p = 0; p < n; ++p) {
        const NodeId a = alpha.node_at(p);
        q.x = {a};
        q.z = g.parents(a);
        q.y.clear();
        std::vector<char> is_parent(static_cast<std::size_t>(n), 0);
        for (NodeId v : q.z) is_parent[v] = 1;
        for (int i = 0; i < p; ++i) {
            NodeId v = alpha.node_at(i);
            if (!is_parent[v]) q.y.push_back(v);
        }
        if (q.y.empty()) continue;
        for (const Dag& gi : inst.dags)
            if (!d_separated(gi, q)) return false;
    }
    return true;
}

bool verify_instance(const Dag& g, const ConsensusInstance& inst) {
    if (!inst.bound) throw MissingBoundError("instance carries no parameter bound");
    return verify_imap(g, inst) && parameter_count(g, inst.cards) <= *inst.bound;
}

namespace {

struct EnumBest {
    std::uint64_t params = std::numeric_limits<std::uint64_t>::max();
    std::vector<Dag> argmin;

    void offer(std::uint64_t p, Dag d) {
        if (p < params) {
            params = p;
            argmin.clear();
        }
        if (p == params) argmin.push_back(std::move(d));
    }

    void merge(EnumBest&& o) {
        if (o.params < params) {
            params = o.params;
            argmin = std::move(o.argmin);
        } else if (o.params == params) {
            for (Dag& d : o.argmin) argmin.push_back(std::move(d));
        }
    }
};

// Decodes one cell of the enumeration space: every unordered node pair is
// absent, forward or backward.
bool decode_candidate(std::uint64_t code, const std::vector<std::pair<int, int>>& pairs, int n,
                      std::vector<std::uint8_t>& adj) {
    std::fill(adj.begin(), adj.end(), 0);
    for (const auto& [a, b] : pairs) {
        const int digit = static_cast<int>(code % 3);
        code /= 3;
        if (digit == 1) adj[static_cast<std::size_t>(a) * n + b] = 1;
        if (digit == 2) adj[static_cast<std::size_t>(b) * n + a] = 1;
    }
    // Kahn acyclicity over the raw matrix.
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (adj[static_cast<std::size_t>(a) * n + b]) ++indeg[b];
    std::vector<int> stack;
    int seen = 0;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int b = 0; b < n; ++b)
            if (adj[static_cast<std::size_t>(v) * n + b] && --indeg[b] == 0) stack.push_back(b);
    }
    return seen == n;
}

std::vector<ConsensusResult> exact_consensus_impl(const ConsensusInstance& inst, int limit,
                                                  bool parallel) {
    const Dag& first = inst.dags.front();
    const int n = first.node_count();
    if (n > limit)
        throw SizeLimitError("exhaustive consensus limited to " + std::to_string(limit) +
                             " nodes");

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;

    const int chunks = parallel ? 64 : 1;
    std::vector<EnumBest> partial(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int c = 0; c < chunks; ++c) {
        const std::uint64_t lo = total * c / chunks;
        const std::uint64_t hi = total * (c + 1) / chunks;
        std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (std::uint64_t code = lo; code < hi; ++code) {
            if (!decode_candidate(code, pairs, n, adj)) continue;
            Dag cand = Dag::from_matrix(first.names(), adj);
            if (!verify_imap(cand, inst)) continue;
            const std::uint64_t count = parameter_count(cand, inst.cards);
            partial[c].offer(count, std::move(cand));
        }
    }

    EnumBest best;
    for (auto& p : partial) best.merge(std::move(p));
    std::sort(best.argmin.begin(), best.argmin.end(),
              [](const Dag& a, const Dag& b) { return a.arcs() < b.arcs(); });

    std::vector<ConsensusResult> out;
    out.reserve(best.argmin.size());
    for (Dag& d : best.argmin) out.push_back({std::move(d), best.params, std::nullopt});
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::pair<int, int>> neighborhood_swaps(int n, SearchConfig::Neighborhood nb) {
    std::vector<std::pair<int, int>> swaps;
    if (nb == SearchConfig::Neighborhood::adjacent_swap) {
        for (int i = 0; i + 1 < n; ++i) swaps.push_back({i, i + 1});
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) swaps.push_back({i, j});
    }
    return swaps;
}

struct Climb {
    std::vector<NodeId> perm;
    std::uint64_t value = 0;
    std::vector<std::uint64_t> accepted;
};

std::uint64_t objective(const ConsensusInstance& inst, const std::vector<NodeId>& perm) {
    return heuristic_consensus(inst, NodeOrder(perm)).params;
}

// Steepest-descent sweeps; strictly improving moves only, first best wins.
Climb hill_climb_from(const ConsensusInstance& inst, std::vector<NodeId> perm,
                      const std::vector<std::pair<int, int>>& swaps, long max_sweeps) {
    Climb c;
    c.perm = std::move(perm);
    c.value = objective(inst, c.perm);
    c.accepted.push_back(c.value);
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        std::uint64_t best_val = c.value;
        int best_swap = -1;
        for (std::size_t s = 0; s < swaps.size(); ++s) {
            std::swap(c.perm[swaps[s].first], c.perm[swaps[s].second]);
            const std::uint64_t val = objective(inst, c.perm);
            std::swap(c.perm[swaps[s].first], c.perm[swaps[s].second]);
            if (val < best_val) {
                best_val = val;
                best_swap = static_cast<int>(s);
            }
        }
        if (best_swap < 0) break;
        std::swap(c.perm[swaps[best_swap].first], c.perm[swaps[best_swap].second]);
        c.value = best_val;
        c.accepted.push_back(best_val);
    }
    return c;
}

Climb anneal(const ConsensusInstance& inst, std::vector<NodeId> perm,
             const std::vector<std::pair<int, int>>& swaps, int iters, std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed, 0x5aULL));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, swaps.empty() ? 0 : swaps.size() - 1);

    Climb cur;
    cur.perm = std::move(perm);
    cur.value = objective(inst, cur.perm);
    cur.accepted.push_back(cur.value);
    Climb best = cur;
    if (swaps.empty()) return best;

    double t = std::max(1.0, 0.1 * static_cast<double>(cur.value));
    const double t_end = std::max(1e-6, 1e-3 * t);
    const double cool = iters > 1 ? std::pow(t_end / t, 1.0 / iters) : 1.0;
    for (int it = 0; it < iters; ++it) {
        const auto [i, j] = swaps[pick(rng)];
        std::swap(cur.perm[i], cur.perm[j]);
        const std::uint64_t val = objective(inst, cur.perm);
        const double delta = static_cast<double>(val) - static_cast<double>(cur.value);
        if (delta <= 0.0 || unit(rng) < std::exp(-delta / t)) {
            cur.value = val;
            cur.accepted.push_back(val);
            if (val < best.value) {
                best.perm = cur.perm;
                best.value = val;
            }
        } else {
            std::swap(cur.perm[i], cur.perm[j]);
        }
        t *= cool;
    }
    best.accepted = cur.accepted;
    return best;
}

ConsensusResult search_ordering_impl(const ConsensusInstance& inst, const SearchConfig& cfg,
                                     SearchStats* stats, bool parallel) {
    if (cfg.max_iters < 1) throw Error("max_iters must be at least 1");
    const int n = inst.dags.front().node_count();
    const auto swaps = neighborhood_swaps(n, cfg.neighborhood);
    std::vector<NodeId> identity(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) identity[i] = i;

    Climb winner;
    switch (cfg.strategy) {
        case SearchConfig::Strategy::hill_climb:
            winner = hill_climb_from(inst, identity, swaps, cfg.max_iters);
            break;
        case SearchConfig::Strategy::annealing:
            winner = anneal(inst, identity, swaps, cfg.max_iters, cfg.seed);
            break;
        case SearchConfig::Strategy::restarts: {
            const int restarts = cfg.max_iters;
            std::vector<Climb> runs(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
            for (int r = 0; r < restarts; ++r) {
                std::vector<NodeId> start = identity;
                if (r > 0) {
                    std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
                    std::shuffle(start.begin(), start.end(), rng);
                }
                runs[r] = hill_climb_from(inst, std::move(start), swaps,
                                          std::numeric_limits<long>::max());
            }
            std::size_t best = 0;
            for (std::size_t r = 1; r < runs.size(); ++r)
                if (runs[r].value < runs[best].value) best = r;
            winner = std::move(runs[best]);
            break;
        }
    }
    if (stats) stats->accepted_objectives = winner.accepted;
    ConsensusResult res = heuristic_consensus(inst, NodeOrder(winner.perm));
    assert(res.params == winner.value);
    return res;
}

}  // namespace

std::vector<ConsensusResult> exact_consensus(const ConsensusInstance& inst, int limit) {
    return exact_consensus_impl(inst, limit, true);
}

std::vector<ConsensusResult> exact_consensus_serial(const ConsensusInstance& inst, int limit) {
    return exact_consensus_impl(inst, limit, false);
}

ConsensusResult search_ordering(const ConsensusInstance& inst, const SearchConfig& cfg,
                                SearchStats* stats) {
    return search_ordering_impl(inst, cfg, stats, true);
}

ConsensusResult search_ordering_serial(const ConsensusInstance& inst, const SearchConfig& cfg,
                                       SearchStats* stats) {
    return search_ordering_impl(inst, cfg, stats, false);
}

ConsensusInstance reduce_fas_to_consensus(
    const std::vector<std::pair<std::string, std::string>>& arcs,
    std::optional<std::uint64_t> bound) {
    std::vector<std::string> names;
    std::vector<std::uint64_t> cards;
    std::vector<char> is_gadget;
    auto find = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    };
    auto intern_endpoint = [&](const std::string& name) -> NodeId {
        int i = find(name);
        if (i >= 0) {
            if (is_gadget[i]) throw Error("digraph node name collides with a gadget node: " + name);
            return i;
        }
        names.push_back(name);
        cards.push_back(9);
        is_gadget.push_back(0);
        return static_cast<NodeId>(names.size() - 1);
    };
    auto intern_gadget = [&](const std::string& name, std::uint64_t card) -> NodeId {
        if (find(name) >= 0) throw Error("gadget node name collision: " + name);
        names.push_back(name);
        cards.push_back(card);
        is_gadget.push_back(1);
        return static_cast<NodeId>(names.size() - 1);
    };

    struct Gadget {
        NodeId vi, a, b, c, d, e, f, g, vj;
    };
    std::vector<Gadget> gadgets;
    for (const auto& [tail, head] : arcs) {
        if (tail == head) throw Error("self-loop " + tail + " -> " + head + " is not reducible");
        for (const auto& other : gadgets)
            if (names[other.vi] == tail && names[other.vj] == head)
                throw DuplicateArcError("duplicate digraph arc " + tail + " -> " + head);
        Gadget gd;
        gd.vi = intern_endpoint(tail);
        gd.vj = intern_endpoint(head);
        const std::string suffix = "_" + tail + "_" + head;
        gd.a = intern_gadget("A" + suffix, 9);
        gd.b = intern_gadget("B" + suffix, 2);
        gd.c = intern_gadget("C" + suffix, 3);
        gd.d = intern_gadget("D" + suffix, 9);
        gd.e = intern_gadget("E" + suffix, 2);
        gd.f = intern_gadget("F" + suffix, 2);
        gd.g = intern_gadget("G" + suffix, 9);
        gadgets.push_back(gd);
    }

    const int n = static_cast<int>(names.size());
    Dag c1(n, names), c2(n, names), c3(n, names);
    for (const Gadget& gd : gadgets) {
        c1.add_arc(gd.a, gd.b);
        c1.add_arc(gd.vi, gd.b);
        c1.add_arc(gd.b, gd.c);
        c1.add_arc(gd.d, gd.e);
        c1.add_arc(gd.g, gd.e);
        c1.add_arc(gd.e, gd.f);
        c1.add_arc(gd.f, gd.vj);

        c2.add_arc(gd.b, gd.c);
        c2.add_arc(gd.f, gd.c);

        c3.add_arc(gd.c, gd.f);
        c3.add_arc(gd.e, gd.f);
    }
    assert(c1.is_acyclic() && c2.is_acyclic() && c3.is_acyclic());
    return ConsensusInstance({std::move(c1), std::move(c2), std::move(c3)},
                             CardinalityMap(std::move(cards)), bound);
}

std::size_t independence_count(const Dag& g, int limit) {
    return all_separation_statements(g, limit).size();
}

}  // namespace dagcons
