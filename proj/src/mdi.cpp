#include "dagcons/mdi.hpp"

#include <algorithm>
#include <cassert>

#include "dagcons/separation.hpp"

namespace dagcons {

namespace {

void check_inputs(const Dag& g, const NodeOrder& alpha) {
    if (alpha.size() != g.node_count())
        throw NodeSetMismatchError("ordering does not cover the node set");
}

// Percolation state shared by the four methods: the working graph, the
// current beta as a position array pair, and an optional step log.
struct Percolator {
    Dag w;
    const NodeOrder& alpha;
    std::vector<NodeId> beta;  // beta[pos] = node
    std::vector<int> posb;     // posb[node] = pos
    StepLog* log;

    Percolator(const Dag& g, const NodeOrder& alpha_, std::vector<NodeId> beta0, StepLog* log_)
        : w(g), alpha(alpha_), beta(std::move(beta0)), log(log_) {
        posb.assign(beta.size(), 0);
        for (std::size_t i = 0; i < beta.size(); ++i) posb[beta[i]] = static_cast<int>(i);
        if (log) {
            log->initial_beta = beta;
            log->steps.clear();
        }
    }

    void record(Step::Kind kind, NodeId a, NodeId b) {
        if (log) log->steps.push_back({kind, a, b});
    }

    void swap_at(int left_pos) {
        NodeId u = beta[left_pos], v = beta[left_pos + 1];
        beta[left_pos] = v;
        beta[left_pos + 1] = u;
        posb[u] = left_pos + 1;
        posb[v] = left_pos;
    }

    // Covering keeps the working graph consistent with beta: every added arc
    // runs from a beta-earlier to a beta-later node, so no cycle can appear.
    void cover_and_reverse(NodeId y, NodeId z) {
        const int n = w.node_count();
        std::vector<NodeId> new_parents_of_z, new_parents_of_y;
        for (int x = 0; x < n; ++x) {
            if (x == y || x == z) continue;
            const bool pa_y = w.has_arc(x, y), pa_z = w.has_arc(x, z);
            if (pa_y && !pa_z) new_parents_of_z.push_back(x);
            if (pa_z && !pa_y) new_parents_of_y.push_back(x);
        }
        std::vector<Arc> additions;
        for (NodeId x : new_parents_of_z) additions.push_back({x, z});
        for (NodeId x : new_parents_of_y) additions.push_back({x, y});
        std::sort(additions.begin(), additions.end(), [this](const Arc& a, const Arc& b) {
            return alpha.position(a.from) < alpha.position(b.from);
        });
        for (const Arc& add : additions) {
            assert(posb[add.from] < posb[add.to]);
            w.add_arc(add.from, add.to);
            record(Step::Kind::add, add.from, add.to);
        }
        assert(is_covered(w, {y, z}));
        w.remove_arc(y, z);
        w.add_arc(z, y);
        record(Step::Kind::reverse, y, z);
    }

    // Swap steps are logged as (left node, right node) before the
    // interchange, so a covered reversal is always followed by the swap of
    // the same ordered pair.
    // Method B inner loop: move y rightward past alpha-earlier right
    // neighbours, covering and reversing y -> z when the arc exists.
    void percolate_right(NodeId y) {
        const int n = static_cast<int>(beta.size());
        while (posb[y] + 1 < n) {
            NodeId z = beta[posb[y] + 1];
            if (alpha.position(z) >= alpha.position(y)) break;
            if (w.has_arc(y, z)) cover_and_reverse(y, z);
            swap_at(posb[y]);
            record(Step::Kind::swap_nodes, y, z);
        }
    }

    // Method A inner loop: move y leftward past alpha-later left neighbours,
    // covering and reversing z -> y when the arc exists.
    void percolate_left(NodeId y) {
        while (posb[y] > 0) {
            NodeId z = beta[posb[y] - 1];
            if (alpha.position(z) <= alpha.position(y)) break;
            if (w.has_arc(z, y)) cover_and_reverse(z, y);
            swap_at(posb[y] - 1);
            record(Step::Kind::swap_nodes, z, y);
        }
    }
};

}  // namespace

NodeOrder construct_beta(const Dag& g, const NodeOrder& alpha, const TieBreak& tie) {
    check_inputs(g, alpha);
    const int n = g.node_count();
    for (NodeId v : tie.legacy_sink_preference)
        if (v < 0 || v >= n) throw Error("sink preference references a node out of range");

    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    std::vector<int> outdeg(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.has_arc(a, b)) ++outdeg[a];

    std::vector<NodeId> beta;
    beta.reserve(static_cast<std::size_t>(n));
    for (int round = 0; round < n; ++round) {
        NodeId pick = -1;
        if (tie.mode == TieBreak::Mode::corrected) {
            for (int v = 0; v < n; ++v)
                if (alive[v] && outdeg[v] == 0 &&
                    (pick == -1 || alpha.position(v) > alpha.position(pick)))
                    pick = v;
        } else {
            for (NodeId v : tie.legacy_sink_preference)
                if (alive[v] && outdeg[v] == 0) {
                    pick = v;
                    break;
                }
            if (pick == -1)
                for (int v = 0; v < n; ++v)
                    if (alive[v] && outdeg[v] == 0) pick = v;  // highest index wins
        }
        assert(pick != -1);

        beta.insert(beta.begin(), pick);
        // Bubble the new node rightward while it is not a parent of its right
        // neighbour in g and sits left of it in alpha.
        std::size_t i = 0;
        while (i + 1 < beta.size()) {
            NodeId b = beta[i + 1];
            if (!g.has_arc(pick, b) && alpha.position(pick) > alpha.position(b)) {
                std::swap(beta[i], beta[i + 1]);
                ++i;
            } else {
                break;
            }
        }

        alive[pick] = 0;
        for (int x = 0; x < n; ++x)
            if (alive[x] && g.has_arc(x, pick)) --outdeg[x];
    }
    return NodeOrder(std::move(beta));
}

Dag method_a(const Dag& g, const NodeOrder& alpha, const TieBreak& tie, StepLog* log) {
    check_inputs(g, alpha);
    Percolator p(g, alpha, construct_beta(g, alpha, tie).perm(), log);
    const int n = g.node_count();
    for (;;) {
        NodeId y = -1;
        for (int i = 1; i < n; ++i)
            if (alpha.position(p.beta[i - 1]) > alpha.position(p.beta[i])) {
                y = p.beta[i];
                break;
            }
        if (y == -1) break;  // beta equals alpha
        p.percolate_left(y);
    }
    return p.w;
}

Dag method_b(const Dag& g, const NodeOrder& alpha, const TieBreak& tie, StepLog* log) {
    check_inputs(g, alpha);
    Percolator p(g, alpha, construct_beta(g, alpha, tie).perm(), log);
    const int n = g.node_count();
    for (;;) {
        NodeId y = -1;
        for (int i = 0; i + 1 < n; ++i)
            if (alpha.position(p.beta[i + 1]) < alpha.position(p.beta[i])) {
                y = p.beta[i];
                break;
            }
        if (y == -1) break;
        p.percolate_right(y);
    }
    return p.w;
}

Dag method_a2(const Dag& g, const NodeOrder& alpha, const TieBreak& tie, StepLog* log) {
    check_inputs(g, alpha);
    Percolator p(g, alpha, construct_beta(g, alpha, tie).perm(), log);
    const std::vector<NodeId> order = p.beta;  // percolate in initial beta order
    for (NodeId y : order) p.percolate_left(y);
    assert(p.beta == alpha.perm());
    return p.w;
}

Dag method_b2(const Dag& g, const NodeOrder& alpha, const TieBreak& tie, StepLog* log) {
    check_inputs(g, alpha);
    Percolator p(g, alpha, construct_beta(g, alpha, tie).perm(), log);
    for (int i = alpha.size() - 1; i >= 0; --i) p.percolate_right(alpha.node_at(i));
    assert(p.beta == alpha.perm());
    return p.w;
}

Dag mdi_bruteforce(const Dag& g, const NodeOrder& alpha, int limit) {
    check_inputs(g, alpha);
    const int n = g.node_count();
    if (n > limit)
        throw SizeLimitError("brute-force characterization limited to " + std::to_string(limit) +
                             " nodes");

    Dag out(n, g.names());
    SeparationQuery q;
    for (int p = 0; p < n; ++p) {
        const NodeId a = alpha.node_at(p);
        std::vector<NodeId> pre;
        for (int i = 0; i < p; ++i) pre.push_back(alpha.node_at(i));

        std::vector<NodeId> found;
        bool done = false;
        // Subsets by increasing size, lexicographic within a size; the
        // minimal subset is unique, so the scan order only affects runtime.
        for (int k = 0; k <= p && !done; ++k) {
            std::vector<int> comb(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) comb[i] = i;
            for (;;) {
                q.x = {a};
                q.y.clear();
                q.z.clear();
                std::vector<char> chosen(pre.size(), 0);
                for (int i : comb) chosen[i] = 1;
                for (std::size_t i = 0; i < pre.size(); ++i)
                    (chosen[i] ? q.z : q.y).push_back(pre[i]);
                if (q.y.empty() || d_separated(g, q)) {
                    found = q.z;
                    done = true;
                    break;
                }
                // next combination
                int i = k - 1;
                while (i >= 0 && comb[i] == p - k + i) --i;
                if (i < 0) break;
                ++comb[i];
                for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
        for (NodeId x : found) out.add_arc(x, a);
    }
    return out;
}

Dag mdi_iamb(const Dag& g, const NodeOrder& alpha) {
    check_inputs(g, alpha);
    const int n = g.node_count();
    Dag out(n, g.names());
    SeparationQuery q;
    for (int p = 0; p < n; ++p) {
        const NodeId a = alpha.node_at(p);
        std::vector<NodeId> pre;
        for (int i = 0; i < p; ++i) pre.push_back(alpha.node_at(i));
        std::vector<char> in_pa(static_cast<std::size_t>(n), 0);
        std::vector<NodeId> pa;

        // Grow: add any remaining predecessor dependent on a given the
        // current set, scanning in ascending alpha position.
        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeId b : pre) {
                if (in_pa[b]) continue;
                q.x = {a};
                q.y = {b};
                q.z = pa;
                if (!d_separated(g, q)) {
                    in_pa[b] = 1;
                    pa.push_back(b);
                    changed = true;
                    break;
                }
            }
        }
        std::sort(pa.begin(), pa.end(),
                  [&alpha](NodeId u, NodeId v) { return alpha.position(u) < alpha.position(v); });

        // Shrink: drop members separated from a given the rest.
        for (NodeId b : pre) {
            if (!in_pa[b]) continue;
            q.x = {a};
            q.y = {b};
            q.z.clear();
            for (NodeId c : pa)
                if (c != b) q.z.push_back(c);
            if (d_separated(g, q)) {
                in_pa[b] = 0;
                pa.erase(std::find(pa.begin(), pa.end(), b));
            }
        }
        for (NodeId x : pa) out.add_arc(x, a);
    }
    return out;
}

}  // namespace dagcons
