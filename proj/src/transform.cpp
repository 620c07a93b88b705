#include "dagcons/transform.hpp"

#include <algorithm>

#include "dagcons/consensus.hpp"
#include "dagcons/mdi.hpp"

namespace dagcons {

namespace {

ConsensusInstance single_dag_instance(const Dag& g) {
    return ConsensusInstance({g}, CardinalityMap::uniform(g.node_count(), 2));
}

}  // namespace

TransformTrace g2h(const Dag& g, const Dag& h) {
    if (!g.same_node_set(h)) throw NodeSetMismatchError("g and h are over different node sets");
    if (!verify_imap(h, single_dag_instance(g)))
        throw NotAnIMapError("target is not an independence map of the source");

    const NodeOrder alpha =
        construct_beta(h, NodeOrder::identity(h.node_count()), TieBreak::corrected());

    StepLog log;
    Dag w = method_b2(g, alpha, TieBreak::corrected(), &log);

    TransformTrace tr{g, h, {}};
    for (const Step& s : log.steps) {
        if (s.kind == Step::Kind::add)
            tr.steps.push_back({TransformStep::Kind::add, {s.a, s.b}});
        else if (s.kind == Step::Kind::reverse)
            tr.steps.push_back({TransformStep::Kind::reverse_covered, {s.a, s.b}});
    }

    // The minimal map relative to an ordering consistent with h is a
    // subgraph of h; the remaining arcs are plain additions.
    std::vector<Arc> missing;
    for (const Arc& arc : h.arcs()) {
        if (w.has_arc(arc.from, arc.to)) continue;
        if (w.has_arc(arc.to, arc.from))
            throw Error("internal: percolated graph is not a subgraph of the target");
        missing.push_back(arc);
    }
    std::sort(missing.begin(), missing.end(), [&alpha](const Arc& a, const Arc& b) {
        return std::pair(alpha.position(a.to), alpha.position(a.from)) <
               std::pair(alpha.position(b.to), alpha.position(b.from));
    });
    for (const Arc& arc : missing) {
        w.add_arc(arc.from, arc.to);
        tr.steps.push_back({TransformStep::Kind::add, arc});
    }
    if (!(w == h)) throw Error("internal: transformation did not reach the target");
    return tr;
}

TraceValidation validate_trace(const TransformTrace& tr, const Dag& h) {
    auto fail = [](int step, std::string reason) {
        return TraceValidation{false, step, std::move(reason)};
    };
    if (!tr.start.same_node_set(h)) return fail(0, "node set mismatch");

    auto imap_of = [&h](const Dag& intermediate) {
        return verify_imap(h, single_dag_instance(intermediate));
    };

    Dag cur = tr.start;
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const TransformStep& s = tr.steps[i];
        const int step = static_cast<int>(i);
        const Arc& arc = s.arc;
        if (arc.from < 0 || arc.from >= cur.node_count() || arc.to < 0 ||
            arc.to >= cur.node_count() || arc.from == arc.to)
            return fail(step, "malformed arc");
        if (s.kind == TransformStep::Kind::add) {
            if (cur.has_arc(arc.from, arc.to)) return fail(step, "arc already present");
            cur.add_arc(arc.from, arc.to);
            if (!cur.is_acyclic()) return fail(step, "addition created a cycle");
        } else {
            if (!cur.has_arc(arc.from, arc.to)) return fail(step, "arc to reverse is missing");
            if (!is_covered(cur, arc)) return fail(step, "reversed arc is not covered");
            cur.remove_arc(arc.from, arc.to);
            cur.add_arc(arc.to, arc.from);
            if (!cur.is_acyclic()) return fail(step, "reversal created a cycle");
        }
        if (!imap_of(cur)) return fail(step, "target stopped being an independence map");
    }
    if (!(cur == h)) return fail(static_cast<int>(tr.steps.size()), "end state differs from target");
    if (!(tr.end == h)) return fail(static_cast<int>(tr.steps.size()), "recorded end state differs");
    return {};
}

}  // namespace dagcons
