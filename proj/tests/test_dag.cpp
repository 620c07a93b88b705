#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "testutil.hpp"

#include "dagcons/dag.hpp"
#include "dagcons/separation.hpp"

using namespace dagcons;
using testutil::dag_of;
using testutil::order_of;

TEST_CASE("construct_dag builds an empty graph") {
    Dag d = construct_dag(2, {}, {"A", "B"});
    CHECK(d.node_count() == 2);
    CHECK(d.arc_count() == 0);
    CHECK(d.is_acyclic());
}

TEST_CASE("construct_dag rejects a three-cycle") {
    CHECK_THROWS_AS(construct_dag(3, {{0, 1}, {1, 2}, {2, 0}}, {"A", "B", "C"}), CycleError);
}

TEST_CASE("construct_dag rejects duplicates, self-arcs and bad indices") {
    CHECK_THROWS_AS(construct_dag(2, {{0, 1}, {0, 1}}, {"A", "B"}), DuplicateArcError);
    CHECK_THROWS_AS(construct_dag(2, {{1, 1}}, {"A", "B"}), SelfArcError);
    CHECK_THROWS_AS(construct_dag(2, {{0, 2}}, {"A", "B"}), Error);
    CHECK_THROWS_AS(Dag(2, {"A", "A"}), DuplicateNodeError);
}

TEST_CASE("counterexample fixture matches its arc list") {
    Dag d = testutil::counterexample_dag();
    CHECK(d.arc_count() == 4);
    CHECK(d.has_arc(*d.index_of("I"), *d.index_of("K")));
    CHECK(d.has_arc(*d.index_of("J"), *d.index_of("K")));
    CHECK(d.has_arc(*d.index_of("J"), *d.index_of("L")));
    CHECK(d.has_arc(*d.index_of("L"), *d.index_of("M")));
}

TEST_CASE("is_consistent agrees with arc directions") {
    Dag chain = dag_of({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    CHECK(is_consistent(chain, order_of(chain, {"A", "B", "C"})));
    CHECK_FALSE(is_consistent(chain, order_of(chain, {"C", "B", "A"})));
    CHECK_THROWS_AS(is_consistent(chain, NodeOrder::identity(2)), NodeSetMismatchError);

    Dag cex = testutil::counterexample_dag();
    CHECK(is_consistent(cex, order_of(cex, {"J", "L", "M", "I", "K"})));
}

TEST_CASE("descendants include the node itself") {
    Dag empty = construct_dag(3, {}, {"A", "B", "C"});
    CHECK(descendants(empty, 1) == std::vector<NodeId>{1});

    Dag chain = dag_of({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    CHECK(descendants(chain, 0) == std::vector<NodeId>{0, 1, 2});

    Dag cex = testutil::counterexample_dag();
    const NodeId j = *cex.index_of("J");
    std::vector<NodeId> expected{*cex.index_of("J"), *cex.index_of("K"), *cex.index_of("L"),
                                 *cex.index_of("M")};
    std::sort(expected.begin(), expected.end());
    CHECK(descendants(cex, j) == expected);
}

TEST_CASE("descendants match an independent depth-first oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Dag g = testutil::random_dag(rng, 8, 0.35);
        for (int a = 0; a < 8; ++a) {
            std::set<NodeId> seen;
            std::vector<NodeId> stack{a};
            while (!stack.empty()) {
                NodeId v = stack.back();
                stack.pop_back();
                if (!seen.insert(v).second) continue;
                for (NodeId c : g.children(v)) stack.push_back(c);
            }
            CHECK(descendants(g, a) == std::vector<NodeId>(seen.begin(), seen.end()));
        }
    }
}

TEST_CASE("is_covered on the basic cases") {
    Dag single = dag_of({"A", "B"}, {{"A", "B"}});
    CHECK(is_covered(single, {0, 1}));

    Dag vee = dag_of({"A", "B", "C"}, {{"A", "B"}, {"C", "B"}});
    CHECK_FALSE(is_covered(vee, {0, 1}));
    CHECK_THROWS_AS(is_covered(vee, {1, 0}), MissingArcError);
}

TEST_CASE("is_covered on the counterexample state after the first addition") {
    Dag g = dag_of({"I", "J", "K", "L", "M"},
                   {{"I", "J"}, {"I", "K"}, {"J", "K"}, {"J", "L"}, {"L", "M"}});
    CHECK(is_covered(g, {*g.index_of("J"), *g.index_of("K")}));
}

TEST_CASE("cover_arc adds nothing when already covered") {
    Dag single = dag_of({"A", "B"}, {{"A", "B"}});
    auto [covered, additions] = cover_arc(single, {0, 1}, NodeOrder::identity(2));
    CHECK(additions.empty());
    CHECK(covered == single);
}

TEST_CASE("cover_arc golden additions on the counterexample") {
    Dag g = testutil::counterexample_dag();
    NodeOrder alpha = testutil::counterexample_alpha(g);
    const NodeId i = *g.index_of("I"), j = *g.index_of("J"), k = *g.index_of("K"),
                 m = *g.index_of("M");

    auto [g1, add1] = cover_arc(g, {j, k}, alpha);
    CHECK(add1 == std::vector<Arc>{{i, j}});

    // State right before the map covers J -> M.
    Dag mid = dag_of({"I", "J", "K", "L", "M"},
                     {{"I", "K"}, {"I", "J"}, {"K", "J"}, {"J", "L"}, {"J", "M"}, {"M", "L"}});
    auto [g2, add2] = cover_arc(mid, {j, m}, alpha);
    CHECK(add2 == std::vector<Arc>{{i, m}, {k, m}});
}

TEST_CASE("cover_arc surfaces cycles created outside the percolation context") {
    Dag g = dag_of({"X", "Y", "Z", "W"}, {{"Y", "Z"}, {"X", "Z"}, {"Y", "W"}, {"W", "X"}});
    CHECK_THROWS_AS(cover_arc(g, {*g.index_of("Y"), *g.index_of("Z")}, NodeOrder::identity(4)),
                    CycleError);
}

TEST_CASE("reverse_covered_arc basics") {
    Dag single = dag_of({"A", "B"}, {{"A", "B"}});
    Dag reversed = reverse_covered_arc(single, {0, 1});
    CHECK(reversed.has_arc(1, 0));
    CHECK_FALSE(reversed.has_arc(0, 1));

    Dag state = dag_of({"I", "J", "K", "L", "M"},
                       {{"I", "J"}, {"I", "K"}, {"J", "K"}, {"J", "L"}, {"L", "M"}});
    Dag next = reverse_covered_arc(state, {*state.index_of("J"), *state.index_of("K")});
    Dag expected = dag_of({"I", "J", "K", "L", "M"},
                          {{"I", "J"}, {"I", "K"}, {"K", "J"}, {"J", "L"}, {"L", "M"}});
    CHECK(next == expected);

    Dag vee = dag_of({"A", "B", "C"}, {{"A", "B"}, {"C", "B"}});
    CHECK_THROWS_AS(reverse_covered_arc(vee, {0, 1}), NotCoveredError);
    CHECK_THROWS_AS(reverse_covered_arc(vee, {1, 0}), MissingArcError);
}

TEST_CASE("parameter_count of the empty graph is the node count for binary variables") {
    for (int n : {1, 3, 6}) {
        Dag d(n, default_node_names(n));
        CHECK(parameter_count(d, CardinalityMap::uniform(n, 2)) == static_cast<std::uint64_t>(n));
    }
    Dag d(2, default_node_names(2));
    CHECK_THROWS_AS(parameter_count(d, CardinalityMap::uniform(3, 2)), NodeSetMismatchError);
}

TEST_CASE("reversing a covered arc preserves the parameter count") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> card(2, 4);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Dag g = testutil::random_dag(rng, 6, 0.4);
        std::vector<std::uint64_t> cards;
        for (int i = 0; i < 6; ++i) cards.push_back(card(rng));
        CardinalityMap cm(cards);
        for (const Arc& arc : g.arcs())
            if (is_covered(g, arc)) {
                Dag rev = reverse_covered_arc(g, arc);
                CHECK(parameter_count(rev, cm) == parameter_count(g, cm));
                ++checked;
            }
    }
    CHECK(checked > 50);
}

TEST_CASE("reversing a covered arc preserves every separation statement") {
    std::mt19937_64 rng(6);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Dag g = testutil::random_dag(rng, 6, 0.4);
        const auto before = all_separation_statements(g);
        for (const Arc& arc : g.arcs())
            if (is_covered(g, arc)) {
                Dag rev = reverse_covered_arc(g, arc);
                CHECK(all_separation_statements(rev) == before);
                ++checked;
            }
    }
    CHECK(checked > 30);
}

TEST_CASE("covering never decreases the parameter count") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> card(2, 4);
    for (int trial = 0; trial < 100; ++trial) {
        Dag g = testutil::random_dag(rng, 6, 0.4);
        std::vector<std::uint64_t> cards;
        for (int i = 0; i < 6; ++i) cards.push_back(card(rng));
        CardinalityMap cm(cards);
        NodeOrder ref = NodeOrder::identity(6);
        for (const Arc& arc : g.arcs()) {
            try {
                auto [covered, additions] = cover_arc(g, arc, ref);
                CHECK(parameter_count(covered, cm) >= parameter_count(g, cm));
                CHECK(covered.is_acyclic());
            } catch (const CycleError&) {
                // covering outside the percolation context may be impossible
            }
        }
    }
}

TEST_CASE("equivalent on the trivial pairs") {
    Dag ab = dag_of({"A", "B"}, {{"A", "B"}});
    Dag ba = dag_of({"A", "B"}, {{"B", "A"}});
    CHECK(equivalent(ab, ba));

    Dag collider = dag_of({"A", "B", "C"}, {{"A", "C"}, {"B", "C"}});
    Dag chain = dag_of({"A", "B", "C"}, {{"A", "C"}, {"C", "B"}});
    CHECK_FALSE(equivalent(collider, chain));

    auto optima = testutil::two_optima_expected();
    CHECK_FALSE(equivalent(optima[0], optima[1]));
}

TEST_CASE("equivalence matches exhaustive statement comparison on all four-node graphs") {
    std::vector<Dag> dags;
    std::vector<std::vector<SeparationStatement>> stmts;
    testutil::for_each_dag(4, [&](const Dag& d) {
        dags.push_back(d);
        stmts.push_back(all_separation_statements(d));
    });
    // Group by statement set, then compare pairwise inside and across groups.
    std::map<std::vector<SeparationStatement>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < dags.size(); ++i) groups[stmts[i]].push_back(i);

    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> pick(0, dags.size() - 1);
    for (int trial = 0; trial < 4000; ++trial) {
        const std::size_t i = pick(rng), j = pick(rng);
        CHECK(equivalent(dags[i], dags[j]) == (stmts[i] == stmts[j]));
    }
    // Equal cardinalities give equal parameter counts inside a class.
    CardinalityMap uniform = CardinalityMap::uniform(4, 3);
    for (const auto& [key, members] : groups) {
        const std::uint64_t expected = parameter_count(dags[members.front()], uniform);
        for (std::size_t idx : members) CHECK(parameter_count(dags[idx], uniform) == expected);
    }
}

TEST_CASE("equivalence agrees with statement sets on random larger pairs") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 150; ++trial) {
        Dag g = testutil::random_dag(rng, 6, 0.4);
        Dag h = testutil::random_dag(rng, 6, 0.4);
        CHECK(equivalent(g, h) == (all_separation_statements(g) == all_separation_statements(h)));
        // Include pairs that are equivalent by construction.
        Dag twin = g;
        for (const Arc& arc : g.arcs())
            if (is_covered(twin, arc)) {
                twin = reverse_covered_arc(twin, arc);
                break;
            }
        CHECK(equivalent(g, twin));
    }
}
