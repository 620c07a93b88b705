#include <random>

#include "doctest.h"
#include "testutil.hpp"

#include "dagcons/separation.hpp"

using namespace dagcons;
using testutil::dag_of;

namespace {

SeparationQuery q(std::vector<NodeId> x, std::vector<NodeId> y, std::vector<NodeId> z) {
    return {std::move(x), std::move(y), std::move(z)};
}

std::vector<NodeId> random_disjoint(std::mt19937_64& rng, int n, int count,
                                    std::vector<char>& used) {
    std::uniform_int_distribution<int> node(0, n - 1);
    std::vector<NodeId> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && guard++ < 10000) {
        const int v = node(rng);
        if (!used[v]) {
            used[v] = 1;
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("chains block and colliders activate") {
    Dag chain = dag_of({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    CHECK(d_separated(chain, q({0}, {2}, {1})));
    CHECK(d_separated_oracle(chain, q({0}, {2}, {1})));

    Dag collider = dag_of({"A", "B", "C"}, {{"A", "C"}, {"B", "C"}});
    CHECK_FALSE(d_separated(collider, q({0}, {1}, {2})));
    CHECK_FALSE(d_separated_oracle(collider, q({0}, {1}, {2})));
    CHECK(d_separated(collider, q({0}, {1}, {})));
}

TEST_CASE("the counterexample separates I from M marginally") {
    Dag g = testutil::counterexample_dag();
    const NodeId i = *g.index_of("I"), m = *g.index_of("M");
    CHECK(d_separated(g, q({i}, {m}, {})));
    CHECK(d_separated_oracle(g, q({i}, {m}, {})));

    Dag bad = testutil::counterexample_legacy_output();
    CHECK_FALSE(d_separated(bad, q({*bad.index_of("I")}, {*bad.index_of("M")}, {})));
    CHECK_FALSE(d_separated_oracle(bad, q({*bad.index_of("I")}, {*bad.index_of("M")}, {})));
}

TEST_CASE("invalid queries are rejected") {
    Dag chain = dag_of({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    CHECK_THROWS_AS(d_separated(chain, q({}, {1}, {})), InvalidQueryError);
    CHECK_THROWS_AS(d_separated(chain, q({0}, {0}, {})), InvalidQueryError);
    CHECK_THROWS_AS(d_separated(chain, q({0}, {1}, {1})), InvalidQueryError);
    CHECK_THROWS_AS(d_separated(chain, q({0}, {5}, {})), InvalidQueryError);
}

TEST_CASE("engine agrees with the moral-graph oracle exhaustively for up to four nodes") {
    for (int n = 2; n <= 4; ++n) {
        testutil::for_each_dag(n, [&](const Dag& d) {
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    std::vector<NodeId> rest;
                    for (int v = 0; v < n; ++v)
                        if (v != a && v != b) rest.push_back(v);
                    for (std::uint32_t sel = 0; sel < (1u << rest.size()); ++sel) {
                        std::vector<NodeId> z;
                        for (std::size_t i = 0; i < rest.size(); ++i)
                            if (sel & (1u << i)) z.push_back(rest[i]);
                        const auto query = q({a}, {b}, z);
                        CHECK(d_separated(d, query) == d_separated_oracle(d, query));
                    }
                }
        });
    }
}

TEST_CASE("engine agrees with the oracle on random set-valued queries") {
    std::mt19937_64 rng(21);
    const int n = 10;
    for (int trial = 0; trial < 400; ++trial) {
        Dag g = testutil::random_dag(rng, n, 0.3);
        std::vector<char> used(n, 0);
        auto x = random_disjoint(rng, n, 1 + static_cast<int>(rng() % 2), used);
        auto y = random_disjoint(rng, n, 1 + static_cast<int>(rng() % 2), used);
        auto z = random_disjoint(rng, n, static_cast<int>(rng() % 4), used);
        const auto query = q(x, y, z);
        CHECK(d_separated(g, query) == d_separated_oracle(g, query));
    }
}

TEST_CASE("graphoid properties hold on random instances") {
    std::mt19937_64 rng(22);
    const int n = 6;
    int symmetry_hits = 0, decomposition_hits = 0, weak_union_hits = 0, composition_hits = 0;
    for (int trial = 0; trial < 600; ++trial) {
        Dag g = testutil::random_dag(rng, n, 0.4);
        std::vector<char> used(n, 0);
        auto x = random_disjoint(rng, n, 1, used);
        auto y = random_disjoint(rng, n, 1, used);
        auto w = random_disjoint(rng, n, 1, used);
        auto z = random_disjoint(rng, n, static_cast<int>(rng() % 3), used);

        const bool xy_z = d_separated(g, q(x, y, z));
        CHECK(xy_z == d_separated(g, q(y, x, z)));
        ++symmetry_hits;

        std::vector<NodeId> yw = y;
        yw.insert(yw.end(), w.begin(), w.end());
        if (d_separated(g, q(x, yw, z))) {
            CHECK(d_separated(g, q(x, y, z)));
            ++decomposition_hits;
            std::vector<NodeId> zw = z;
            zw.insert(zw.end(), w.begin(), w.end());
            CHECK(d_separated(g, q(x, y, zw)));
            ++weak_union_hits;
        }
        if (xy_z && d_separated(g, q(x, w, z))) {
            CHECK(d_separated(g, q(x, yw, z)));
            ++composition_hits;
        }
    }
    CHECK(symmetry_hits == 600);
    CHECK(decomposition_hits > 50);
    CHECK(weak_union_hits > 50);
    CHECK(composition_hits > 50);
}

TEST_CASE("adjacent nodes are never separated") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        Dag g = testutil::random_dag(rng, 6, 0.5);
        for (const Arc& arc : g.arcs()) {
            std::vector<NodeId> rest;
            for (int v = 0; v < 6; ++v)
                if (v != arc.from && v != arc.to) rest.push_back(v);
            std::shuffle(rest.begin(), rest.end(), rng);
            rest.resize(rng() % (rest.size() + 1));
            CHECK_FALSE(d_separated(g, q({arc.from}, {arc.to}, rest)));
        }
    }
}

TEST_CASE("batch kernel matches the serial reference") {
    std::mt19937_64 rng(24);
    const int n = 12;
    Dag g = testutil::random_dag(rng, n, 0.3);
    std::vector<SeparationQuery> queries;
    for (int i = 0; i < 5000; ++i) {
        std::vector<char> used(n, 0);
        auto x = random_disjoint(rng, n, 1, used);
        auto y = random_disjoint(rng, n, 1, used);
        auto z = random_disjoint(rng, n, static_cast<int>(rng() % 5), used);
        queries.push_back(q(x, y, z));
    }
    CHECK(d_separated_many(g, queries) == d_separated_many_serial(g, queries));
}

TEST_CASE("all_separation_statements on the small named cases") {
    Dag empty = construct_dag(2, {}, {"A", "B"});
    const auto stmts = all_separation_statements(empty);
    REQUIRE(stmts.size() == 1);
    CHECK(stmts[0] == SeparationStatement{0, 1, 0});

    Dag complete = dag_of({"A", "B", "C"}, {{"A", "B"}, {"A", "C"}, {"B", "C"}});
    CHECK(all_separation_statements(complete).empty());

    Dag cex = testutil::counterexample_dag();
    const auto cex_stmts = all_separation_statements(cex);
    auto contains = [&](const std::string& a, const std::string& b) {
        NodeId ia = *cex.index_of(a), ib = *cex.index_of(b);
        if (ia > ib) std::swap(ia, ib);
        return std::binary_search(cex_stmts.begin(), cex_stmts.end(),
                                  SeparationStatement{ia, ib, 0});
    };
    CHECK(contains("I", "M"));
    CHECK(contains("I", "J"));
    CHECK_FALSE(contains("I", "K"));

    Dag big(8, default_node_names(8));
    CHECK_THROWS_AS(all_separation_statements(big), SizeLimitError);
}
