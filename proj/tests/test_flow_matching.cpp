#include <doctest.h>

#include "pvc/matching.hpp"
#include "pvc/maxflow.hpp"
#include "pvc/oracle.hpp"
#include "util.hpp"

using namespace pvc;

TEST_CASE("dinic on a diamond network") {
    FlowNetwork net;
    int s = net.add_node(), a = net.add_node(), b = net.add_node(), t = net.add_node();
    net.source = s;
    net.sink = t;
    net.add_arc(s, a, 3);
    net.add_arc(s, b, 2);
    net.add_arc(a, b, 1);
    net.add_arc(a, t, 2);
    net.add_arc(b, t, 3);
    FlowResult r = max_flow(net);
    CHECK(r.value == 5);
    // Flow conservation at the inner nodes.
    long in_a = r.flow[0], out_a = r.flow[2] + r.flow[3];
    CHECK(in_a == out_a);
    for (size_t i = 0; i < net.arcs.size(); ++i) {
        CHECK(r.flow[i] >= 0);
        CHECK(r.flow[i] <= net.arcs[i].capacity);
    }
}

TEST_CASE("assignment network structure for the star") {
    PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);
    std::vector<long> copies{1, 0, 0, 0};
    AssignmentNetwork an = build_assignment_network(inst, copies);
    // source + sink + 3 edge nodes + 4 vertex nodes + 1 outlier node
    CHECK(an.net.node_count == 10);
    // 3 source arcs + 6 edge-vertex arcs + 3 outlier arcs + 4 vertex-sink + 1 outlier-sink
    CHECK(an.net.arcs.size() == 17);
    // Vertex 0 with one copy admits capacity 2; outlier arc allows 0 skips.
    FlowResult fr = max_flow(an.net);
    CHECK(fr.value == 2);  // one edge has nowhere to go
}

TEST_CASE("recover_assignment accepts exactly the feasible copy vectors") {
    PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);
    CHECK_FALSE(recover_assignment(inst, {1, 0, 0, 0}).has_value());
    auto sol = recover_assignment(inst, {2, 0, 0, 0});
    REQUIRE(sol.has_value());
    CHECK(sol->cost == 2);
    CHECK(sol->assignment.size() == 3);
    auto mixed = recover_assignment(inst, {1, 1, 0, 0});
    REQUIRE(mixed.has_value());  // center takes two edges, leaf 1 takes its own
    CHECK(mixed->cost == 2);
}

TEST_CASE("assignment network agrees with plain backtracking") {
    Rng rng(9001);
    int feasible_seen = 0, infeasible_seen = 0;
    for (uint64_t seed = 1; seed <= 60; ++seed) {
        PvcGenParams p;
        PvcInstance inst = generate_random_pvc(seed, p);
        std::vector<long> copies(inst.n());
        for (auto& c : copies) c = rng.range(0, 2);
        bool via_flow = recover_assignment(inst, copies).has_value();
        bool via_backtracking = exhaustive_feasible(inst, copies);
        CHECK(via_flow == via_backtracking);
        (via_flow ? feasible_seen : infeasible_seen)++;
    }
    CHECK(feasible_seen > 0);
    CHECK(infeasible_seen > 0);
}

TEST_CASE("matching graph drops negatives and dedups parallel edges") {
    MatchingGraph g(3);
    g.add_edge(0, 1, Rational(-2));        // dropped
    g.add_edge(0, 1, Rational(3));
    g.add_edge(0, 1, Rational(5));         // replaces the 3
    g.add_edge(1, 0, Rational(4));         // same pair, lower: ignored
    CHECK(g.edges.size() == 1);
    REQUIRE(g.weight_of(0, 1) != nullptr);
    CHECK(*g.weight_of(0, 1) == 5);
    CHECK(g.weight_of(1, 2) == nullptr);
    CHECK_THROWS_AS(g.add_edge(1, 1, Rational(1)), invariant_error);
}

TEST_CASE("maximum weight matching on hand-checked graphs") {
    {
        MatchingGraph g(0);
        CHECK(max_weight_matching(g).total_weight == 0);
    }
    {
        MatchingGraph g(2);
        g.add_edge(0, 1, Rational(7, 2));
        Matching m = max_weight_matching(g);
        CHECK(m.total_weight == Rational(7, 2));
        CHECK(m.edges == std::vector<std::pair<int, int>>{{0, 1}});
    }
    {
        // Triangle: only one edge fits; take the heaviest.
        MatchingGraph g(3);
        g.add_edge(0, 1, Rational(1));
        g.add_edge(1, 2, Rational(2));
        g.add_edge(0, 2, Rational(3));
        CHECK(max_weight_matching(g).total_weight == 3);
    }
    {
        // Path with a heavy middle edge: the middle edge alone beats the ends.
        MatchingGraph g(4);
        g.add_edge(0, 1, Rational(1));
        g.add_edge(1, 2, Rational(5));
        g.add_edge(2, 3, Rational(1));
        Matching m = max_weight_matching(g);
        CHECK(m.total_weight == 5);
        CHECK(m.mate[1] == 2);
        CHECK(m.mate[0] == -1);
    }
    {
        // Blossom case: odd cycle plus a pendant forcing an augmentation
        // through a shrunken blossom.
        MatchingGraph g(6);
        g.add_edge(0, 1, Rational(6));
        g.add_edge(1, 2, Rational(6));
        g.add_edge(2, 3, Rational(6));
        g.add_edge(3, 4, Rational(6));
        g.add_edge(4, 0, Rational(6));
        g.add_edge(2, 5, Rational(9));
        Matching m = max_weight_matching(g);
        CHECK(m.total_weight == 21);  // (2,5) + two cycle edges
    }
}

TEST_CASE("blossom matching matches the exhaustive oracle") {
    Rng rng(5150);
    for (int t = 0; t < 120; ++t) {
        int n = 2 + static_cast<int>(rng.below(8));
        MatchingGraph g(n);
        int m = static_cast<int>(rng.below(12));
        for (int i = 0; i < m; ++i) {
            int u = static_cast<int>(rng.below(n));
            int v = static_cast<int>(rng.below(n));
            if (u == v) continue;
            g.add_edge(u, v, Rational(rng.range(0, 9)));
        }
        Matching fast = max_weight_matching(g);
        Matching slow = brute_matching(g);
        CHECK(fast.total_weight == slow.total_weight);
        // Structural sanity of the reported matching.
        Rational w = 0;
        for (auto [u, v] : fast.edges) {
            CHECK(fast.mate[u] == v);
            CHECK(fast.mate[v] == u);
            REQUIRE(g.weight_of(u, v) != nullptr);
            w += *g.weight_of(u, v);
        }
        CHECK(w == fast.total_weight);
    }
}
