#include <doctest.h>

#include "pvc/oracle.hpp"
#include "pvc/softcap.hpp"
#include "util.hpp"

using namespace pvc;

TEST_CASE("guess enumeration covers all subsets, largest size first") {
    PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);  // n=4, omega=1
    auto guesses = enumerate_guesses(inst);
    REQUIRE(guesses.size() == 5);  // C(4,1) + C(4,0)
    for (int i = 0; i < 4; ++i) {
        CHECK(guesses[i].v_omega == std::vector<int>{i});
    }
    CHECK(guesses[4].v_omega.empty());
    CHECK(guesses[4].v_inf.empty());  // below full size: nothing is forbidden
}

TEST_CASE("full-size guesses forbid strictly heavier outside vertices") {
    PvcInstance inst = testutil::pvc_from(
        "pvc 4 2 2 soft\n"
        "v 0 1 1\nv 1 2 1\nv 2 3 1\nv 3 3 1\n"
        "e 0 1 0 1\ne 1 2 2 3\n"
        "t 1 1\nt 2 1\n");
    Guess g = make_guess(inst, {2, 1});
    CHECK(g.v_omega == std::vector<int>{1, 2});  // sorted by (weight, id)
    CHECK(g.v_inf == std::vector<int>{3});       // heavier than the cheapest guessed
    Guess small = make_guess(inst, {0});
    CHECK(small.v_inf.empty());
}

TEST_CASE("modified LP on the star has optimum 3/2") {
    PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);
    LpM lpm = build_lp_m(inst, make_guess(inst, {0}));
    LpResult r = lp_solve(lpm.lp);
    REQUIRE(r.status == LpStatus::Optimal);
    // x_center = 3/2 saturates the capacity constraint (3 edges, capacity 2).
    CHECK(r.sol.objective_value == Rational(3, 2));
    CHECK(r.sol.values[lpm.x_var[0]] == Rational(3, 2));
    CHECK(lp_verify_basic(lpm.lp, r.sol));
}

TEST_CASE("modified LP respects forbidden vertices") {
    PvcInstance inst = testutil::pvc_from(
        "pvc 2 1 1 soft\n"
        "v 0 1 1\nv 1 5 1\n"
        "e 0 1 0 1\n"
        "t 1 1\n");
    Guess g = make_guess(inst, {0});  // forbids vertex 1 (weight 5 > 1)
    REQUIRE(g.v_inf == std::vector<int>{1});
    LpM lpm = build_lp_m(inst, g);
    CHECK(lpm.x_var[1] == -1);
    LpResult r = lp_solve(lpm.lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.sol.objective_value == 1);
}

TEST_CASE("concentration invariants on the star relaxation") {
    PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);
    LpM lpm = build_lp_m(inst, make_guess(inst, {0}));
    LpResult r = lp_solve(lpm.lp);
    REQUIRE(r.status == LpStatus::Optimal);
    ConcentratedSolution c = concentrate(inst, lpm, r.sol);  // self-asserting
    for (const auto& e : inst.edges) {
        CHECK(c.y_tilde[e.id] <= 1);
        CHECK(c.y_tilde[e.id] <= c.x_tilde[c.phi[e.id]]);
    }
    Rational covered = 0;
    for (int eid : inst.group_edges(1)) covered += c.y_tilde[eid];
    CHECK(covered >= 3);
    Rational cost = 0;
    for (int v = 0; v < inst.n(); ++v) cost += inst.vertices[v].weight * c.x_tilde[v];
    CHECK(cost <= Rational(inst.rank) * r.sol.objective_value);
    for (int v = 0; v < inst.n(); ++v) {
        CHECK(c.x_tilde[v] == Rational(c.m_tilde[v]) + c.f_tilde[v]);
        CHECK(c.f_tilde[v] >= 0);
        CHECK(c.f_tilde[v] < 1);
    }
}

TEST_CASE("sparse LP keeps at most omega fractional variables") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        PvcGenParams p;
        p.omega = 2;
        p.m = 7;
        PvcInstance inst = generate_random_pvc(seed, p);
        SoftResult r = solve_soft(inst);
        CHECK(r.max_sparse_fractional <= inst.omega);
    }
}

TEST_CASE("soft solver on hand-checked instances") {
    {
        PvcInstance inst = testutil::pvc_from(
            "pvc 1 1 1 soft\nv 0 1 1\ne 0 1 0\nt 1 1\n");
        SoftResult r = solve_soft(inst);
        REQUIRE(r.solution.has_value());
        CHECK(r.solution->cost == 1);
    }
    {
        PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);
        SoftResult r = solve_soft(inst);
        REQUIRE(r.solution.has_value());
        CHECK(r.solution->cost == 2);
        REQUIRE(r.lp_bound.has_value());
        CHECK(*r.lp_bound <= 2);
        CHECK(verify_solution(inst, *r.solution).feasible);
    }
    {
        // Two groups, only one edge of each needed; one shared cheap vertex
        // (capacity 2) covers a required edge from each group.
        PvcInstance inst = testutil::pvc_from(
            "pvc 3 4 2 soft\n"
            "v 0 1 2\nv 1 4 1\nv 2 4 1\n"
            "e 0 1 0 1\ne 1 1 1 2\ne 2 2 0 2\ne 3 2 1 2\n"
            "t 1 1\nt 2 1\n");
        SoftResult r = solve_soft(inst);
        REQUIRE(r.solution.has_value());
        CHECK(r.solution->cost == 1);
    }
}

TEST_CASE("soft solver stays within (f+1) of the optimum") {
    int nontrivial = 0;
    for (uint64_t seed = 1; seed <= 60; ++seed) {
        PvcGenParams p;
        PvcInstance inst = generate_random_pvc(seed, p);
        SoftResult r = solve_soft(inst);
        auto opt = brute_pvc(inst);
        // Soft instances with validated thresholds always admit a cover.
        REQUIRE(opt.has_value());
        REQUIRE(r.solution.has_value());
        CHECK(r.solution->cost >= opt->cost);
        CHECK(r.solution->cost <= Rational(inst.rank + 1) * opt->cost);
        CHECK(verify_solution(inst, *r.solution).feasible);
        if (opt->cost > 0) ++nontrivial;
    }
    CHECK(nontrivial > 30);
}
