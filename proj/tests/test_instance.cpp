#include <doctest.h>

#include <sstream>

#include "pvc/instance.hpp"
#include "util.hpp"

using namespace pvc;

TEST_CASE("parse pvc header and records") {
    PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);
    CHECK(inst.n() == 4);
    CHECK(inst.m() == 3);
    CHECK(inst.omega == 1);
    CHECK(inst.mode == CapacityMode::Soft);
    CHECK(inst.rank == 2);
    CHECK(inst.vertices[0].capacity == 2);
    CHECK(inst.vertices[0].weight == 1);
    CHECK(inst.edges[1].members == std::vector<int>{0, 2});
    CHECK(inst.thresholds == std::vector<int>{3});
    CHECK(inst.degree(0) == 3);
    CHECK(inst.group_edges(1) == std::vector<int>{0, 1, 2});
}

TEST_CASE("pvc serialize round-trip is the identity") {
    PvcInstance a = testutil::pvc_from(testutil::kStarSoft);
    PvcInstance b = testutil::pvc_from(a.serialize());
    CHECK(a.serialize() == b.serialize());
    PecInstance c = testutil::pec_from(testutil::kThreeGroupPec);
    PecInstance d = testutil::pec_from(c.serialize());
    CHECK(c.serialize() == d.serialize());
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            parse_pvc(in);
            FAIL("expected a parse error for: " << text);
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        } catch (const invariant_error&) {
            // validation errors (no line info) are also acceptable rejections
            CHECK(needle.empty());
        }
    };
    expect_error("nonsense 1 2 3 soft\n", "line 1");
    expect_error("pvc 1 1 1 soft\nv 0 1 1\ne 0 1 0\nt 1 2\n", "");      // threshold > |E_1|
    expect_error("pvc 1 1 1 soft\nv 0 1 1\ne 0 1 0 0\nt 1 1\n", "");    // duplicate member
    expect_error("pvc 2 1 1 soft\nv 0 1 1\nv 1 1 1\ne 0 1 7\nt 1 1\n", "");  // unknown member
    expect_error("pvc 1 1 1 soft\nv 0 1/0 1\ne 0 1 0\nt 1 1\n", "line 2");   // zero denominator
    expect_error("pvc 1 1 1 hard\nv 0 3 1\ne 0 1 0\nt 1 1\n", "");      // hard needs unit weights
}

TEST_CASE("verify_solution accepts a valid pvc cover") {
    PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);
    IntegralSolution sol;
    sol.copies = {2, 0, 0, 0};
    sol.assignment = {{0, 0}, {1, 0}, {2, 0}};
    sol.cost = 2;
    Verdict v = verify_solution(inst, sol);
    CHECK(v.feasible);
    CHECK(v.cost == 2);
}

TEST_CASE("verify_solution rejects each violation separately") {
    PvcInstance inst = testutil::pvc_from(testutil::kStarSoft);

    SUBCASE("capacity exceeded") {
        IntegralSolution sol{{1, 0, 0, 0}, {{0, 0}, {1, 0}, {2, 0}}, Rational(1)};
        CHECK_FALSE(verify_solution(inst, sol).feasible);
    }
    SUBCASE("group coverage below threshold") {
        IntegralSolution sol{{2, 0, 0, 0}, {{0, 0}, {1, 0}}, Rational(2)};
        CHECK_FALSE(verify_solution(inst, sol).feasible);
    }
    SUBCASE("edge assigned outside its members") {
        IntegralSolution sol{{2, 1, 0, 0}, {{0, 0}, {1, 0}, {2, 1}}, Rational(3)};
        CHECK_FALSE(verify_solution(inst, sol).feasible);
    }
    SUBCASE("edge assigned to an unbought vertex") {
        IntegralSolution sol{{2, 0, 0, 0}, {{0, 0}, {1, 0}, {2, 3}}, Rational(2)};
        CHECK_FALSE(verify_solution(inst, sol).feasible);
    }
    SUBCASE("declared cost mismatch") {
        IntegralSolution sol{{2, 0, 0, 0}, {{0, 0}, {1, 0}, {2, 0}}, Rational(5)};
        CHECK_FALSE(verify_solution(inst, sol).feasible);
    }
    SUBCASE("hard mode rejects multiplicity two") {
        PvcInstance hard = testutil::pvc_from(testutil::kStarHard);
        IntegralSolution sol{{2, 0, 0, 0}, {{0, 0}, {1, 0}, {2, 0}}, Rational(2)};
        CHECK_FALSE(verify_solution(hard, sol).feasible);
    }
}

TEST_CASE("verify_solution for edge covers") {
    PecInstance inst = testutil::pec_from(testutil::kThreeGroupPec);
    EdgeCoverSolution good{{1, 5}, Rational(5)};
    CHECK(verify_solution(inst, good).feasible);
    EdgeCoverSolution short_cover{{1}, Rational(2)};  // group 3 untouched
    CHECK_FALSE(verify_solution(inst, short_cover).feasible);
    EdgeCoverSolution wrong_weight{{1, 5}, Rational(6)};
    CHECK_FALSE(verify_solution(inst, wrong_weight).feasible);
}

TEST_CASE("random generators produce valid, deterministic instances") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        PvcGenParams pp;
        PvcInstance a = generate_random_pvc(seed, pp);
        PvcInstance b = generate_random_pvc(seed, pp);
        CHECK(a.serialize() == b.serialize());  // same seed, same instance
        a.validate();

        PecGenParams ep;
        PecInstance c = generate_random_pec(seed, ep);
        PecInstance d = generate_random_pec(seed, ep);
        CHECK(c.serialize() == d.serialize());
        c.validate();
    }
    PvcGenParams pp;
    CHECK(generate_random_pvc(1, pp).serialize() != generate_random_pvc(2, pp).serialize());
    pp.mode = CapacityMode::Hard;
    PvcInstance h = generate_random_pvc(7, pp);
    for (const auto& v : h.vertices) CHECK(v.weight == 1);
}

TEST_CASE("rational helpers") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(rational_str(parse_rational("6/4")) == "3/2");
    CHECK(rat_floor(Rational(7, 2)) == 3);
    CHECK(rat_ceil(Rational(7, 2)) == 4);
    CHECK(rat_ceil_long(Rational(-1, 2)) == 0);
    CHECK(is_integral(parse_rational("4/2")));
    CHECK_FALSE(is_integral(Rational(1, 3)));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}
