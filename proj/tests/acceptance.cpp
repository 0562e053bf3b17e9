// Acceptance gate: one line per criterion, nonzero exit if any fails.
//
// Each criterion re-checks a headline guarantee of the library against
// independent brute-force oracles over randomized instance families.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pvc/edgecover.hpp"
#include "pvc/hardcap.hpp"
#include "pvc/oracle.hpp"
#include "pvc/softcap.hpp"

using namespace pvc;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& desc) {
    std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL") << " - " << desc
              << std::endl;
    if (!pass) ++failures;
}

bool run(const std::function<void()>& body, std::string& why) {
    try {
        body();
        return true;
    } catch (const std::exception& e) {
        why = e.what();
        return false;
    }
}

void expect(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

// Small soft/hard family shared by criteria 1, 2, 5, 6 and 7:
// n <= 7, m <= 10, f <= 3, omega <= 2, weights <= 5, capacities <= 3.
PvcInstance small_pvc(uint64_t seed, CapacityMode mode) {
    Rng rng(seed * 2654435761ULL + 17);
    PvcGenParams p;
    p.n = 3 + static_cast<int>(rng.below(5));
    p.m = 4 + static_cast<int>(rng.below(7));
    p.f = 1 + static_cast<int>(rng.below(3));
    p.omega = 1 + static_cast<int>(rng.below(2));
    p.max_weight = 5;
    p.max_capacity = 3;
    p.mode = mode;
    return generate_random_pvc(seed, p);
}

}  // namespace

int main() {
    std::string why;

    // 1: soft solver within (f+1) of the brute-force optimum, 200 seeds.
    bool ok = run(
        [&] {
            for (uint64_t seed = 1; seed <= 200; ++seed) {
                PvcInstance inst = small_pvc(seed, CapacityMode::Soft);
                SoftResult r = solve_soft(inst);
                auto opt = brute_pvc(inst);
                expect(opt.has_value(), "soft oracle found no cover");
                expect(r.solution.has_value(), "soft solver found no cover");
                expect(opt->cost <= r.solution->cost, "solver beat the optimum");
                expect(r.solution->cost <= Rational(inst.rank + 1) * opt->cost,
                       "approximation factor exceeded");
                expect(verify_solution(inst, *r.solution).feasible, "solution not feasible");
            }
        },
        why);
    report(1, ok, "soft-capacity solver within (f+1)*OPT on 200 random instances" +
                      (ok ? "" : " [" + why + "]"));

    // 2: hard solver with epsilon=1 within (f+1) of the optimum; exact when
    // the optimum is at most omega; infeasibility agreement. 200 seeds.
    ok = run(
        [&] {
            for (uint64_t seed = 1; seed <= 200; ++seed) {
                PvcInstance inst = small_pvc(seed, CapacityMode::Hard);
                HardResult r = solve_hard(inst, Rational(1));
                auto opt = brute_pvc(inst);
                expect(opt.has_value() == r.solution.has_value(),
                       "feasibility disagreement with the oracle");
                if (!opt) continue;
                expect(r.solution->cost <= Rational(inst.rank + 1) * opt->cost,
                       "approximation factor exceeded");
                if (opt->cost <= inst.omega)
                    expect(r.solution->cost == opt->cost, "small optimum missed");
                expect(verify_solution(inst, *r.solution).feasible, "solution not feasible");
            }
        },
        why);
    report(2, ok, "hard-capacity solver (epsilon=1) within (f+1)*OPT, exact for optima <= omega" +
                      (ok ? "" : " [" + why + "]"));

    // 3: edge-cover reduction exact against the subset oracle, 300 seeds.
    ok = run(
        [&] {
            for (uint64_t seed = 1; seed <= 300; ++seed) {
                Rng rng(seed * 7919 + 3);
                PecGenParams p;
                p.n = 4 + static_cast<int>(rng.below(6));   // <= 9
                int max_m = p.n * (p.n - 1) / 2;
                p.m = std::min(3 + static_cast<int>(rng.below(11)), max_m);  // <= 13
                p.omega = 1 + static_cast<int>(rng.below(3));
                PecInstance inst = generate_random_pec(seed, p);
                auto fast = solve_pec(inst);
                auto slow = brute_pec(inst);
                expect(fast.has_value() == slow.has_value(), "feasibility disagreement");
                if (fast) {
                    expect(fast->weight == slow->weight, "non-optimal edge cover");
                    expect(verify_solution(inst, *fast).feasible, "cover not feasible");
                }
            }
        },
        why);
    report(3, ok, "edge-cover reduction exactly optimal on 300 random instances" +
                      (ok ? "" : " [" + why + "]"));

    // 4: the worked three-group example: budgeted matching 8, edge cover 5,
    // gadget sets of sizes 2, 1 and 0.
    ok = run(
        [&] {
            std::istringstream in(
                "pec 6 6 3\n"
                "v 0 1\nv 1 1\nv 2 1\nv 3 2\nv 4 2\nv 5 3\n"
                "e 0 0 3 11\ne 1 3 1 2\ne 2 1 2 5\ne 3 3 4 7\ne 4 2 5 6\ne 5 1 5 3\n"
                "t 1 1\nt 2 1\nt 3 1\n");
            PecInstance pec = parse_pec(in);
            WbmInstance w = pec_to_wbm(pec);
            BigMGraph b = wbm_to_bigm(w);
            expect(b.gadget_nodes[0].size() == 2 && b.gadget_nodes[1].size() == 1 &&
                       b.gadget_nodes[2].empty(),
                   "gadget sizes off");
            WbmInstance direct;  // matching view without auxiliary partners
            direct.omega = pec.omega;
            direct.thresholds = pec.thresholds;
            for (const auto& v : pec.vertices) direct.nodes.push_back({v.id, v.group, v.id});
            for (const auto& e : pec.edges)
                direct.edges.push_back({e.id, e.u, e.v, e.weight, e.id});
            auto wsol = solve_wbm(direct);
            expect(wsol.has_value() && wsol->weight == 8, "budgeted matching optimum != 8");
            auto cover = solve_pec(pec);
            expect(cover.has_value() && cover->weight == 5, "edge cover optimum != 5");
        },
        why);
    report(4, ok,
           "worked example: matching optimum 8, cover optimum 5, gadget sizes (2,1,0)" +
               (ok ? "" : " [" + why + "]"));

    // 5: concentration invariants on every feasible full-size guess of the
    // criterion-1 family.
    ok = run(
        [&] {
            long checked = 0;
            for (uint64_t seed = 1; seed <= 200; ++seed) {
                PvcInstance inst = small_pvc(seed, CapacityMode::Soft);
                for (const Guess& g : enumerate_guesses(inst)) {
                    if (static_cast<int>(g.v_omega.size()) < inst.omega) continue;
                    LpM lpm = build_lp_m(inst, g);
                    LpResult lr = lp_solve(lpm.lp);
                    if (lr.status != LpStatus::Optimal) continue;
                    ConcentratedSolution c = concentrate(inst, lpm, lr.sol);
                    Rational cost = 0;
                    for (int v = 0; v < inst.n(); ++v)
                        cost += inst.vertices[v].weight * c.x_tilde[v];
                    expect(cost <= Rational(inst.rank) * lr.sol.objective_value,
                           "concentrated cost above f * LP");
                    for (const auto& e : inst.edges) {
                        expect(c.y_tilde[e.id] <= 1, "edge coverage above 1");
                        expect(c.y_tilde[e.id] <= c.x_tilde[c.phi[e.id]], "coupling broken");
                    }
                    for (int grp = 1; grp <= inst.omega; ++grp) {
                        Rational covered = 0;
                        for (int eid : inst.group_edges(grp)) covered += c.y_tilde[eid];
                        expect(covered >= inst.thresholds[grp - 1], "group coverage lost");
                    }
                    ++checked;
                }
            }
            expect(checked > 500, "family too small to be meaningful");
        },
        why);
    report(5, ok, "concentration invariants hold on every feasible full-size guess" +
                      (ok ? "" : " [" + why + "]"));

    // 6: sparse-LP extreme points carry at most omega fractional variables.
    ok = run(
        [&] {
            for (uint64_t seed = 1; seed <= 200; ++seed) {
                PvcInstance inst = small_pvc(seed, CapacityMode::Soft);
                SoftResult r = solve_soft(inst);
                expect(r.max_sparse_fractional <= inst.omega, "too many fractional values");
            }
        },
        why);
    report(6, ok, "sparse LP solutions have at most omega fractional variables" +
                      (ok ? "" : " [" + why + "]"));

    // 7: rounding invariants: |W| <= |U_1| + omega and a non-increasing charge.
    ok = run(
        [&] {
            long rounded = 0;
            for (uint64_t seed = 1; seed <= 200; ++seed) {
                PvcInstance inst = small_pvc(seed, CapacityMode::Hard);
                HardResult r = solve_hard(inst, Rational(1));
                if (!r.trace) continue;
                ++rounded;
                expect(r.trace->final_w <= r.trace->final_u1 + inst.omega,
                       "low-band bound violated");
                for (size_t i = 1; i < r.trace->charges.size(); ++i)
                    expect(r.trace->charges[i] <= r.trace->charges[i - 1],
                           "charge increased");
            }
            expect(rounded > 0, "rounding path never exercised");
        },
        why);
    report(7, ok, "iterative rounding keeps |W| <= |U_1| + omega and a monotone charge" +
                      (ok ? "" : " [" + why + "]"));

    // 8: assignment network agrees with plain backtracking on 200 random
    // (instance, copy-vector) pairs.
    ok = run(
        [&] {
            Rng rng(0xfeedULL);
            for (uint64_t seed = 1; seed <= 200; ++seed) {
                PvcGenParams p;
                p.n = 3 + static_cast<int>(rng.below(5));
                p.m = 3 + static_cast<int>(rng.below(8));
                p.omega = 1 + static_cast<int>(rng.below(2));
                PvcInstance inst = generate_random_pvc(seed, p);
                std::vector<long> copies(inst.n());
                for (auto& c : copies) c = rng.range(0, 2);
                expect(recover_assignment(inst, copies).has_value() ==
                           exhaustive_feasible(inst, copies),
                       "feasibility verdicts disagree");
            }
        },
        why);
    report(8, ok, "flow-based assignment feasibility matches exhaustive search, 200 pairs" +
                      (ok ? "" : " [" + why + "]"));

    // 9: blossom matching equals the subset oracle on 300 random graphs.
    ok = run(
        [&] {
            Rng rng(0xabcdULL);
            for (int t = 0; t < 300; ++t) {
                int n = 2 + static_cast<int>(rng.below(9));  // <= 10
                MatchingGraph g(n);
                int m = static_cast<int>(rng.below(15));  // <= 14
                for (int i = 0; i < m; ++i) {
                    int u = static_cast<int>(rng.below(n));
                    int v = static_cast<int>(rng.below(n));
                    if (u == v) continue;
                    g.add_edge(u, v, Rational(rng.range(0, 12)));
                }
                expect(max_weight_matching(g).total_weight == brute_matching(g).total_weight,
                       "matching weights disagree");
            }
        },
        why);
    report(9, ok, "blossom matching optimal against exhaustive search on 300 graphs" +
                      (ok ? "" : " [" + why + "]"));

    // 10: simplex agrees with the vertex-enumeration LP oracle on 100 random
    // boxed LPs; every optimum passes the extreme-point certificate.
    ok = run(
        [&] {
            Rng rng(0x10a0ULL);
            int optimal = 0;
            for (int t = 0; t < 100; ++t) {
                LpProblem p;
                p.sense = rng.below(2) ? LpSense::Min : LpSense::Max;
                int nv = 1 + static_cast<int>(rng.below(8));  // <= 8
                for (int j = 0; j < nv; ++j) {
                    Rational lo(rng.range(-3, 0));
                    p.objective[p.add_var("v" + std::to_string(j), lo,
                                          lo + Rational(rng.range(0, 4)))] =
                        Rational(rng.range(-3, 3));
                }
                int nc = static_cast<int>(rng.below(std::min(13, 25 - 2 * nv)));
                for (int i = 0; i < nc; ++i) {
                    std::vector<std::pair<int, Rational>> row;
                    for (int j = 0; j < nv; ++j) {
                        long c = rng.range(-2, 2);
                        if (c != 0) row.push_back({j, Rational(c)});
                    }
                    if (row.empty()) row.push_back({0, Rational(1)});
                    LpRel rel =
                        rng.below(4) == 0 ? LpRel::Eq : (rng.below(2) ? LpRel::Le : LpRel::Ge);
                    p.add_constraint(std::move(row), rel, Rational(rng.range(-4, 4)));
                }
                LpResult r = lp_solve(p);
                auto ref = brute_lp(p);
                if (r.status == LpStatus::Optimal) {
                    ++optimal;
                    expect(ref.has_value(), "oracle calls a solvable LP infeasible");
                    expect(r.sol.objective_value == ref->objective_value, "objectives differ");
                    expect(lp_verify_basic(p, r.sol), "optimum not an extreme point");
                } else {
                    expect(r.status == LpStatus::Infeasible, "boxed LP reported unbounded");
                    expect(!ref.has_value(), "oracle found a point in an 'infeasible' LP");
                }
            }
            expect(optimal >= 30, "family too degenerate to be meaningful");
        },
        why);
    report(10, ok, "simplex matches the LP vertex oracle on 100 LPs with basic certificates" +
                       (ok ? "" : " [" + why + "]"));

    if (failures == 0) {
        std::cout << "all criteria passed" << std::endl;
        return 0;
    }
    std::cout << failures << " criteria failed" << std::endl;
    return 1;
}
