#ifndef PVC_SOFTCAP_HPP
#define PVC_SOFTCAP_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pvc/instance.hpp"
#include "pvc/lp.hpp"
#include "pvc/maxflow.hpp"

namespace pvc {

// ---------------------------------------------------------------------------
// (f+1)-approximation for soft-capacitated weighted partition vertex cover.
//
// Pipeline per guess: solve the modified LP, concentrate each edge's
// fractional coverage onto one responsible endpoint, round the integral
// multiplicities, fix the leftover fractions with a sparse packing LP, and
// certify the assembled copy vector with the assignment network. The best
// feasible candidate over all guesses wins.
// ---------------------------------------------------------------------------

// A guess of the most expensive solution vertices. v_omega is sorted
// ascending by (weight, id); guesses smaller than omega take the
// restricted-support path instead of the LP pipeline.
struct Guess {
    std::vector<int> v_omega;
    std::vector<int> v_inf;  // forbidden vertices, only for full-size guesses
};

inline Guess make_guess(const PvcInstance& inst, std::vector<int> subset) {
    Guess g;
    g.v_omega = std::move(subset);
    std::sort(g.v_omega.begin(), g.v_omega.end(), [&](int a, int b) {
        if (inst.vertices[a].weight != inst.vertices[b].weight)
            return inst.vertices[a].weight < inst.vertices[b].weight;
        return a < b;
    });
    if (static_cast<int>(g.v_omega.size()) == inst.omega && !g.v_omega.empty()) {
        const Rational& cheapest = inst.vertices[g.v_omega.front()].weight;
        std::vector<char> in_guess(inst.n(), 0);
        for (int v : g.v_omega) in_guess[v] = 1;
        for (int v = 0; v < inst.n(); ++v)
            if (!in_guess[v] && inst.vertices[v].weight > cheapest) g.v_inf.push_back(v);
    }
    return g;
}

// Every size-omega subset, then every smaller subset down to the empty one;
// each size block in lexicographic id order.
inline std::vector<Guess> enumerate_guesses(const PvcInstance& inst) {
    std::vector<Guess> out;
    for (int s = std::min(inst.omega, inst.n()); s >= 0; --s) {
        std::vector<int> pick(s);
        auto rec = [&](auto&& self, int pos, int from) -> void {
            if (pos == s) {
                out.push_back(make_guess(inst, pick));
                return;
            }
            for (int v = from; v < inst.n(); ++v) {
                pick[pos] = v;
                self(self, pos + 1, v + 1);
            }
        };
        rec(rec, 0, 0);
    }
    return out;
}

// The modified LP for one full-size guess. Forbidden vertices are encoded by
// omitting their x and y variables entirely.
struct LpM {
    LpProblem lp;
    std::vector<int> x_var;                   // per vertex, -1 if forbidden
    std::map<std::pair<int, int>, int> y_var;  // (edge, vertex) -> variable
};

inline LpM build_lp_m(const PvcInstance& inst, const Guess& guess) {
    require(static_cast<int>(guess.v_omega.size()) == inst.omega, "build_lp_m needs a full-size guess");
    std::vector<char> forbidden(inst.n(), 0), guessed(inst.n(), 0);
    for (int v : guess.v_inf) forbidden[v] = 1;
    for (int v : guess.v_omega) guessed[v] = 1;

    LpM r;
    r.lp.sense = LpSense::Min;
    r.x_var.assign(inst.n(), -1);
    for (int v = 0; v < inst.n(); ++v) {
        if (forbidden[v]) continue;
        r.x_var[v] = r.lp.add_var("x" + std::to_string(v), Rational(guessed[v] ? 1 : 0),
                                  std::nullopt);
        r.lp.objective[r.x_var[v]] = inst.vertices[v].weight;
    }
    for (const auto& e : inst.edges)
        for (int v : e.members)
            if (!forbidden[v])
                r.y_var[{e.id, v}] = r.lp.add_var(
                    "y" + std::to_string(e.id) + "_" + std::to_string(v), Rational(0), Rational(1));

    for (const auto& e : inst.edges) {
        std::vector<std::pair<int, Rational>> row;
        for (int v : e.members)
            if (!forbidden[v]) row.push_back({r.y_var.at({e.id, v}), Rational(1)});
        if (!row.empty()) r.lp.add_constraint(std::move(row), LpRel::Le, Rational(1));
    }
    for (int g = 1; g <= inst.omega; ++g) {
        std::vector<std::pair<int, Rational>> row;
        for (int eid : inst.group_edges(g))
            for (int v : inst.edges[eid].members)
                if (!forbidden[v]) row.push_back({r.y_var.at({eid, v}), Rational(1)});
        r.lp.add_constraint(std::move(row), LpRel::Ge, Rational(inst.thresholds[g - 1]));
    }
    for (int v = 0; v < inst.n(); ++v) {
        if (forbidden[v]) continue;
        std::vector<std::pair<int, Rational>> row;
        for (const auto& e : inst.edges)
            if (std::binary_search(e.members.begin(), e.members.end(), v))
                row.push_back({r.y_var.at({e.id, v}), Rational(1)});
        row.push_back({r.x_var[v], Rational(-inst.vertices[v].capacity)});
        r.lp.add_constraint(std::move(row), LpRel::Le, Rational(0));
    }
    for (const auto& [key, yj] : r.y_var)
        r.lp.add_constraint({{yj, Rational(1)}, {r.x_var[key.second], Rational(-1)}}, LpRel::Le,
                            Rational(0));
    return r;
}

// Per-edge responsibility assignment plus the rounded-up fractional solution.
struct ConcentratedSolution {
    std::vector<int> phi;            // per edge: responsible member
    std::vector<Rational> y_tilde;   // per edge: coverage carried at phi(e)
    std::vector<Rational> x_tilde;   // per vertex
    std::vector<long> m_tilde;       // integer part of x_tilde
    std::vector<Rational> f_tilde;   // fractional part, in [0,1)
};

// Concentrates each edge's coverage on its strongest endpoint (ties: lowest
// id). x̃ takes max(load/k, largest single ỹ) so that every concentrated
// invariant — including ỹ_e ≤ x̃_{φ(e)} at capacities above 1 — holds
// exactly; the literal load/k value alone would break that coupling.
inline ConcentratedSolution concentrate(const PvcInstance& inst, const LpM& lpm,
                                        const LpBasicSolution& sol) {
    const int f = inst.rank;
    ConcentratedSolution c;
    c.phi.assign(inst.m(), -1);
    c.y_tilde.assign(inst.m(), Rational(0));
    c.x_tilde.assign(inst.n(), Rational(0));
    auto yprime = [&](int e, int v) -> Rational {
        auto it = lpm.y_var.find({e, v});
        return it == lpm.y_var.end() ? Rational(0) : sol.values[it->second];
    };
    for (const auto& e : inst.edges) {
        int best = e.members.front();
        for (int v : e.members)
            if (yprime(e.id, v) > yprime(e.id, best)) best = v;
        c.phi[e.id] = best;
        c.y_tilde[e.id] = std::min(Rational(1), Rational(Rational(f) * yprime(e.id, best)));
    }
    std::vector<Rational> load(inst.n(), Rational(0));
    std::vector<Rational> peak(inst.n(), Rational(0));
    for (const auto& e : inst.edges) {
        load[c.phi[e.id]] += c.y_tilde[e.id];
        peak[c.phi[e.id]] = std::max(peak[c.phi[e.id]], c.y_tilde[e.id]);
    }
    for (int v = 0; v < inst.n(); ++v)
        c.x_tilde[v] = std::max(Rational(load[v] / inst.vertices[v].capacity), peak[v]);

    // Concentration invariants, checked exactly.
    Rational cost = 0;
    for (int v = 0; v < inst.n(); ++v) cost += inst.vertices[v].weight * c.x_tilde[v];
    check_internal(cost <= Rational(f) * sol.objective_value,
                   "concentrated cost exceeds f times the LP optimum");
    for (const auto& e : inst.edges) {
        check_internal(std::binary_search(e.members.begin(), e.members.end(), c.phi[e.id]),
                       "responsible vertex outside its edge");
        check_internal(c.y_tilde[e.id] <= 1, "concentrated edge coverage above 1");
        check_internal(c.y_tilde[e.id] <= c.x_tilde[c.phi[e.id]],
                       "coupling y <= x broken after concentration");
    }
    for (int g = 1; g <= inst.omega; ++g) {
        Rational covered = 0;
        for (int eid : inst.group_edges(g)) covered += c.y_tilde[eid];
        check_internal(covered >= inst.thresholds[g - 1],
                       "group coverage lost during concentration");
    }
    for (int v = 0; v < inst.n(); ++v)
        check_internal(load[v] <= Rational(inst.vertices[v].capacity) * c.x_tilde[v],
                       "capacity broken after concentration");
    for (int v = 0; v < inst.n(); ++v)
        check_internal(lpm.x_var[v] != -1 || c.x_tilde[v] == 0,
                       "forbidden vertex received coverage");

    c.m_tilde.resize(inst.n());
    c.f_tilde.resize(inst.n());
    for (int v = 0; v < inst.n(); ++v) {
        Rational fl = rat_floor(c.x_tilde[v]);
        c.m_tilde[v] = static_cast<long>(fl.get_num().get_si());
        c.f_tilde[v] = c.x_tilde[v] - fl;
        check_internal(c.f_tilde[v] >= 0 && c.f_tilde[v] < 1, "fractional part out of range");
    }
    return c;
}

// Sparse packing LP over the leftover fractional multiplicities.
struct SparseLp {
    LpProblem lp;
    std::vector<int> alpha_var;                // per vertex, -1 if forbidden
    std::vector<std::vector<Rational>> gamma;  // [group-1][vertex]
    std::vector<Rational> rho_tilde;           // per group
    Rational budget;
};

inline SparseLp build_sparse_lp(const PvcInstance& inst, const ConcentratedSolution& c,
                                const Guess& guess) {
    std::vector<char> forbidden(inst.n(), 0);
    for (int v : guess.v_inf) forbidden[v] = 1;

    SparseLp s;
    s.gamma.assign(inst.omega, std::vector<Rational>(inst.n(), Rational(0)));
    for (const auto& e : inst.edges) {
        int v = c.phi[e.id];
        s.gamma[e.group - 1][v] += c.y_tilde[e.id];  // c_{g,v} accumulation
    }
    for (int v = 0; v < inst.n(); ++v) {
        Rational cv = Rational(inst.vertices[v].capacity) * c.x_tilde[v];
        for (int g = 0; g < inst.omega; ++g) {
            if (cv == 0) {
                check_internal(s.gamma[g][v] == 0, "promised coverage without capacity");
            } else {
                s.gamma[g][v] /= cv;
            }
        }
    }
    s.rho_tilde.assign(inst.omega, Rational(0));
    for (int g = 0; g < inst.omega; ++g) {
        s.rho_tilde[g] = inst.thresholds[g];
        for (int v = 0; v < inst.n(); ++v)
            s.rho_tilde[g] -=
                s.gamma[g][v] * Rational(inst.vertices[v].capacity) * Rational(c.m_tilde[v]);
    }
    s.budget = 0;
    for (int v = 0; v < inst.n(); ++v) s.budget += c.f_tilde[v] * inst.vertices[v].weight;

    s.lp.sense = LpSense::Max;
    s.alpha_var.assign(inst.n(), -1);
    for (int v = 0; v < inst.n(); ++v) {
        if (forbidden[v]) continue;
        s.alpha_var[v] = s.lp.add_var("a" + std::to_string(v), Rational(0), Rational(1));
        s.lp.objective[s.alpha_var[v]] =
            Rational(inst.vertices[v].capacity) * s.gamma[0][v];
    }
    for (int g = 2; g <= inst.omega; ++g) {
        std::vector<std::pair<int, Rational>> row;
        for (int v = 0; v < inst.n(); ++v)
            if (s.alpha_var[v] != -1)
                row.push_back(
                    {s.alpha_var[v], Rational(inst.vertices[v].capacity) * s.gamma[g - 1][v]});
        s.lp.add_constraint(std::move(row), LpRel::Ge, s.rho_tilde[g - 1]);
    }
    std::vector<std::pair<int, Rational>> budget_row;
    for (int v = 0; v < inst.n(); ++v)
        if (s.alpha_var[v] != -1) budget_row.push_back({s.alpha_var[v], inst.vertices[v].weight});
    s.lp.add_constraint(std::move(budget_row), LpRel::Le, s.budget);
    return s;
}

// Copies = integral multiplicities + rounded-up sparse-LP values; the
// assignment network decides whether the copy vector actually covers enough.
inline std::optional<IntegralSolution> assemble(const PvcInstance& inst, const Guess&,
                                                const ConcentratedSolution& c,
                                                const SparseLp& s,
                                                const LpBasicSolution& alpha) {
    std::vector<long> copies(inst.n(), 0);
    for (int v = 0; v < inst.n(); ++v) {
        Rational a = s.alpha_var[v] == -1 ? Rational(0) : alpha.values[s.alpha_var[v]];
        copies[v] = c.m_tilde[v] + rat_ceil_long(a);
    }
    return recover_assignment(inst, copies);
}

// Exact solver for a guess smaller than omega: the support is frozen to the
// guessed vertices and all copy vectors over it are enumerated.
inline std::optional<IntegralSolution> solve_small_support(const PvcInstance& inst,
                                                           const Guess& guess) {
    std::vector<long> ub(inst.n(), 0);
    for (int v : guess.v_omega) {
        long deg = inst.degree(v);
        ub[v] = (deg + inst.vertices[v].capacity - 1) / inst.vertices[v].capacity;
    }
    std::optional<IntegralSolution> best;
    std::vector<long> copies(inst.n(), 0);
    Rational partial = 0;
    auto rec = [&](auto&& self, size_t i) -> void {
        if (best && partial > best->cost) return;
        if (i == guess.v_omega.size()) {
            if (best && partial >= best->cost) return;
            auto sol = recover_assignment(inst, copies);
            if (sol) best = std::move(sol);
            return;
        }
        int v = guess.v_omega[i];
        for (long cc = 0; cc <= ub[v]; ++cc) {
            copies[v] = cc;
            partial += Rational(cc) * inst.vertices[v].weight;
            if (cc == 0 || !best || partial <= best->cost) self(self, i + 1);
            partial -= Rational(cc) * inst.vertices[v].weight;
        }
        copies[v] = 0;
    };
    rec(rec, 0);
    return best;
}

struct SoftResult {
    std::optional<IntegralSolution> solution;
    std::optional<Rational> lp_bound;  // min LP optimum over feasible full guesses
    long guesses = 0;
    long lp_solves = 0;
    long max_sparse_fractional = 0;  // largest fractional count seen in any alpha'
};

inline SoftResult solve_soft(const PvcInstance& inst) {
    require(inst.mode == CapacityMode::Soft, "solve_soft needs a soft-capacity instance");
    SoftResult res;
    for (const Guess& guess : enumerate_guesses(inst)) {
        ++res.guesses;
        std::optional<IntegralSolution> cand;
        if (static_cast<int>(guess.v_omega.size()) < inst.omega) {
            cand = solve_small_support(inst, guess);
        } else {
            LpM lpm = build_lp_m(inst, guess);
            LpResult lr = lp_solve(lpm.lp);
            ++res.lp_solves;
            if (lr.status == LpStatus::Infeasible) continue;  // wrong guess
            check_internal(lr.status == LpStatus::Optimal, "modified LP cannot be unbounded");
            check_internal(lp_verify_basic(lpm.lp, lr.sol),
                           "modified LP solution is not an extreme point");
            if (!res.lp_bound || lr.sol.objective_value < *res.lp_bound)
                res.lp_bound = lr.sol.objective_value;

            ConcentratedSolution conc = concentrate(inst, lpm, lr.sol);
            SparseLp sparse = build_sparse_lp(inst, conc, guess);
            LpResult ar = lp_solve(sparse.lp);
            ++res.lp_solves;
            check_internal(ar.status == LpStatus::Optimal,
                           "sparse LP must be feasible: the fractional parts are a witness");
            check_internal(lp_verify_basic(sparse.lp, ar.sol),
                           "sparse LP solution is not an extreme point");
            check_internal(ar.sol.objective_value >= sparse.rho_tilde[0],
                           "sparse LP optimum below its guaranteed witness value");
            long fractional = 0;
            for (const Rational& a : ar.sol.values)
                if (a > 0 && a < 1) ++fractional;
            check_internal(fractional <= inst.omega,
                           "sparse LP extreme point has too many fractional variables");
            res.max_sparse_fractional = std::max(res.max_sparse_fractional, fractional);
            cand = assemble(inst, guess, conc, sparse, ar.sol);
        }
        if (cand && (!res.solution || cand->cost < res.solution->cost))
            res.solution = std::move(cand);
    }
    return res;
}

}  // namespace pvc

#endif  // PVC_SOFTCAP_HPP
