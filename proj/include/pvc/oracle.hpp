#ifndef PVC_ORACLE_HPP
#define PVC_ORACLE_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "pvc/instance.hpp"
#include "pvc/lp.hpp"
#include "pvc/matching.hpp"
#include "pvc/maxflow.hpp"

namespace pvc {

// ---------------------------------------------------------------------------
// Brute-force reference solvers. These share no algorithmic machinery with
// the approximation pipeline beyond the feasibility checkers, and exist so
// tests can compare solver output against independently computed optima.
// All of them enumerate exhaustively and guard against oversized inputs.
// ---------------------------------------------------------------------------

// Exact optimum for a PVC instance by enumerating copy vectors. In hard mode
// the per-vertex range is {0,1}; in soft mode it is 0..ceil(deg(v)/k_v),
// which is enough copies to absorb every incident edge. Feasibility of a
// copy vector is decided by the assignment network. Returns the
// lexicographically smallest copy vector among the minimum-cost ones, or
// nullopt if no copy vector is feasible.
inline std::optional<IntegralSolution> brute_pvc(const PvcInstance& inst) {
    std::vector<long> ub(inst.n());
    double space = 1.0;
    for (int v = 0; v < inst.n(); ++v) {
        if (inst.mode == CapacityMode::Hard) {
            ub[v] = 1;
        } else {
            long deg = inst.degree(v);
            ub[v] = (deg + inst.vertices[v].capacity - 1) / inst.vertices[v].capacity;
        }
        space *= static_cast<double>(ub[v] + 1);
    }
    require(space <= 4e6, "instance too large for the brute-force oracle");

    std::optional<IntegralSolution> best;
    std::vector<long> copies(inst.n(), 0);
    Rational partial = 0;
    auto rec = [&](auto&& self, int v) -> void {
        if (best && partial > best->cost) return;
        if (v == inst.n()) {
            if (best && partial >= best->cost) return;
            auto sol = recover_assignment(inst, copies);
            if (sol) best = std::move(sol);
            return;
        }
        for (long c = 0; c <= ub[v]; ++c) {
            copies[v] = c;
            partial += Rational(c) * inst.vertices[v].weight;
            if (c == 0 || !best || partial <= best->cost) self(self, v + 1);
            partial -= Rational(c) * inst.vertices[v].weight;
        }
        copies[v] = 0;
    };
    rec(rec, 0);
    return best;
}

// Exact optimum for weighted partition edge cover by enumerating all edge
// subsets. Returns the first minimum-weight subset in ascending bitmask
// order, or nullopt if no subset meets the thresholds.
inline std::optional<EdgeCoverSolution> brute_pec(const PecInstance& inst) {
    require(inst.m() <= 20, "instance too large for the brute-force oracle");
    std::optional<EdgeCoverSolution> best;
    for (unsigned long mask = 0; mask < (1UL << inst.m()); ++mask) {
        EdgeCoverSolution cand;
        cand.weight = 0;
        for (int e = 0; e < inst.m(); ++e)
            if (mask >> e & 1) {
                cand.selected.push_back(e);
                cand.weight += inst.edges[e].weight;
            }
        if (best && cand.weight >= best->weight) continue;
        if (verify_solution(inst, cand).feasible) best = std::move(cand);
    }
    return best;
}

// Exact maximum-weight matching by enumerating edge subsets.
inline Matching brute_matching(const MatchingGraph& g) {
    int m = static_cast<int>(g.edges.size());
    require(m <= 20, "graph too large for the brute-force oracle");
    Matching best;
    best.mate.assign(g.node_count, -1);
    best.total_weight = 0;
    for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
        Rational w = 0;
        std::vector<int> mate(g.node_count, -1);
        bool ok = true;
        for (int e = 0; e < m && ok; ++e) {
            if (!(mask >> e & 1)) continue;
            const auto& ed = g.edges[e];
            if (mate[ed.u] != -1 || mate[ed.v] != -1) {
                ok = false;
                break;
            }
            mate[ed.u] = ed.v;
            mate[ed.v] = ed.u;
            w += ed.weight;
        }
        if (!ok || w <= best.total_weight) continue;
        best.total_weight = w;
        best.mate = std::move(mate);
    }
    best.edges.clear();
    for (int v = 0; v < g.node_count; ++v)
        if (best.mate[v] > v) best.edges.push_back({v, best.mate[v]});
    return best;
}

// Decides by plain backtracking (no flow machinery) whether a copy vector
// admits a feasible edge assignment. Used to cross-check the assignment
// network on small instances.
inline bool exhaustive_feasible(const PvcInstance& inst, const std::vector<long>& copies) {
    require(static_cast<int>(copies.size()) == inst.n(), "copies size mismatch");
    require(inst.m() <= 14, "instance too large for the brute-force oracle");
    std::vector<long> room(inst.n());
    for (int v = 0; v < inst.n(); ++v)
        room[v] = static_cast<long>(inst.vertices[v].capacity) * copies[v];
    std::vector<long> skip_left(inst.omega);
    for (int g = 1; g <= inst.omega; ++g)
        skip_left[g - 1] =
            static_cast<long>(inst.group_edges(g).size()) - inst.thresholds[g - 1];
    auto rec = [&](auto&& self, int e) -> bool {
        if (e == inst.m()) return true;
        const auto& edge = inst.edges[e];
        for (int v : edge.members) {
            if (room[v] <= 0) continue;
            --room[v];
            if (self(self, e + 1)) return true;
            ++room[v];
        }
        long& skips = skip_left[edge.group - 1];
        if (skips > 0) {
            --skips;
            if (self(self, e + 1)) return true;
            ++skips;
        }
        return false;
    };
    return rec(rec, 0);
}

// ---------------------------------------------------------------------------
// Independent LP oracle: enumerates all candidate vertices of the feasible
// region (every nvars-subset of {constraints-as-equalities, bounds}) and
// takes the best feasible one. Requires every variable to carry both bounds,
// so the polytope is bounded and "no feasible vertex" means "infeasible".
// ---------------------------------------------------------------------------
namespace oracledetail {

// Solves Ax = b for square A; nullopt if A is singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
    int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace oracledetail

inline std::optional<LpBasicSolution> brute_lp(const LpProblem& p) {
    const int nv = p.nvars();
    for (const auto& v : p.vars)
        require(v.lo && v.hi, "LP oracle needs both bounds on every variable");

    struct CandRow {
        std::vector<Rational> a;
        Rational b;
    };
    std::vector<CandRow> cand;
    for (const auto& c : p.cons) {
        CandRow r{std::vector<Rational>(nv, Rational(0)), c.rhs};
        for (const auto& [j, a] : c.coeffs) r.a[j] += a;
        cand.push_back(std::move(r));
    }
    for (int j = 0; j < nv; ++j) {
        CandRow lo{std::vector<Rational>(nv, Rational(0)), *p.vars[j].lo};
        lo.a[j] = 1;
        cand.push_back(std::move(lo));
        CandRow hi{std::vector<Rational>(nv, Rational(0)), *p.vars[j].hi};
        hi.a[j] = 1;
        cand.push_back(std::move(hi));
    }
    int nc = static_cast<int>(cand.size());
    require(nv <= 8 && nc <= 24, "LP too large for the vertex-enumeration oracle");

    std::optional<LpBasicSolution> best;
    std::vector<int> pick(nv);
    auto consider = [&]() {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (int i : pick) {
            a.push_back(cand[i].a);
            b.push_back(cand[i].b);
        }
        auto x = oracledetail::solve_square(std::move(a), std::move(b));
        if (!x) return;
        for (int j = 0; j < nv; ++j)
            if ((*x)[j] < *p.vars[j].lo || (*x)[j] > *p.vars[j].hi) return;
        for (const auto& c : p.cons) {
            Rational lhs = lpdetail::eval(c, *x);
            if (c.rel == LpRel::Le && lhs > c.rhs) return;
            if (c.rel == LpRel::Ge && lhs < c.rhs) return;
            if (c.rel == LpRel::Eq && lhs != c.rhs) return;
        }
        Rational obj = 0;
        for (int j = 0; j < nv; ++j) obj += p.objective[j] * (*x)[j];
        bool better = !best || (p.sense == LpSense::Min ? obj < best->objective_value
                                                        : obj > best->objective_value);
        if (better) {
            LpBasicSolution sol;
            sol.values = std::move(*x);
            sol.objective_value = std::move(obj);
            best = std::move(sol);
        }
    };
    auto rec = [&](auto&& self, int pos, int from) -> void {
        if (pos == nv) {
            consider();
            return;
        }
        for (int i = from; i < nc; ++i) {
            pick[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    if (nv == 0) {
        // Degenerate: objective is constant; feasibility is a direct check.
        LpBasicSolution sol;
        sol.objective_value = 0;
        for (const auto& c : p.cons) {
            Rational lhs = 0;
            if (c.rel == LpRel::Le && lhs > c.rhs) return std::nullopt;
            if (c.rel == LpRel::Ge && lhs < c.rhs) return std::nullopt;
            if (c.rel == LpRel::Eq && lhs != c.rhs) return std::nullopt;
        }
        return sol;
    }
    rec(rec, 0, 0);
    return best;
}

}  // namespace pvc

#endif  // PVC_ORACLE_HPP
