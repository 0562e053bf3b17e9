#ifndef PVC_HARDCAP_HPP
#define PVC_HARDCAP_HPP

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
// (f+eps)-approximation for hard-capacitated unweighted partition vertex
// cover: ascending-size enumeration for small optima, iterative LP rounding
// for the rest.
// ---------------------------------------------------------------------------

// How a yet-undecided vertex is boxed in the next LP:
//   Free — initial solve, plain 0 <= x <= 1 with full capacity;
//   High — observed x* > 1/f, boxed to [1/f, 1] with residual capacity;
//   Low  — observed 0 < x* < 1/f, boxed to [0, 1/f] with full capacity.
enum class VertexBand { Free, High, Low };

struct RoundingState {
    std::vector<int> xbar;           // -1 undecided, else fixed 0/1
    std::vector<char> edge_decided;  // edge moved into T
    std::vector<std::vector<long>> t_count;        // [vertex][group-1] = |T_v^g|
    std::map<std::pair<int, int>, Rational> ybar;  // frozen (edge, vertex) assignments
    std::vector<VertexBand> band;    // per vertex, meaningful while undecided

    explicit RoundingState(const PvcInstance& inst)
        : xbar(inst.n(), -1),
          edge_decided(inst.m(), 0),
          t_count(inst.n(), std::vector<long>(inst.omega, 0)),
          band(inst.n(), VertexBand::Free) {}

    bool decided(int v) const { return xbar[v] != -1; }
    long t_total(int v) const {
        long s = 0;
        for (long c : t_count[v]) s += c;
        return s;
    }
};

// Exact-comparison partition of the undecided vertices against 1/f.
struct Classification {
    std::vector<int> u_gt, u_eq, u_one, w, z;
};

inline Classification classify(const PvcInstance& inst, const RoundingState& st,
                               const std::vector<Rational>& xstar) {
    Rational thr = Rational(1) / inst.rank;
    Classification c;
    for (int v = 0; v < inst.n(); ++v) {
        if (st.decided(v)) continue;
        const Rational& x = xstar[v];
        if (x == 0)
            c.z.push_back(v);
        else if (x > thr)
            c.u_gt.push_back(v);
        else if (x == thr)
            c.u_eq.push_back(v);
        else
            c.w.push_back(v);
        if (x == 1) c.u_one.push_back(v);
    }
    return c;
}

struct LpIp {
    LpProblem lp;
    std::vector<int> x_var;                    // per vertex, -1 if decided
    std::map<std::pair<int, int>, int> y_var;  // (edge, vertex) -> variable
};

// The residual LP for the current rounding state. Decided vertices and edges
// contribute constants; band membership picks the box and the capacity form.
inline LpIp build_lp_ip(const PvcInstance& inst, const RoundingState& st) {
    Rational thr = Rational(1) / inst.rank;
    LpIp r;
    r.lp.sense = LpSense::Min;
    r.x_var.assign(inst.n(), -1);
    for (int v = 0; v < inst.n(); ++v) {
        if (st.decided(v)) continue;
        Rational lo = st.band[v] == VertexBand::High ? thr : Rational(0);
        Rational hi = st.band[v] == VertexBand::Low ? thr : Rational(1);
        r.x_var[v] = r.lp.add_var("x" + std::to_string(v), lo, hi);
        r.lp.objective[r.x_var[v]] = 1;
    }
    for (const auto& e : inst.edges) {
        if (st.edge_decided[e.id]) continue;
        for (int v : e.members)
            if (!st.decided(v))
                r.y_var[{e.id, v}] = r.lp.add_var(
                    "y" + std::to_string(e.id) + "_" + std::to_string(v), Rational(0),
                    std::nullopt);
    }

    auto frozen = [&](int e, int v) -> Rational {
        auto it = st.ybar.find({e, v});
        return it == st.ybar.end() ? Rational(0) : it->second;
    };
    for (const auto& e : inst.edges) {
        if (st.edge_decided[e.id]) continue;
        std::vector<std::pair<int, Rational>> row;
        Rational rhs = 1;
        for (int v : e.members) {
            if (st.decided(v))
                rhs -= frozen(e.id, v);
            else
                row.push_back({r.y_var.at({e.id, v}), Rational(1)});
        }
        if (!row.empty()) r.lp.add_constraint(std::move(row), LpRel::Le, std::move(rhs));
    }
    for (int g = 1; g <= inst.omega; ++g) {
        std::vector<std::pair<int, Rational>> row;
        Rational rhs = inst.thresholds[g - 1];
        for (int v = 0; v < inst.n(); ++v) rhs -= st.t_count[v][g - 1];
        for (int eid : inst.group_edges(g)) {
            if (st.edge_decided[eid]) continue;
            for (int v : inst.edges[eid].members) {
                if (st.decided(v))
                    rhs -= frozen(eid, v);
                else
                    row.push_back({r.y_var.at({eid, v}), Rational(1)});
            }
        }
        r.lp.add_constraint(std::move(row), LpRel::Ge, std::move(rhs));
    }
    for (const auto& [key, yj] : r.y_var)
        r.lp.add_constraint({{yj, Rational(1)}, {r.x_var[key.second], Rational(-1)}}, LpRel::Le,
                            Rational(0));
    for (int v = 0; v < inst.n(); ++v) {
        if (st.decided(v)) continue;
        std::vector<std::pair<int, Rational>> row;
        for (const auto& e : inst.edges) {
            if (st.edge_decided[e.id]) continue;
            if (std::binary_search(e.members.begin(), e.members.end(), v))
                row.push_back({r.y_var.at({e.id, v}), Rational(1)});
        }
        long residual_cap = st.band[v] == VertexBand::High
                                ? inst.vertices[v].capacity - st.t_total(v)
                                : inst.vertices[v].capacity;
        check_internal(residual_cap >= 0, "tight fixes exceeded a vertex capacity");
        row.push_back({r.x_var[v], Rational(-residual_cap)});
        r.lp.add_constraint(std::move(row), LpRel::Le, Rational(0));
    }
    return r;
}

struct RoundingTrace {
    long iterations = 0;
    long final_w = 0, final_u1 = 0;
    std::vector<Rational> charges;  // |S_L| + f * OPT_current per LP solve
    Rational initial_lp_opt;
};

// Algorithm: repeatedly solve the residual LP at an extreme point, fix
// zero vertices to 0, fully assign tight edges, fix boundary vertices to 1
// with frozen fractional assignments, and stop when an iteration changes
// nothing; all remaining vertices round up.
inline std::optional<std::pair<std::vector<long>, RoundingTrace>> iterative_rounding(
    const PvcInstance& inst) {
    RoundingState st(inst);
    RoundingTrace trace;
    std::vector<char> ever_high(inst.n(), 0);  // entered U at some iteration

    LpIp lp = build_lp_ip(inst, st);
    LpResult lr = lp_solve(lp.lp);
    if (lr.status == LpStatus::Infeasible) return std::nullopt;
    check_internal(lr.status == LpStatus::Optimal, "residual LP cannot be unbounded");
    check_internal(lp_verify_basic(lp.lp, lr.sol), "residual LP solution is not an extreme point");
    trace.initial_lp_opt = lr.sol.objective_value;

    long fixed_ones = 0;
    auto charge = [&](const Rational& opt) -> Rational {
        return Rational(fixed_ones) + inst.rank * opt;
    };
    trace.charges.push_back(charge(lr.sol.objective_value));

    const long max_iters = inst.n() + inst.m() + 1;
    Classification cls;
    for (;;) {
        check_internal(++trace.iterations <= max_iters, "rounding loop exceeded its bound");
        std::vector<Rational> xstar(inst.n(), Rational(0));
        for (int v = 0; v < inst.n(); ++v)
            if (lp.x_var[v] != -1) xstar[v] = lr.sol.values[lp.x_var[v]];
        cls = classify(inst, st, xstar);
        for (int v : cls.u_gt) ever_high[v] = 1;
        for (int v : cls.u_eq) ever_high[v] = 1;

        bool progress = false;
        for (int v : cls.z) {  // zero-valued vertices are out
            st.xbar[v] = 0;
            for (const auto& e : inst.edges)
                if (!st.edge_decided[e.id] &&
                    std::binary_search(e.members.begin(), e.members.end(), v))
                    st.ybar[{e.id, v}] = 0;
            progress = true;
        }
        // Tight edges: fully assign y*_{e,u} = x*_u > 0 pairs, ascending ids.
        std::vector<int> u_all = cls.u_gt;
        u_all.insert(u_all.end(), cls.u_eq.begin(), cls.u_eq.end());
        std::sort(u_all.begin(), u_all.end());
        for (const auto& e : inst.edges) {
            if (st.edge_decided[e.id]) continue;
            for (int u : u_all) {
                if (!std::binary_search(e.members.begin(), e.members.end(), u)) continue;
                auto it = lp.y_var.find({e.id, u});
                if (it == lp.y_var.end()) continue;
                if (lr.sol.values[it->second] != xstar[u]) continue;
                check_internal(st.t_total(u) < inst.vertices[u].capacity,
                               "tight fix would overflow a vertex capacity");
                st.edge_decided[e.id] = 1;
                st.t_count[u][inst.edges[e.id].group - 1] += 1;
                // The edge is now fully covered; frozen fractions on it are moot.
                for (int v : e.members) st.ybar.erase({e.id, v});
                progress = true;
                break;
            }
        }
        for (int u : cls.u_eq) {  // boundary vertices become bought
            st.xbar[u] = 1;
            ++fixed_ones;
            for (const auto& e : inst.edges) {
                if (st.edge_decided[e.id]) continue;
                if (!std::binary_search(e.members.begin(), e.members.end(), u)) continue;
                auto it = lp.y_var.find({e.id, u});
                if (it != lp.y_var.end()) st.ybar[{e.id, u}] = lr.sol.values[it->second];
            }
            progress = true;
        }
        if (!progress) break;

        // Re-box the still-undecided vertices from the current extreme point.
        Rational thr = Rational(1) / inst.rank;
        for (int v = 0; v < inst.n(); ++v) {
            if (st.decided(v)) continue;
            st.band[v] = xstar[v] > thr ? VertexBand::High : VertexBand::Low;
            check_internal(st.band[v] == VertexBand::High || st.t_total(v) == 0,
                           "a low-band vertex acquired decided edges");
        }
        lp = build_lp_ip(inst, st);
        lr = lp_solve(lp.lp);
        check_internal(lr.status == LpStatus::Optimal,
                       "residual LP lost feasibility, contradicting the shrinking-region argument");
        check_internal(lp_verify_basic(lp.lp, lr.sol),
                       "residual LP solution is not an extreme point");
        Rational ch = charge(lr.sol.objective_value);
        check_internal(ch <= trace.charges.back(), "rounding charge increased across iterations");
        trace.charges.push_back(std::move(ch));
    }

    trace.final_w = static_cast<long>(cls.w.size());
    trace.final_u1 = static_cast<long>(cls.u_one.size());
    check_internal(trace.final_w <= trace.final_u1 + inst.omega,
                   "final extreme point has too many low-band vertices");

    std::vector<long> copies(inst.n(), 0);
    for (int v = 0; v < inst.n(); ++v) {
        if (st.decided(v)) {
            copies[v] = st.xbar[v];
        } else {
            Rational x = lp.x_var[v] == -1 ? Rational(0) : lr.sol.values[lp.x_var[v]];
            copies[v] = rat_ceil_long(x);
        }
    }
    for (int v = 0; v < inst.n(); ++v)
        check_internal(!ever_high[v] || copies[v] == 1,
                       "a vertex that entered U did not end at 1");
    Rational cost = 0;
    for (long c : copies) cost += c;
    check_internal(cost <= inst.rank * trace.initial_lp_opt + inst.omega,
                   "rounding cost exceeds its guarantee");
    return std::make_pair(std::move(copies), std::move(trace));
}

// Ascending-size subset scan; the first feasible subset is an exact optimum.
inline std::optional<IntegralSolution> enumerate_small(const PvcInstance& inst, long kappa_max) {
    std::vector<long> copies(inst.n(), 0);
    for (long size = 1; size <= std::min<long>(kappa_max, inst.n()); ++size) {
        std::vector<int> pick(size);
        std::optional<IntegralSolution> found;
        auto rec = [&](auto&& self, long pos, int from) -> bool {
            if (pos == size) {
                std::fill(copies.begin(), copies.end(), 0);
                for (int v : pick) copies[v] = 1;
                auto sol = recover_assignment(inst, copies);
                if (sol) {
                    found = std::move(sol);
                    return true;
                }
                return false;
            }
            for (int v = from; v < inst.n(); ++v) {
                pick[pos] = v;
                if (self(self, pos + 1, v + 1)) return true;
            }
            return false;
        };
        if (rec(rec, 0, 0)) return found;
    }
    return std::nullopt;
}

struct HardResult {
    std::optional<IntegralSolution> solution;
    std::optional<Rational> lp_bound;  // initial LP optimum when rounding ran
    bool used_enumeration = false;
    std::optional<RoundingTrace> trace;
};

inline HardResult solve_hard(const PvcInstance& inst, const Rational& epsilon) {
    require(inst.mode == CapacityMode::Hard, "solve_hard needs a hard-capacity instance");
    require(epsilon > 0, "epsilon must be positive");
    HardResult res;
    std::vector<long> ones(inst.n(), 1);
    if (!recover_assignment(inst, ones)) return res;  // even buying everything fails

    long kappa_max = rat_ceil_long(Rational(inst.omega) / epsilon);
    res.solution = enumerate_small(inst, kappa_max);
    if (res.solution) {
        res.used_enumeration = true;
        return res;
    }
    auto rounded = iterative_rounding(inst);
    check_internal(rounded.has_value(), "LP infeasible although buying everything is feasible");
    res.lp_bound = rounded->second.initial_lp_opt;
    res.trace = std::move(rounded->second);
    auto sol = recover_assignment(inst, rounded->first);
    check_internal(sol.has_value(), "rounded copy vector failed the assignment network");
    res.solution = std::move(sol);
    return res;
}

}  // namespace pvc

#endif  // PVC_HARDCAP_HPP
