#ifndef PVC_LP_HPP
#define PVC_LP_HPP

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pvc/common.hpp"

namespace pvc {

// ---------------------------------------------------------------------------
// General LP in inequality form over exact rationals.
// ---------------------------------------------------------------------------
enum class LpRel { Le, Ge, Eq };
enum class LpSense { Min, Max };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
    struct Var {
        std::string name;
        std::optional<Rational> lo;  // nullopt = -inf
        std::optional<Rational> hi;  // nullopt = +inf
    };
    struct Constraint {
        std::vector<std::pair<int, Rational>> coeffs;  // var index -> coefficient
        LpRel rel = LpRel::Le;
        Rational rhs;
    };

    std::vector<Var> vars;
    std::vector<Constraint> cons;
    LpSense sense = LpSense::Min;
    std::vector<Rational> objective;  // dense, resized with vars

    int add_var(std::string name, std::optional<Rational> lo, std::optional<Rational> hi) {
        if (lo && hi) require(*lo <= *hi, "variable bounds cross: " + name);
        vars.push_back({std::move(name), std::move(lo), std::move(hi)});
        objective.emplace_back(0);
        return static_cast<int>(vars.size()) - 1;
    }

    void add_constraint(std::vector<std::pair<int, Rational>> coeffs, LpRel rel, Rational rhs) {
        for (auto& [j, c] : coeffs)
            require(j >= 0 && j < static_cast<int>(vars.size()), "constraint references unknown variable");
        cons.push_back({std::move(coeffs), rel, std::move(rhs)});
    }

    int nvars() const { return static_cast<int>(vars.size()); }
    int ncons() const { return static_cast<int>(cons.size()); }

    // Debug dump in a simple text form for golden tests.
    std::string dump() const {
        std::ostringstream out;
        out << (sense == LpSense::Min ? "min" : "max");
        for (int j = 0; j < nvars(); ++j)
            if (objective[j] != 0) out << ' ' << rational_str(objective[j]) << '*' << vars[j].name;
        out << "\nst\n";
        for (const auto& c : cons) {
            bool first = true;
            for (const auto& [j, a] : c.coeffs) {
                if (!first) out << " + ";
                out << rational_str(a) << '*' << vars[j].name;
                first = false;
            }
            if (first) out << '0';
            out << (c.rel == LpRel::Le ? " <= " : c.rel == LpRel::Ge ? " >= " : " = ")
                << rational_str(c.rhs) << '\n';
        }
        for (const auto& v : vars) {
            out << (v.lo ? rational_str(*v.lo) : std::string("-inf")) << " <= " << v.name
                << " <= " << (v.hi ? rational_str(*v.hi) : std::string("+inf")) << '\n';
        }
        return out.str();
    }
};

// Identifiers of tight rows at an extreme point: constraint i -> i,
// lower bound of var j -> ncons + 2j, upper bound -> ncons + 2j + 1.
struct LpBasicSolution {
    std::vector<Rational> values;
    Rational objective_value;
    std::vector<int> tight;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    LpBasicSolution sol;  // valid iff status == Optimal
};

namespace lpdetail {

inline Rational eval(const LpProblem::Constraint& c, const std::vector<Rational>& x) {
    Rational s = 0;
    for (const auto& [j, a] : c.coeffs) s += a * x[j];
    return s;
}

// Rank of a rational matrix by Gaussian elimination.
inline int rank(std::vector<std::vector<Rational>> m) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational factor = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        ++r;
    }
    return r;
}

// Dense rational simplex tableau. Dantzig pricing with a Bland fallback
// after a run of degenerate pivots, which keeps termination guaranteed and
// the pivot sequence deterministic.
class Tableau {
public:
    // rows: ncols coefficients plus rhs.
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> cost;  // reduced-cost row, cost.back() = -objective
    std::vector<int> basis;      // column basic in each row
    int ncols = 0;

    void pivot(int r, int c) {
        auto& pr = rows[r];
        Rational inv = 1 / pr[c];
        if (inv != 1)
            for (auto& x : pr) x *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            Rational f = rows[i][c];
            if (f == 0) continue;
            auto& ri = rows[i];
            for (int j = 0; j <= ncols; ++j)
                if (pr[j] != 0) ri[j] -= f * pr[j];
        }
        Rational f = cost[c];
        if (f != 0)
            for (int j = 0; j <= ncols; ++j)
                if (pr[j] != 0) cost[j] -= f * pr[j];
        basis[r] = c;
    }

    // Minimizes the current cost row. allowed[j] == false bans a column from
    // entering. Returns false on unboundedness.
    bool optimize(const std::vector<bool>& allowed) {
        long degenerate_run = 0;
        const long bland_after = 2 * (static_cast<long>(rows.size()) + ncols) + 10;
        Rational last_obj = cost[ncols];
        for (;;) {
            bool bland = degenerate_run > bland_after;
            int enter = -1;
            if (bland) {
                for (int j = 0; j < ncols; ++j)
                    if (allowed[j] && cost[j] < 0) {
                        enter = j;
                        break;
                    }
            } else {
                const Rational* best = nullptr;
                for (int j = 0; j < ncols; ++j)
                    if (allowed[j] && cost[j] < 0 && (!best || cost[j] < *best)) {
                        best = &cost[j];
                        enter = j;
                    }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best_ratio;
            for (size_t i = 0; i < rows.size(); ++i) {
                const Rational& a = rows[i][enter];
                if (a <= 0) continue;
                Rational ratio = rows[i][ncols] / a;
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
            if (cost[ncols] == last_obj)
                ++degenerate_run;
            else {
                degenerate_run = 0;
                last_obj = cost[ncols];
            }
        }
    }
};

}  // namespace lpdetail

// ---------------------------------------------------------------------------
// Primal simplex over exact rationals. Phase 1 with artificials, phase 2 on
// the real objective. Always returns a vertex of the feasible polytope
// (provided the polytope contains no line, which holds whenever every
// variable has at least one finite bound).
// ---------------------------------------------------------------------------
inline LpResult lp_solve(const LpProblem& p) {
    using namespace lpdetail;
    const int nv = p.nvars();

    // Structural columns after shifting bounds to x' >= 0. For each original
    // variable: (column, sign, offset[, second column for free split]).
    struct Mapping {
        int col = -1;
        int col_neg = -1;  // second column of a free split
        Rational sign = 1;
        Rational offset = 0;
    };
    std::vector<Mapping> map(nv);

    struct Row {
        std::vector<Rational> a;  // dense over structural columns
        LpRel rel;
        Rational rhs;
    };
    std::vector<Row> rows;

    int ncols = 0;
    for (int j = 0; j < nv; ++j) {
        const auto& v = p.vars[j];
        if (v.lo) {
            map[j] = {ncols++, -1, 1, *v.lo};
        } else if (v.hi) {
            map[j] = {ncols++, -1, -1, *v.hi};  // x = hi - x'
        } else {
            map[j].col = ncols++;
            map[j].col_neg = ncols++;  // x = x+ - x-
        }
    }
    auto add_row = [&](LpRel rel, Rational rhs) -> Row& {
        rows.push_back({std::vector<Rational>(ncols, Rational(0)), rel, std::move(rhs)});
        return rows.back();
    };
    // Upper bounds of lower-bounded variables become rows x' <= hi - lo.
    for (int j = 0; j < nv; ++j) {
        const auto& v = p.vars[j];
        if (v.lo && v.hi && *v.hi != *v.lo) {
            auto& r = add_row(LpRel::Le, *v.hi - *v.lo);
            r.a[map[j].col] = 1;
        } else if (v.lo && v.hi && *v.hi == *v.lo) {
            auto& r = add_row(LpRel::Eq, 0);
            r.a[map[j].col] = 1;
        }
    }
    for (const auto& c : p.cons) {
        Rational rhs = c.rhs;
        auto& r = add_row(c.rel, 0);
        for (const auto& [j, a] : c.coeffs) {
            const auto& m = map[j];
            rhs -= a * m.offset;
            if (m.col_neg >= 0) {
                r.a[m.col] += a;
                r.a[m.col_neg] -= a;
            } else {
                r.a[m.col] += a * m.sign;
            }
        }
        r.rhs = std::move(rhs);
    }

    const int nrows = static_cast<int>(rows.size());
    // Columns: structural | slacks | artificials.
    int nslack = 0;
    for (const auto& r : rows)
        if (r.rel != LpRel::Eq) ++nslack;

    Tableau t;
    t.ncols = ncols + nslack + nrows;  // artificials allocated per row, unused ones stay zero
    t.rows.assign(nrows, std::vector<Rational>(t.ncols + 1, Rational(0)));
    t.basis.assign(nrows, -1);
    std::vector<bool> is_artificial(t.ncols, false);

    int slack_at = ncols;
    int art_at = ncols + nslack;
    std::vector<int> art_cols;
    for (int i = 0; i < nrows; ++i) {
        auto& tr = t.rows[i];
        bool negate = rows[i].rhs < 0;
        for (int j = 0; j < ncols; ++j) tr[j] = negate ? -rows[i].a[j] : rows[i].a[j];
        tr[t.ncols] = negate ? -rows[i].rhs : rows[i].rhs;
        Rational slack_sign = 0;
        if (rows[i].rel == LpRel::Le) slack_sign = negate ? -1 : 1;
        if (rows[i].rel == LpRel::Ge) slack_sign = negate ? 1 : -1;
        if (slack_sign != 0) tr[slack_at] = slack_sign;
        if (slack_sign == 1) {
            t.basis[i] = slack_at;  // natural initial basis
        } else {
            int ac = art_at++;
            tr[ac] = 1;
            t.basis[i] = ac;
            is_artificial[ac] = true;
            art_cols.push_back(ac);
        }
        if (slack_sign != 0) ++slack_at;
    }

    std::vector<bool> allowed(t.ncols, true);

    // Phase 1: minimize the sum of artificials.
    if (!art_cols.empty()) {
        t.cost.assign(t.ncols + 1, Rational(0));
        for (int ac : art_cols) t.cost[ac] = 1;
        for (int i = 0; i < nrows; ++i)
            if (is_artificial[t.basis[i]])
                for (int j = 0; j <= t.ncols; ++j) t.cost[j] -= t.rows[i][j];
        bool ok = t.optimize(allowed);
        check_internal(ok, "phase-1 objective is bounded by construction");
        if (t.cost[t.ncols] != 0) return {LpStatus::Infeasible, {}};
        // Drive leftover artificials out of the basis; a fully zero row is
        // redundant and gets dropped.
        for (int i = static_cast<int>(t.rows.size()) - 1; i >= 0; --i) {
            if (!is_artificial[t.basis[i]]) continue;
            int piv = -1;
            for (int j = 0; j < t.ncols; ++j)
                if (!is_artificial[j] && t.rows[i][j] != 0) {
                    piv = j;
                    break;
                }
            if (piv >= 0) {
                t.pivot(i, piv);
            } else {
                t.rows.erase(t.rows.begin() + i);
                t.basis.erase(t.basis.begin() + i);
            }
        }
        for (int j = 0; j < t.ncols; ++j)
            if (is_artificial[j]) allowed[j] = false;
    }

    // Phase 2: the real objective over structural columns.
    std::vector<Rational> c2(t.ncols + 1, Rational(0));
    Rational const_term = 0;
    Rational obj_sign = p.sense == LpSense::Min ? 1 : -1;
    for (int j = 0; j < nv; ++j) {
        Rational cj = obj_sign * p.objective[j];
        if (cj == 0) continue;
        const auto& m = map[j];
        const_term += cj * m.offset;
        if (m.col_neg >= 0) {
            c2[m.col] += cj;
            c2[m.col_neg] -= cj;
        } else {
            c2[m.col] += cj * m.sign;
        }
    }
    t.cost = c2;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        Rational cb = c2[t.basis[i]];
        if (cb == 0) continue;
        for (int j = 0; j <= t.ncols; ++j)
            if (t.rows[i][j] != 0) t.cost[j] -= cb * t.rows[i][j];
    }
    if (!t.optimize(allowed)) return {LpStatus::Unbounded, {}};

    // Read structural values and map back to the original variables.
    std::vector<Rational> xs(ncols, Rational(0));
    for (size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < ncols) xs[t.basis[i]] = t.rows[i][t.ncols];
    LpBasicSolution sol;
    sol.values.resize(nv);
    for (int j = 0; j < nv; ++j) {
        const auto& m = map[j];
        if (m.col_neg >= 0)
            sol.values[j] = xs[m.col] - xs[m.col_neg];
        else
            sol.values[j] = m.offset + m.sign * xs[m.col];
    }
    sol.objective_value = 0;
    for (int j = 0; j < nv; ++j) sol.objective_value += p.objective[j] * sol.values[j];
    for (int i = 0; i < p.ncons(); ++i)
        if (eval(p.cons[i], sol.values) == p.cons[i].rhs) sol.tight.push_back(i);
    for (int j = 0; j < nv; ++j) {
        if (p.vars[j].lo && sol.values[j] == *p.vars[j].lo) sol.tight.push_back(p.ncons() + 2 * j);
        if (p.vars[j].hi && sol.values[j] == *p.vars[j].hi)
            sol.tight.push_back(p.ncons() + 2 * j + 1);
    }
    return {LpStatus::Optimal, std::move(sol)};
}

// True iff the solution satisfies every constraint and bound exactly and its
// tight rows span the full variable space (certifying an extreme point).
inline bool lp_verify_basic(const LpProblem& p, const LpBasicSolution& sol) {
    using namespace lpdetail;
    if (static_cast<int>(sol.values.size()) != p.nvars()) return false;
    for (const auto& c : p.cons) {
        Rational lhs = eval(c, sol.values);
        if (c.rel == LpRel::Le && lhs > c.rhs) return false;
        if (c.rel == LpRel::Ge && lhs < c.rhs) return false;
        if (c.rel == LpRel::Eq && lhs != c.rhs) return false;
    }
    for (int j = 0; j < p.nvars(); ++j) {
        if (p.vars[j].lo && sol.values[j] < *p.vars[j].lo) return false;
        if (p.vars[j].hi && sol.values[j] > *p.vars[j].hi) return false;
    }
    std::vector<std::vector<Rational>> tight_rows;
    for (const auto& c : p.cons) {
        if (eval(c, sol.values) != c.rhs) continue;
        std::vector<Rational> row(p.nvars(), Rational(0));
        for (const auto& [j, a] : c.coeffs) row[j] += a;
        tight_rows.push_back(std::move(row));
    }
    for (int j = 0; j < p.nvars(); ++j) {
        bool lo = p.vars[j].lo && sol.values[j] == *p.vars[j].lo;
        bool hi = p.vars[j].hi && sol.values[j] == *p.vars[j].hi;
        if (lo || hi) {
            std::vector<Rational> row(p.nvars(), Rational(0));
            row[j] = 1;
            tight_rows.push_back(std::move(row));
        }
    }
    return rank(std::move(tight_rows)) >= p.nvars();
}

}  // namespace pvc

#endif  // PVC_LP_HPP
