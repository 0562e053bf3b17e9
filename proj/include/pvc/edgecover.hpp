#ifndef PVC_EDGECOVER_HPP
#define PVC_EDGECOVER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pvc/instance.hpp"
#include "pvc/matching.hpp"

namespace pvc {

// ---------------------------------------------------------------------------
// Exact weighted partition edge cover via two reductions:
//   PEC -> weighted budgeted matching (auxiliary partner node per vertex),
//   budgeted matching -> plain maximum-weight matching (big-M weights).
// ---------------------------------------------------------------------------

// Budgeted-matching instance. Nodes with group 0 are auxiliary: they carry
// no threshold obligation and exactly one incident edge.
struct WbmInstance {
    struct Node {
        int id = 0;
        int group = 0;        // 1..omega, or 0 for auxiliary
        int pec_vertex = -1;  // provenance, -1 for hand-built instances
    };
    struct Edge {
        int id = 0;
        int u = 0, v = 0;
        Rational weight;
        int pec_edge = -1;  // PEC edge this one stands for, -1 if none
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    int omega = 1;
    std::vector<int> thresholds;

    int n_grouped() const {
        int c = 0;
        for (const auto& nd : nodes)
            if (nd.group != 0) ++c;
        return c;
    }
};

// Adds one auxiliary partner per non-isolated vertex, joined by an edge
// priced at the vertex's cheapest incident edge (ties: lowest edge id).
// Matching the auxiliary edge stands for covering the vertex via that
// cheapest edge.
inline WbmInstance pec_to_wbm(const PecInstance& pec) {
    WbmInstance w;
    w.omega = pec.omega;
    w.thresholds = pec.thresholds;
    for (const auto& v : pec.vertices) w.nodes.push_back({v.id, v.group, v.id});
    for (const auto& e : pec.edges)
        w.edges.push_back({e.id, e.u, e.v, e.weight, e.id});
    for (const auto& v : pec.vertices) {
        int cheapest = -1;
        for (const auto& e : pec.edges) {
            if (e.u != v.id && e.v != v.id) continue;
            if (cheapest == -1 || e.weight < pec.edges[cheapest].weight) cheapest = e.id;
        }
        if (cheapest == -1) continue;  // isolated vertex: no auxiliary partner
        int aux = static_cast<int>(w.nodes.size());
        w.nodes.push_back({aux, 0, v.id});
        w.edges.push_back({static_cast<int>(w.edges.size()), v.id, aux,
                           pec.edges[cheapest].weight, cheapest});
    }
    return w;
}

// Big-M graph: grouped endpoints are worth M each, so a maximum-weight
// matching first maximizes the number of matched grouped nodes and then
// minimizes the total original price. Gadget nodes soak up the grouped
// nodes a group may leave uncovered.
struct BigMGraph {
    MatchingGraph graph;
    Rational M;
    int n_grouped = 0;
    std::vector<std::vector<int>> gadget_nodes;       // per group: the V'_g node ids
    std::map<std::pair<int, int>, int> pair_to_edge;  // graph pair -> wbm edge id
};

inline BigMGraph wbm_to_bigm(const WbmInstance& w) {
    BigMGraph b;
    b.M = 1;
    for (const auto& e : w.edges) b.M += e.weight;
    b.n_grouped = w.n_grouped();

    std::vector<int> group_size(w.omega, 0);
    for (const auto& nd : w.nodes)
        if (nd.group != 0) group_size[nd.group - 1]++;
    int total_nodes = static_cast<int>(w.nodes.size());
    b.gadget_nodes.assign(w.omega, {});
    for (int g = 1; g <= w.omega; ++g) {
        require(w.thresholds[g - 1] >= 0 && w.thresholds[g - 1] <= group_size[g - 1],
                "threshold exceeds group size");
        for (int i = 0; i < group_size[g - 1] - w.thresholds[g - 1]; ++i)
            b.gadget_nodes[g - 1].push_back(total_nodes++);
    }

    b.graph = MatchingGraph(total_nodes);
    for (const auto& e : w.edges) {
        // Each grouped endpoint contributes M; auxiliary endpoints are free.
        Rational value = -e.weight;
        if (w.nodes[e.u].group != 0) value += b.M;
        if (w.nodes[e.v].group != 0) value += b.M;
        check_internal(value > 0, "big-M transform produced a non-positive weight");
        b.graph.add_edge(e.u, e.v, std::move(value));
        b.pair_to_edge[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.id;
    }
    for (const auto& nd : w.nodes) {
        if (nd.group == 0) continue;
        for (int gadget : b.gadget_nodes[nd.group - 1]) b.graph.add_edge(nd.id, gadget, b.M);
    }
    return b;
}

struct WbmSolution {
    std::vector<int> matched_edges;  // wbm edge ids, sorted
    Rational weight;                 // sum of their original prices
    Rational matching_weight;        // total big-M matching weight
};

// Maps a maximum matching of the big-M graph back to a budgeted matching,
// or reports infeasibility via the weight threshold: every grouped node is
// matched iff the weight strictly exceeds (n_grouped - 1) * M.
inline std::optional<WbmSolution> bigm_to_wbm_solution(const Matching& matching,
                                                       const BigMGraph& b,
                                                       const WbmInstance& w) {
    if (matching.total_weight <= Rational(b.n_grouped - 1) * b.M) return std::nullopt;
    WbmSolution s;
    s.matching_weight = matching.total_weight;
    s.weight = 0;
    for (auto [u, v] : matching.edges) {
        auto it = b.pair_to_edge.find({u, v});
        if (it == b.pair_to_edge.end()) continue;  // gadget edge
        s.matched_edges.push_back(it->second);
        s.weight += w.edges[it->second].weight;
    }
    std::sort(s.matched_edges.begin(), s.matched_edges.end());

    // Bookkeeping identity: all grouped nodes matched, M per node, prices off.
    check_internal(s.matching_weight == Rational(b.n_grouped) * b.M - s.weight,
                   "big-M weight identity broken");
    std::vector<int> grouped_matched(w.omega, 0);
    for (int eid : s.matched_edges) {
        const auto& e = w.edges[eid];
        if (w.nodes[e.u].group != 0) grouped_matched[w.nodes[e.u].group - 1]++;
        if (w.nodes[e.v].group != 0) grouped_matched[w.nodes[e.v].group - 1]++;
    }
    for (int g = 1; g <= w.omega; ++g)
        check_internal(grouped_matched[g - 1] >= w.thresholds[g - 1],
                       "budgeted matching misses a group threshold");
    return s;
}

inline std::optional<WbmSolution> solve_wbm(const WbmInstance& w) {
    BigMGraph b = wbm_to_bigm(w);
    Matching m = max_weight_matching(b.graph);
    return bigm_to_wbm_solution(m, b, w);
}

// Final PEC extraction: original matched edges map to themselves, auxiliary
// matched edges nominate the vertex's cheapest incident edge; duplicates
// collapse (only a shared zero-weight nominee can produce one).
inline std::optional<EdgeCoverSolution> extract_solution(const Matching& matching,
                                                         const BigMGraph& bigm,
                                                         const WbmInstance& wbm,
                                                         const PecInstance& pec) {
    auto wsol = bigm_to_wbm_solution(matching, bigm, wbm);
    if (!wsol) return std::nullopt;
    EdgeCoverSolution cover;
    for (int eid : wsol->matched_edges) {
        check_internal(wbm.edges[eid].pec_edge >= 0, "matched edge without provenance");
        cover.selected.push_back(wbm.edges[eid].pec_edge);
    }
    std::sort(cover.selected.begin(), cover.selected.end());
    cover.selected.erase(std::unique(cover.selected.begin(), cover.selected.end()),
                         cover.selected.end());
    cover.weight = 0;
    for (int eid : cover.selected) cover.weight += pec.edges[eid].weight;
    check_internal(cover.weight == wsol->weight,
                   "extracted cover weight deviates from the budgeted-matching optimum");
    Verdict v = verify_solution(pec, cover);
    check_internal(v.feasible, "extracted cover fails verification");
    return cover;
}

inline std::optional<EdgeCoverSolution> solve_pec(const PecInstance& pec) {
    WbmInstance wbm = pec_to_wbm(pec);
    BigMGraph bigm = wbm_to_bigm(wbm);
    Matching matching = max_weight_matching(bigm.graph);
    return extract_solution(matching, bigm, wbm, pec);
}

}  // namespace pvc

#endif  // PVC_EDGECOVER_HPP
