#ifndef PVC_MAXFLOW_HPP
#define PVC_MAXFLOW_HPP

#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "pvc/instance.hpp"

namespace pvc {

// ---------------------------------------------------------------------------
// Integral max flow (Dinic). Arcs are explored in insertion order, so the
// flow decomposition is deterministic for a fixed construction order.
// ---------------------------------------------------------------------------
struct FlowNetwork {
    struct Arc {
        int from = 0, to = 0;
        long capacity = 0;
    };
    int node_count = 0;
    int source = 0, sink = 0;
    std::vector<Arc> arcs;

    int add_node() { return node_count++; }
    int add_arc(int from, int to, long capacity) {
        require(from >= 0 && from < node_count && to >= 0 && to < node_count, "arc endpoint unknown");
        require(capacity >= 0, "arc capacity must be nonnegative");
        arcs.push_back({from, to, capacity});
        return static_cast<int>(arcs.size()) - 1;
    }
};

struct FlowResult {
    long value = 0;
    std::vector<long> flow;  // per arc, 0 <= flow <= capacity
};

inline FlowResult max_flow(const FlowNetwork& net) {
    struct E {
        int to;
        long cap;
        int rev;
        int orig;  // index into net.arcs, -1 for reverse arcs
    };
    std::vector<std::vector<E>> adj(net.node_count);
    for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i) {
        const auto& a = net.arcs[i];
        adj[a.from].push_back({a.to, a.capacity, static_cast<int>(adj[a.to].size()), i});
        adj[a.to].push_back({a.from, 0, static_cast<int>(adj[a.from].size()) - 1, -1});
    }
    std::vector<int> level(net.node_count), it(net.node_count);
    auto bfs = [&]() {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        q.push(net.source);
        level[net.source] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (const auto& e : adj[u])
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[u] + 1;
                    q.push(e.to);
                }
        }
        return level[net.sink] >= 0;
    };
    std::function<long(int, long)> dfs = [&](int u, long limit) -> long {
        if (u == net.sink) return limit;
        for (int& i = it[u]; i < static_cast<int>(adj[u].size()); ++i) {
            E& e = adj[u][i];
            if (e.cap > 0 && level[e.to] == level[u] + 1) {
                long d = dfs(e.to, std::min(limit, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    adj[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    };
    FlowResult res;
    if (net.source == net.sink) return res;
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        long f;
        while ((f = dfs(net.source, std::numeric_limits<long>::max())) > 0) res.value += f;
    }
    res.flow.assign(net.arcs.size(), 0);
    for (int u = 0; u < net.node_count; ++u)
        for (const auto& e : adj[u])
            if (e.orig >= 0) res.flow[e.orig] = net.arcs[e.orig].capacity - e.cap;
    return res;
}

// ---------------------------------------------------------------------------
// Assignment network for a copy vector x̄: saturating flow of value |E|
// exists iff x̄ admits a feasible integral edge assignment. The outlier arc
// capacity |E_g| - rho_g caps the number of edges of group g that may stay
// uncovered.
// ---------------------------------------------------------------------------
struct AssignmentNetwork {
    FlowNetwork net;
    std::vector<int> edge_node;        // per hyperedge
    std::vector<int> vertex_node;      // per vertex
    std::vector<int> outlier_node;     // per group (index g-1)
    std::vector<int> edge_vertex_arc_edge;    // arc index -> hyperedge id
    std::vector<int> edge_vertex_arc_vertex;  // arc index -> vertex id
};

inline AssignmentNetwork build_assignment_network(const PvcInstance& inst,
                                                  const std::vector<long>& copies) {
    require(static_cast<int>(copies.size()) == inst.n(), "copies size mismatch");
    AssignmentNetwork an;
    FlowNetwork& net = an.net;
    net.source = net.add_node();
    net.sink = net.add_node();
    an.edge_node.resize(inst.m());
    an.vertex_node.resize(inst.n());
    an.outlier_node.resize(inst.omega);
    for (int e = 0; e < inst.m(); ++e) an.edge_node[e] = net.add_node();
    for (int v = 0; v < inst.n(); ++v) an.vertex_node[v] = net.add_node();
    for (int g = 0; g < inst.omega; ++g) an.outlier_node[g] = net.add_node();
    for (int e = 0; e < inst.m(); ++e) net.add_arc(net.source, an.edge_node[e], 1);
    for (int e = 0; e < inst.m(); ++e) {
        for (int v : inst.edges[e].members) {
            int arc = net.add_arc(an.edge_node[e], an.vertex_node[v], 1);
            an.edge_vertex_arc_edge.resize(arc + 1, -1);
            an.edge_vertex_arc_vertex.resize(arc + 1, -1);
            an.edge_vertex_arc_edge[arc] = e;
            an.edge_vertex_arc_vertex[arc] = v;
        }
        net.add_arc(an.edge_node[e], an.outlier_node[inst.edges[e].group - 1], 1);
    }
    for (int v = 0; v < inst.n(); ++v) {
        require(copies[v] >= 0, "copies must be nonnegative");
        net.add_arc(an.vertex_node[v], net.sink,
                    static_cast<long>(inst.vertices[v].capacity) * copies[v]);
    }
    for (int g = 1; g <= inst.omega; ++g) {
        long slack = static_cast<long>(inst.group_edges(g).size()) - inst.thresholds[g - 1];
        net.add_arc(an.outlier_node[g - 1], net.sink, slack);
    }
    an.edge_vertex_arc_edge.resize(net.arcs.size(), -1);
    an.edge_vertex_arc_vertex.resize(net.arcs.size(), -1);
    return an;
}

// Turns an integral copy vector into a full integral solution, or decides
// that no feasible assignment exists for it.
inline std::optional<IntegralSolution> recover_assignment(const PvcInstance& inst,
                                                          const std::vector<long>& copies) {
    AssignmentNetwork an = build_assignment_network(inst, copies);
    FlowResult fr = max_flow(an.net);
    if (fr.value != inst.m()) return std::nullopt;
    IntegralSolution sol;
    sol.copies = copies;
    for (size_t a = 0; a < an.net.arcs.size(); ++a) {
        if (an.edge_vertex_arc_edge[a] >= 0 && fr.flow[a] == 1)
            sol.assignment[an.edge_vertex_arc_edge[a]] = an.edge_vertex_arc_vertex[a];
    }
    sol.cost = 0;
    for (int v = 0; v < inst.n(); ++v)
        sol.cost += Rational(copies[v]) * inst.vertices[v].weight;
    Verdict verdict = verify_solution(inst, sol);
    check_internal(verdict.feasible, "flow-recovered assignment failed verification");
    return sol;
}

}  // namespace pvc

#endif  // PVC_MAXFLOW_HPP
