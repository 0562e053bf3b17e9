#ifndef PVC_MATCHING_HPP
#define PVC_MATCHING_HPP

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "pvc/common.hpp"

namespace pvc {

// Undirected weighted graph for matching. Negative-weight edges are dropped
// at construction (they never appear in a maximum-weight matching) and of
// parallel edges only the heaviest survives.
struct MatchingGraph {
    struct Edge {
        int u = 0, v = 0;
        Rational weight;
    };
    int node_count = 0;
    std::vector<Edge> edges;

    explicit MatchingGraph(int nodes = 0) : node_count(nodes) {}

    void add_edge(int u, int v, Rational weight) {
        require(u >= 0 && u < node_count && v >= 0 && v < node_count, "edge endpoint unknown");
        require(u != v, "self-loops not allowed in matching graph");
        if (weight < 0) return;
        if (u > v) std::swap(u, v);
        auto it = index_.find({u, v});
        if (it != index_.end()) {
            if (weight > edges[it->second].weight) edges[it->second].weight = std::move(weight);
            return;
        }
        index_[{u, v}] = static_cast<int>(edges.size());
        edges.push_back({u, v, std::move(weight)});
    }

    const Rational* weight_of(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = index_.find({u, v});
        return it == index_.end() ? nullptr : &edges[it->second].weight;
    }

private:
    std::map<std::pair<int, int>, int> index_;
};

struct Matching {
    std::vector<std::pair<int, int>> edges;  // matched pairs, u < v, sorted
    Rational total_weight;
    std::vector<int> mate;  // node -> partner, -1 if unmatched
};

// ---------------------------------------------------------------------------
// Maximum-weight matching in general graphs: the blossom algorithm in its
// O(n^3) form, with exact rational dual variables. Every call verifies the
// LP-duality certificate (nonnegative slacks, complementary slackness, zero
// duals on exposed vertices, full blossoms) before returning.
// ---------------------------------------------------------------------------
namespace blossom_detail {

class Solver {
public:
    explicit Solver(const MatchingGraph& g) : g_(g) {
        nvertex = g.node_count;
        nedge = static_cast<int>(g.edges.size());
        endpoint.resize(2 * nedge);
        neighbend.assign(nvertex, {});
        for (int k = 0; k < nedge; ++k) {
            endpoint[2 * k] = g.edges[k].u;
            endpoint[2 * k + 1] = g.edges[k].v;
            neighbend[g.edges[k].u].push_back(2 * k + 1);
            neighbend[g.edges[k].v].push_back(2 * k);
        }
        Rational maxweight = 0;
        for (const auto& e : g.edges) maxweight = std::max(maxweight, e.weight);
        mate.assign(nvertex, -1);
        label.assign(2 * nvertex, 0);
        labelend.assign(2 * nvertex, -1);
        inblossom.resize(nvertex);
        for (int v = 0; v < nvertex; ++v) inblossom[v] = v;
        blossomparent.assign(2 * nvertex, -1);
        blossomchilds.assign(2 * nvertex, {});
        blossombase.assign(2 * nvertex, -1);
        for (int v = 0; v < nvertex; ++v) blossombase[v] = v;
        blossomendps.assign(2 * nvertex, {});
        bestedge.assign(2 * nvertex, -1);
        blossombestedges.assign(2 * nvertex, {});
        has_bestedges.assign(2 * nvertex, false);
        for (int b = 2 * nvertex - 1; b >= nvertex; --b) unusedblossoms.push_back(b);
        dualvar.assign(2 * nvertex, Rational(0));
        for (int v = 0; v < nvertex; ++v) dualvar[v] = maxweight;
        allowedge.assign(nedge, false);
    }

    std::vector<int> run() {
        for (int stage = 0; stage < nvertex; ++stage) {
            std::fill(label.begin(), label.end(), 0);
            std::fill(bestedge.begin(), bestedge.end(), -1);
            for (int b = nvertex; b < 2 * nvertex; ++b) {
                blossombestedges[b].clear();
                has_bestedges[b] = false;
            }
            std::fill(allowedge.begin(), allowedge.end(), false);
            queue.clear();
            for (int v = 0; v < nvertex; ++v)
                if (mate[v] == -1 && label[inblossom[v]] == 0) assign_label(v, 1, -1);
            bool augmented = false;
            for (;;) {
                while (!queue.empty() && !augmented) {
                    int v = queue.back();
                    queue.pop_back();
                    for (int p : neighbend[v]) {
                        int k = p / 2;
                        int w = endpoint[p];
                        if (inblossom[v] == inblossom[w]) continue;
                        Rational kslack;
                        if (!allowedge[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge[k] = true;
                        }
                        if (allowedge[k]) {
                            if (label[inblossom[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label[inblossom[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label[w] == 0) {
                                label[w] = 2;
                                labelend[w] = p ^ 1;
                            }
                        } else if (label[inblossom[w]] == 1) {
                            int b = inblossom[v];
                            if (bestedge[b] == -1 || kslack < slack(bestedge[b])) bestedge[b] = k;
                        } else if (label[w] == 0) {
                            if (bestedge[w] == -1 || kslack < slack(bestedge[w])) bestedge[w] = k;
                        }
                    }
                }
                if (augmented) break;

                // Dual adjustment: the smallest delta that creates new
                // tight structure or empties a dual variable.
                int deltatype = 1;
                Rational delta = dualvar[0];
                for (int v = 1; v < nvertex; ++v) delta = std::min(delta, dualvar[v]);
                int deltaedge = -1, deltablossom = -1;
                for (int v = 0; v < nvertex; ++v) {
                    if (label[inblossom[v]] == 0 && bestedge[v] != -1) {
                        Rational d = slack(bestedge[v]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * nvertex; ++b) {
                    if (blossomparent[b] == -1 && label[b] == 1 && bestedge[b] != -1) {
                        Rational d = slack(bestedge[b]) / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge[b];
                        }
                    }
                }
                for (int b = nvertex; b < 2 * nvertex; ++b) {
                    if (blossombase[b] >= 0 && blossomparent[b] == -1 && label[b] == 2 &&
                        dualvar[b] < delta) {
                        delta = dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                for (int v = 0; v < nvertex; ++v) {
                    if (label[inblossom[v]] == 1)
                        dualvar[v] -= delta;
                    else if (label[inblossom[v]] == 2)
                        dualvar[v] += delta;
                }
                for (int b = nvertex; b < 2 * nvertex; ++b) {
                    if (blossombase[b] >= 0 && blossomparent[b] == -1) {
                        if (label[b] == 1)
                            dualvar[b] += delta;
                        else if (label[b] == 2)
                            dualvar[b] -= delta;
                    }
                }
                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge[deltaedge] = true;
                    int i = g_.edges[deltaedge].u;
                    if (label[inblossom[i]] == 0) i = g_.edges[deltaedge].v;
                    queue.push_back(i);
                } else if (deltatype == 3) {
                    allowedge[deltaedge] = true;
                    queue.push_back(g_.edges[deltaedge].u);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (int b = nvertex; b < 2 * nvertex; ++b)
                if (blossomparent[b] == -1 && blossombase[b] >= 0 && label[b] == 1 &&
                    dualvar[b] == 0)
                    expand_blossom(b, true);
        }
        verify_optimum();
        std::vector<int> result(nvertex, -1);
        for (int v = 0; v < nvertex; ++v)
            if (mate[v] >= 0) result[v] = endpoint[mate[v]];
        for (int v = 0; v < nvertex; ++v)
            check_internal(result[v] == -1 || result[result[v]] == v,
                           "matching partner map is not an involution");
        return result;
    }

private:
    const MatchingGraph& g_;
    int nvertex = 0, nedge = 0;
    std::vector<int> endpoint;
    std::vector<std::vector<int>> neighbend;
    std::vector<int> mate;       // vertex -> remote endpoint index, -1 free
    std::vector<int> label;      // 0 free, 1 S, 2 T (+4 breadcrumb)
    std::vector<int> labelend;
    std::vector<int> inblossom;
    std::vector<int> blossomparent;
    std::vector<std::vector<int>> blossomchilds;
    std::vector<int> blossombase;
    std::vector<std::vector<int>> blossomendps;
    std::vector<int> bestedge;
    std::vector<std::vector<int>> blossombestedges;
    std::vector<char> has_bestedges;
    std::vector<int> unusedblossoms;
    std::vector<Rational> dualvar;
    std::vector<char> allowedge;
    std::vector<int> queue;

    Rational slack(int k) const {
        return dualvar[g_.edges[k].u] + dualvar[g_.edges[k].v] - 2 * g_.edges[k].weight;
    }

    void blossom_leaves(int b, std::vector<int>& out) const {
        if (b < nvertex) {
            out.push_back(b);
        } else {
            for (int t : blossomchilds[b]) blossom_leaves(t, out);
        }
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom[w];
        check_internal(label[w] == 0 && label[b] == 0, "relabeling a labeled node");
        label[w] = label[b] = t;
        labelend[w] = labelend[b] = p;
        bestedge[w] = bestedge[b] = -1;
        if (t == 1) {
            std::vector<int> leaves;
            blossom_leaves(b, leaves);
            queue.insert(queue.end(), leaves.begin(), leaves.end());
        } else {
            int base = blossombase[b];
            check_internal(mate[base] >= 0, "T-blossom base must be matched");
            assign_label(endpoint[mate[base]], 1, mate[base] ^ 1);
        }
    }

    // Trace back from v and w to find a common ancestor of the alternating
    // trees, or -1 if augmenting is possible.
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom[v];
            if (label[b] & 4) {
                base = blossombase[b];
                break;
            }
            path.push_back(b);
            label[b] |= 4;
            if (labelend[b] == -1) {
                v = -1;
            } else {
                v = endpoint[labelend[b]];
                b = inblossom[v];
                v = endpoint[labelend[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label[b] &= ~4;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = g_.edges[k].u, w = g_.edges[k].v;
        int bb = inblossom[base];
        int bv = inblossom[v];
        int bw = inblossom[w];
        check_internal(!unusedblossoms.empty(), "ran out of blossom slots");
        int b = unusedblossoms.back();
        unusedblossoms.pop_back();
        blossombase[b] = base;
        blossomparent[b] = -1;
        blossomparent[bb] = b;
        std::vector<int> path, endps;
        while (bv != bb) {
            blossomparent[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend[bv]);
            v = endpoint[labelend[bv]];
            bv = inblossom[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend[bw] ^ 1);
            w = endpoint[labelend[bw]];
            bw = inblossom[w];
        }
        blossomchilds[b] = std::move(path);
        blossomendps[b] = std::move(endps);
        check_internal(label[bb] == 1, "blossom base must be an S-node");
        label[b] = 1;
        labelend[b] = labelend[bb];
        dualvar[b] = 0;
        std::vector<int> leaves;
        blossom_leaves(b, leaves);
        for (int u : leaves) {
            if (label[inblossom[u]] == 2) queue.push_back(u);
            inblossom[u] = b;
        }
        // Recompute the best-edge cache for the merged blossom.
        std::vector<int> bestedgeto(2 * nvertex, -1);
        for (int child : blossomchilds[b]) {
            std::vector<std::vector<int>> nblists;
            if (!has_bestedges[child]) {
                std::vector<int> cl;
                blossom_leaves(child, cl);
                for (int u : cl) {
                    std::vector<int> ks;
                    for (int p : neighbend[u]) ks.push_back(p / 2);
                    nblists.push_back(std::move(ks));
                }
            } else {
                nblists.push_back(blossombestedges[child]);
            }
            for (const auto& nblist : nblists) {
                for (int kk : nblist) {
                    int i = g_.edges[kk].u, j = g_.edges[kk].v;
                    if (inblossom[j] == b) std::swap(i, j);
                    int bj = inblossom[j];
                    if (bj != b && label[bj] == 1 &&
                        (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
                        bestedgeto[bj] = kk;
                }
            }
            blossombestedges[child].clear();
            has_bestedges[child] = false;
            bestedge[child] = -1;
        }
        blossombestedges[b].clear();
        for (int kk : bestedgeto)
            if (kk != -1) blossombestedges[b].push_back(kk);
        has_bestedges[b] = true;
        bestedge[b] = -1;
        for (int kk : blossombestedges[b])
            if (bestedge[b] == -1 || slack(kk) < slack(bestedge[b])) bestedge[b] = kk;
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds[b]) {
            blossomparent[s] = -1;
            if (s < nvertex) {
                inblossom[s] = s;
            } else if (endstage && dualvar[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                std::vector<int> leaves;
                blossom_leaves(s, leaves);
                for (int u : leaves) inblossom[u] = s;
            }
        }
        if (!endstage && label[b] == 2) {
            check_internal(labelend[b] >= 0, "expanding an unreached T-blossom");
            int entrychild = inblossom[endpoint[labelend[b] ^ 1]];
            int nchilds = static_cast<int>(blossomchilds[b].size());
            int j = 0;
            while (blossomchilds[b][j] != entrychild) ++j;
            int jstep, endptrick;
            if (j & 1) {
                j -= nchilds;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            auto child_at = [&](int idx) { return blossomchilds[b][(idx % nchilds + nchilds) % nchilds]; };
            auto endp_at = [&](int idx) { return blossomendps[b][(idx % nchilds + nchilds) % nchilds]; };
            int p = labelend[b];
            while (j != 0) {
                label[endpoint[p ^ 1]] = 0;
                label[endpoint[endp_at(j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint[p ^ 1], 2, p);
                allowedge[endp_at(j - endptrick) / 2] = true;
                j += jstep;
                p = endp_at(j - endptrick) ^ endptrick;
                allowedge[p / 2] = true;
                j += jstep;
            }
            int bv = child_at(j);
            label[endpoint[p ^ 1]] = 2;
            label[bv] = 2;
            labelend[endpoint[p ^ 1]] = p;
            labelend[bv] = p;
            bestedge[bv] = -1;
            j += jstep;
            while (child_at(j) != entrychild) {
                bv = child_at(j);
                if (label[bv] == 1) {
                    j += jstep;
                    continue;
                }
                std::vector<int> leaves;
                blossom_leaves(bv, leaves);
                int reached = -1;
                for (int u : leaves)
                    if (label[u] != 0) {
                        reached = u;
                        break;
                    }
                if (reached >= 0) {
                    check_internal(label[reached] == 2, "reached leaf must carry a T label");
                    check_internal(inblossom[reached] == bv, "leaf not in its sub-blossom");
                    label[reached] = 0;
                    label[endpoint[mate[blossombase[bv]]]] = 0;
                    assign_label(reached, 2, labelend[reached]);
                }
                j += jstep;
            }
        }
        label[b] = -1;
        labelend[b] = -1;
        blossomchilds[b].clear();
        blossomendps[b].clear();
        blossombase[b] = -1;
        blossombestedges[b].clear();
        has_bestedges[b] = false;
        bestedge[b] = -1;
        unusedblossoms.push_back(b);
    }

    // Swap matched/unmatched edges along the path from v down to the base
    // of blossom b.
    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent[t] != b) t = blossomparent[t];
        if (t >= nvertex) augment_blossom(t, v);
        int nchilds = static_cast<int>(blossomchilds[b].size());
        int i = 0;
        while (blossomchilds[b][i] != t) ++i;
        int j = i, jstep, endptrick;
        if (i & 1) {
            j -= nchilds;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        auto child_at = [&](int idx) { return blossomchilds[b][(idx % nchilds + nchilds) % nchilds]; };
        auto endp_at = [&](int idx) { return blossomendps[b][(idx % nchilds + nchilds) % nchilds]; };
        while (j != 0) {
            j += jstep;
            t = child_at(j);
            int p = endp_at(j - endptrick) ^ endptrick;
            if (t >= nvertex) augment_blossom(t, endpoint[p]);
            j += jstep;
            t = child_at(j);
            if (t >= nvertex) augment_blossom(t, endpoint[p ^ 1]);
            mate[endpoint[p]] = p ^ 1;
            mate[endpoint[p ^ 1]] = p;
        }
        std::rotate(blossomchilds[b].begin(), blossomchilds[b].begin() + i, blossomchilds[b].end());
        std::rotate(blossomendps[b].begin(), blossomendps[b].begin() + i, blossomendps[b].end());
        blossombase[b] = blossombase[blossomchilds[b][0]];
        check_internal(blossombase[b] == v, "blossom base mismatch after augmenting");
    }

    void augment_matching(int k) {
        int v = g_.edges[k].u, w = g_.edges[k].v;
        const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (auto [s, p] : starts) {
            for (;;) {
                int bs = inblossom[s];
                check_internal(label[bs] == 1, "augmenting path must start in an S-blossom");
                if (bs >= nvertex) augment_blossom(bs, s);
                mate[s] = p;
                if (labelend[bs] == -1) break;  // reached a single vertex
                int t = endpoint[labelend[bs]];
                int bt = inblossom[t];
                check_internal(label[bt] == 2, "path must alternate S/T");
                check_internal(labelend[bt] >= 0, "T-blossom without entry edge");
                s = endpoint[labelend[bt]];
                int j = endpoint[labelend[bt] ^ 1];
                check_internal(blossombase[bt] == t, "T-blossom base mismatch");
                if (bt >= nvertex) augment_blossom(bt, j);
                mate[j] = labelend[bt];
                p = labelend[bt] ^ 1;
            }
        }
    }

    // LP-duality certificate for the final matching.
    void verify_optimum() const {
        for (int v = 0; v < nvertex; ++v)
            check_internal(dualvar[v] >= 0, "negative vertex dual");
        for (int b = nvertex; b < 2 * nvertex; ++b)
            check_internal(blossombase[b] < 0 || dualvar[b] >= 0, "negative blossom dual");
        for (int k = 0; k < nedge; ++k) {
            int i = g_.edges[k].u, j = g_.edges[k].v;
            Rational s = dualvar[i] + dualvar[j] - 2 * g_.edges[k].weight;
            std::vector<int> ib{i}, jb{j};
            while (blossomparent[ib.back()] != -1) ib.push_back(blossomparent[ib.back()]);
            while (blossomparent[jb.back()] != -1) jb.push_back(blossomparent[jb.back()]);
            std::reverse(ib.begin(), ib.end());
            std::reverse(jb.begin(), jb.end());
            for (size_t t = 0; t < std::min(ib.size(), jb.size()); ++t) {
                if (ib[t] != jb[t]) break;
                s += 2 * dualvar[ib[t]];
            }
            check_internal(s >= 0, "negative slack in duality certificate");
            bool matched = (mate[i] >= 0 && mate[i] / 2 == k) || (mate[j] >= 0 && mate[j] / 2 == k);
            if (matched) {
                check_internal(mate[i] / 2 == k && mate[j] / 2 == k, "one-sided matched edge");
                check_internal(s == 0, "matched edge with positive slack");
            }
        }
        for (int v = 0; v < nvertex; ++v)
            check_internal(mate[v] != -1 || dualvar[v] == 0, "exposed vertex with positive dual");
        for (int b = nvertex; b < 2 * nvertex; ++b) {
            if (blossombase[b] >= 0 && dualvar[b] > 0) {
                check_internal(blossomendps[b].size() % 2 == 1, "even blossom");
                for (size_t t = 1; t < blossomendps[b].size(); t += 2) {
                    int p = blossomendps[b][t];
                    check_internal(mate[endpoint[p]] == (p ^ 1), "positive-dual blossom not full");
                    check_internal(mate[endpoint[p ^ 1]] == p, "positive-dual blossom not full");
                }
            }
        }
    }
};

}  // namespace blossom_detail

inline Matching max_weight_matching(const MatchingGraph& g) {
    Matching m;
    m.mate.assign(g.node_count, -1);
    m.total_weight = 0;
    if (g.node_count == 0 || g.edges.empty()) return m;
    blossom_detail::Solver solver(g);
    m.mate = solver.run();
    for (int v = 0; v < g.node_count; ++v) {
        int w = m.mate[v];
        if (w > v) {
            const Rational* wt = g.weight_of(v, w);
            check_internal(wt != nullptr, "matched pair is not a graph edge");
            m.edges.push_back({v, w});
            m.total_weight += *wt;
        }
    }
    return m;
}

}  // namespace pvc

#endif  // PVC_MATCHING_HPP
