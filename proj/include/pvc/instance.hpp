#ifndef PVC_INSTANCE_HPP
#define PVC_INSTANCE_HPP

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pvc/common.hpp"

namespace pvc {

enum class CapacityMode { Soft, Hard };

// ---------------------------------------------------------------------------
// Capacitated Partition Vertex Cover instance.
//
// Vertex and edge ids are dense 0..n-1 / 0..m-1; groups are 1..omega. The
// instance is immutable after validate() and safe to share across threads.
// ---------------------------------------------------------------------------
struct PvcInstance {
    struct Vertex {
        int id = 0;
        Rational weight;
        int capacity = 1;
    };
    struct Hyperedge {
        int id = 0;
        int group = 1;                 // 1..omega
        std::vector<int> members;      // sorted, duplicate-free, nonempty
    };

    std::vector<Vertex> vertices;
    std::vector<Hyperedge> edges;
    int omega = 1;
    std::vector<int> thresholds;  // thresholds[g-1] = rho_g
    CapacityMode mode = CapacityMode::Soft;
    int rank = 1;  // f = max_e |e|, cached by validate()

    int n() const { return static_cast<int>(vertices.size()); }
    int m() const { return static_cast<int>(edges.size()); }

    std::vector<int> group_edges(int g) const {
        std::vector<int> out;
        for (const auto& e : edges)
            if (e.group == g) out.push_back(e.id);
        return out;
    }

    int degree(int v) const {
        int d = 0;
        for (const auto& e : edges)
            if (std::binary_search(e.members.begin(), e.members.end(), v)) ++d;
        return d;
    }

    void validate() {
        require(!vertices.empty(), "instance has no vertices");
        require(omega >= 1, "omega must be positive");
        require(static_cast<int>(thresholds.size()) == omega, "one threshold per group required");
        for (int i = 0; i < n(); ++i) {
            require(vertices[i].id == i, "vertex ids must be dense 0..n-1");
            require(vertices[i].weight >= 0, "vertex weight must be nonnegative");
            require(vertices[i].capacity >= 1, "vertex capacity must be positive");
            if (mode == CapacityMode::Hard)
                require(vertices[i].weight == 1, "hard mode requires unit weights");
        }
        rank = 1;
        std::vector<int> group_sizes(omega, 0);
        for (int i = 0; i < m(); ++i) {
            auto& e = edges[i];
            require(e.id == i, "edge ids must be dense 0..m-1");
            require(!e.members.empty(), "hyperedge must be nonempty");
            require(e.group >= 1 && e.group <= omega, "edge group out of range");
            std::sort(e.members.begin(), e.members.end());
            require(std::adjacent_find(e.members.begin(), e.members.end()) == e.members.end(),
                    "duplicate member in hyperedge");
            for (int v : e.members) require(v >= 0 && v < n(), "hyperedge member id unknown");
            rank = std::max(rank, static_cast<int>(e.members.size()));
            group_sizes[e.group - 1]++;
        }
        for (int g = 1; g <= omega; ++g) {
            require(group_sizes[g - 1] >= 1, "group " + std::to_string(g) + " has no hyperedge");
            require(thresholds[g - 1] >= 1, "threshold must be positive");
            require(thresholds[g - 1] <= group_sizes[g - 1],
                    "threshold-infeasible: rho_" + std::to_string(g) + " exceeds |E_" +
                        std::to_string(g) + "|");
        }
    }

    std::string serialize() const {
        std::ostringstream out;
        out << "pvc " << n() << ' ' << m() << ' ' << omega << ' '
            << (mode == CapacityMode::Soft ? "soft" : "hard") << '\n';
        for (const auto& v : vertices)
            out << "v " << v.id << ' ' << rational_str(v.weight) << ' ' << v.capacity << '\n';
        for (const auto& e : edges) {
            out << "e " << e.id << ' ' << e.group;
            for (int v : e.members) out << ' ' << v;
            out << '\n';
        }
        for (int g = 1; g <= omega; ++g) out << "t " << g << ' ' << thresholds[g - 1] << '\n';
        return out.str();
    }
};

// Copy counts plus edge->vertex assignment for the covered edges.
struct IntegralSolution {
    std::vector<long> copies;        // per vertex id
    std::map<int, int> assignment;   // covered edge id -> vertex id
    Rational cost;
};

struct Verdict {
    bool feasible = false;
    std::vector<std::string> violated;
    Rational cost;
};

// Re-checks every problem constraint from scratch; trusts nothing the
// solver claims beyond the raw (copies, assignment) payload.
inline Verdict verify_solution(const PvcInstance& inst, const IntegralSolution& sol) {
    Verdict v;
    require(static_cast<int>(sol.copies.size()) == inst.n(), "copies vector size mismatch");
    Rational cost = 0;
    for (int i = 0; i < inst.n(); ++i) {
        require(sol.copies[i] >= 0, "negative copy count");
        if (inst.mode == CapacityMode::Hard && sol.copies[i] > 1)
            v.violated.push_back("hard-mode copies must be 0/1 (vertex " + std::to_string(i) + ")");
        cost += Rational(sol.copies[i]) * inst.vertices[i].weight;
    }
    std::vector<long> load(inst.n(), 0);
    std::vector<long> covered(inst.omega, 0);
    for (auto [eid, vid] : sol.assignment) {
        require(eid >= 0 && eid < inst.m(), "unknown edge id in assignment");
        require(vid >= 0 && vid < inst.n(), "unknown vertex id in assignment");
        const auto& e = inst.edges[eid];
        if (!std::binary_search(e.members.begin(), e.members.end(), vid))
            v.violated.push_back("edge " + std::to_string(eid) + " assigned outside its members");
        if (sol.copies[vid] < 1)
            v.violated.push_back("edge " + std::to_string(eid) + " assigned to unbought vertex");
        load[vid]++;
        covered[e.group - 1]++;
    }
    for (int i = 0; i < inst.n(); ++i)
        if (load[i] > static_cast<long>(inst.vertices[i].capacity) * sol.copies[i])
            v.violated.push_back("capacity exceeded at vertex " + std::to_string(i));
    for (int g = 1; g <= inst.omega; ++g)
        if (covered[g - 1] < inst.thresholds[g - 1])
            v.violated.push_back("group " + std::to_string(g) + " coverage below threshold");
    if (sol.cost != cost)
        v.violated.push_back("declared cost does not match copies");
    v.cost = cost;
    v.feasible = v.violated.empty();
    return v;
}

// ---------------------------------------------------------------------------
// Weighted Partition Edge Cover instance: simple graph, vertex groups.
// ---------------------------------------------------------------------------
struct PecInstance {
    struct Vertex {
        int id = 0;
        int group = 1;  // 1..omega
    };
    struct Edge {
        int id = 0;
        int u = 0, v = 0;
        Rational weight;
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    int omega = 1;
    std::vector<int> thresholds;  // rho_g >= 0

    int n() const { return static_cast<int>(vertices.size()); }
    int m() const { return static_cast<int>(edges.size()); }

    std::vector<int> incident(int v) const {
        std::vector<int> out;
        for (const auto& e : edges)
            if (e.u == v || e.v == v) out.push_back(e.id);
        return out;
    }

    void validate() {
        require(!vertices.empty(), "instance has no vertices");
        require(omega >= 1, "omega must be positive");
        require(static_cast<int>(thresholds.size()) == omega, "one threshold per group required");
        std::vector<int> group_sizes(omega, 0);
        for (int i = 0; i < n(); ++i) {
            require(vertices[i].id == i, "vertex ids must be dense 0..n-1");
            require(vertices[i].group >= 1 && vertices[i].group <= omega, "vertex group out of range");
            group_sizes[vertices[i].group - 1]++;
        }
        std::set<std::pair<int, int>> seen;
        for (int i = 0; i < m(); ++i) {
            auto& e = edges[i];
            require(e.id == i, "edge ids must be dense 0..m-1");
            require(e.u >= 0 && e.u < n() && e.v >= 0 && e.v < n(), "edge endpoint unknown");
            require(e.u != e.v, "self-loops not allowed");
            require(e.weight >= 0, "edge weight must be nonnegative");
            if (e.u > e.v) std::swap(e.u, e.v);
            require(seen.insert({e.u, e.v}).second, "parallel edge not allowed");
        }
        for (int g = 1; g <= omega; ++g) {
            require(thresholds[g - 1] >= 0, "threshold must be nonnegative");
            require(thresholds[g - 1] <= group_sizes[g - 1],
                    "threshold-infeasible: rho_" + std::to_string(g) + " exceeds |V_" +
                        std::to_string(g) + "|");
        }
    }

    std::string serialize() const {
        std::ostringstream out;
        out << "pec " << n() << ' ' << m() << ' ' << omega << '\n';
        for (const auto& v : vertices) out << "v " << v.id << ' ' << v.group << '\n';
        for (const auto& e : edges)
            out << "e " << e.id << ' ' << e.u << ' ' << e.v << ' ' << rational_str(e.weight)
                << '\n';
        for (int g = 1; g <= omega; ++g) out << "t " << g << ' ' << thresholds[g - 1] << '\n';
        return out.str();
    }
};

struct EdgeCoverSolution {
    std::vector<int> selected;  // edge ids, sorted
    Rational weight;
};

inline Verdict verify_solution(const PecInstance& inst, const EdgeCoverSolution& sol) {
    Verdict v;
    Rational w = 0;
    std::set<int> chosen;
    std::set<int> touched;
    for (int eid : sol.selected) {
        require(eid >= 0 && eid < inst.m(), "unknown edge id in cover");
        require(chosen.insert(eid).second, "duplicate edge id in cover");
        w += inst.edges[eid].weight;
        touched.insert(inst.edges[eid].u);
        touched.insert(inst.edges[eid].v);
    }
    std::vector<int> covered(inst.omega, 0);
    for (int vid : touched) covered[inst.vertices[vid].group - 1]++;
    for (int g = 1; g <= inst.omega; ++g)
        if (covered[g - 1] < inst.thresholds[g - 1])
            v.violated.push_back("group " + std::to_string(g) + " coverage below threshold");
    if (sol.weight != w) v.violated.push_back("declared weight does not match selection");
    v.cost = w;
    v.feasible = v.violated.empty();
    return v;
}

// ---------------------------------------------------------------------------
// Parsing. Line-oriented text with '#' comments, see serialize() for the
// canonical layout.
// ---------------------------------------------------------------------------
namespace detail {

struct LineReader {
    std::istream& in;
    int lineno = 0;

    // Next nonblank, non-comment line split into tokens.
    std::optional<std::vector<std::string>> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            std::vector<std::string> toks;
            std::string t;
            while (ss >> t) toks.push_back(t);
            if (!toks.empty()) return toks;
        }
        return std::nullopt;
    }
};

inline long to_long(const std::string& s, int lineno) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error(lineno, "expected integer, got '" + s + "'");
    }
}

inline Rational to_rational(const std::string& s, int lineno) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw parse_error(lineno, "expected rational, got '" + s + "'");
    }
}

}  // namespace detail

inline PvcInstance parse_pvc(std::istream& in) {
    using namespace detail;
    LineReader rd{in};
    auto hdr = rd.next();
    if (!hdr || hdr->size() != 5 || (*hdr)[0] != "pvc")
        throw parse_error(rd.lineno, "expected header 'pvc <n> <m> <omega> <soft|hard>'");
    PvcInstance inst;
    long n = to_long((*hdr)[1], rd.lineno);
    long m = to_long((*hdr)[2], rd.lineno);
    inst.omega = static_cast<int>(to_long((*hdr)[3], rd.lineno));
    if ((*hdr)[4] == "soft")
        inst.mode = CapacityMode::Soft;
    else if ((*hdr)[4] == "hard")
        inst.mode = CapacityMode::Hard;
    else
        throw parse_error(rd.lineno, "capacity mode must be 'soft' or 'hard'");
    if (n < 1 || m < 1 || inst.omega < 1) throw parse_error(rd.lineno, "n, m, omega must be positive");
    inst.vertices.resize(n);
    inst.edges.resize(m);
    inst.thresholds.assign(inst.omega, 0);
    std::vector<bool> vseen(n, false), eseen(m, false), tseen(inst.omega, false);
    long records = n + m + inst.omega;
    for (long i = 0; i < records; ++i) {
        auto rec = rd.next();
        if (!rec) throw parse_error(rd.lineno, "unexpected end of input");
        const auto& r = *rec;
        if (r[0] == "v") {
            if (r.size() != 4) throw parse_error(rd.lineno, "expected 'v <id> <weight> <capacity>'");
            long id = to_long(r[1], rd.lineno);
            if (id < 0 || id >= n) throw parse_error(rd.lineno, "vertex id out of range");
            if (vseen[id]) throw parse_error(rd.lineno, "duplicate vertex id");
            vseen[id] = true;
            inst.vertices[id] = {static_cast<int>(id), to_rational(r[2], rd.lineno),
                                 static_cast<int>(to_long(r[3], rd.lineno))};
        } else if (r[0] == "e") {
            if (r.size() < 4) throw parse_error(rd.lineno, "expected 'e <id> <group> <v1> ...'");
            long id = to_long(r[1], rd.lineno);
            if (id < 0 || id >= m) throw parse_error(rd.lineno, "edge id out of range");
            if (eseen[id]) throw parse_error(rd.lineno, "duplicate edge id");
            eseen[id] = true;
            PvcInstance::Hyperedge e;
            e.id = static_cast<int>(id);
            e.group = static_cast<int>(to_long(r[2], rd.lineno));
            for (size_t j = 3; j < r.size(); ++j)
                e.members.push_back(static_cast<int>(to_long(r[j], rd.lineno)));
            inst.edges[id] = std::move(e);
        } else if (r[0] == "t") {
            if (r.size() != 3) throw parse_error(rd.lineno, "expected 't <group> <rho>'");
            long g = to_long(r[1], rd.lineno);
            if (g < 1 || g > inst.omega) throw parse_error(rd.lineno, "threshold group out of range");
            if (tseen[g - 1]) throw parse_error(rd.lineno, "duplicate threshold");
            tseen[g - 1] = true;
            inst.thresholds[g - 1] = static_cast<int>(to_long(r[2], rd.lineno));
        } else {
            throw parse_error(rd.lineno, "unknown record '" + r[0] + "'");
        }
    }
    if (rd.next()) throw parse_error(rd.lineno, "trailing records after instance");
    try {
        inst.validate();
    } catch (const invariant_error& e) {
        throw parse_error(rd.lineno, e.what());
    }
    return inst;
}

inline PecInstance parse_pec(std::istream& in) {
    using namespace detail;
    LineReader rd{in};
    auto hdr = rd.next();
    if (!hdr || hdr->size() != 4 || (*hdr)[0] != "pec")
        throw parse_error(rd.lineno, "expected header 'pec <n> <m> <omega>'");
    PecInstance inst;
    long n = to_long((*hdr)[1], rd.lineno);
    long m = to_long((*hdr)[2], rd.lineno);
    inst.omega = static_cast<int>(to_long((*hdr)[3], rd.lineno));
    if (n < 1 || m < 0 || inst.omega < 1) throw parse_error(rd.lineno, "bad header counts");
    inst.vertices.resize(n);
    inst.edges.resize(m);
    inst.thresholds.assign(inst.omega, 0);
    std::vector<bool> vseen(n, false), eseen(std::max<long>(m, 1), false), tseen(inst.omega, false);
    long records = n + m + inst.omega;
    for (long i = 0; i < records; ++i) {
        auto rec = rd.next();
        if (!rec) throw parse_error(rd.lineno, "unexpected end of input");
        const auto& r = *rec;
        if (r[0] == "v") {
            if (r.size() != 3) throw parse_error(rd.lineno, "expected 'v <id> <group>'");
            long id = to_long(r[1], rd.lineno);
            if (id < 0 || id >= n) throw parse_error(rd.lineno, "vertex id out of range");
            if (vseen[id]) throw parse_error(rd.lineno, "duplicate vertex id");
            vseen[id] = true;
            inst.vertices[id] = {static_cast<int>(id),
                                 static_cast<int>(to_long(r[2], rd.lineno))};
        } else if (r[0] == "e") {
            if (r.size() != 5) throw parse_error(rd.lineno, "expected 'e <id> <u> <v> <weight>'");
            long id = to_long(r[1], rd.lineno);
            if (id < 0 || id >= m) throw parse_error(rd.lineno, "edge id out of range");
            if (eseen[id]) throw parse_error(rd.lineno, "duplicate edge id");
            eseen[id] = true;
            inst.edges[id] = {static_cast<int>(id), static_cast<int>(to_long(r[2], rd.lineno)),
                              static_cast<int>(to_long(r[3], rd.lineno)),
                              to_rational(r[4], rd.lineno)};
        } else if (r[0] == "t") {
            if (r.size() != 3) throw parse_error(rd.lineno, "expected 't <group> <rho>'");
            long g = to_long(r[1], rd.lineno);
            if (g < 1 || g > inst.omega) throw parse_error(rd.lineno, "threshold group out of range");
            if (tseen[g - 1]) throw parse_error(rd.lineno, "duplicate threshold");
            tseen[g - 1] = true;
            inst.thresholds[g - 1] = static_cast<int>(to_long(r[2], rd.lineno));
        } else {
            throw parse_error(rd.lineno, "unknown record '" + r[0] + "'");
        }
    }
    if (rd.next()) throw parse_error(rd.lineno, "trailing records after instance");
    try {
        inst.validate();
    } catch (const invariant_error& e) {
        throw parse_error(rd.lineno, e.what());
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Random generation. Deterministic for a fixed seed, and every emitted
// instance passes validate() by construction.
// ---------------------------------------------------------------------------
struct PvcGenParams {
    int n = 5;
    int m = 6;
    int f = 2;
    int omega = 1;
    int max_weight = 5;
    int max_capacity = 3;
    CapacityMode mode = CapacityMode::Soft;
};

inline PvcInstance generate_random_pvc(uint64_t seed, const PvcGenParams& p) {
    require(p.n >= 1 && p.m >= 1 && p.f >= 1 && p.omega >= 1, "params must be positive");
    require(p.max_weight >= 1 && p.max_capacity >= 1, "params must be positive");
    require(p.omega <= p.m, "omega exceeds edge count");
    Rng rng(seed);
    PvcInstance inst;
    inst.omega = p.omega;
    inst.mode = p.mode;
    for (int i = 0; i < p.n; ++i) {
        Rational w = p.mode == CapacityMode::Hard ? 1 : Rational(rng.range(1, p.max_weight));
        inst.vertices.push_back({i, w, static_cast<int>(rng.range(1, p.max_capacity))});
    }
    for (int i = 0; i < p.m; ++i) {
        PvcInstance::Hyperedge e;
        e.id = i;
        // First omega edges seed the groups so none is empty.
        e.group = i < p.omega ? i + 1 : static_cast<int>(rng.range(1, p.omega));
        int size = static_cast<int>(rng.range(1, std::min(p.f, p.n)));
        std::vector<int> pool(p.n);
        for (int j = 0; j < p.n; ++j) pool[j] = j;
        for (int j = 0; j < size; ++j) {
            int k = j + static_cast<int>(rng.below(pool.size() - j));
            std::swap(pool[j], pool[k]);
            e.members.push_back(pool[j]);
        }
        std::sort(e.members.begin(), e.members.end());
        inst.edges.push_back(std::move(e));
    }
    inst.thresholds.assign(p.omega, 0);
    for (int g = 1; g <= p.omega; ++g) {
        int sz = static_cast<int>(inst.group_edges(g).size());
        inst.thresholds[g - 1] = static_cast<int>(rng.range(1, sz));
    }
    inst.validate();
    return inst;
}

struct PecGenParams {
    int n = 6;
    int m = 8;
    int omega = 2;
    int max_weight = 9;
};

inline PecInstance generate_random_pec(uint64_t seed, const PecGenParams& p) {
    require(p.n >= 2 && p.m >= 0 && p.omega >= 1 && p.max_weight >= 1, "bad params");
    require(p.omega <= p.n, "omega exceeds vertex count");
    long max_edges = static_cast<long>(p.n) * (p.n - 1) / 2;
    require(p.m <= max_edges, "too many edges for a simple graph");
    Rng rng(seed);
    PecInstance inst;
    inst.omega = p.omega;
    for (int i = 0; i < p.n; ++i) {
        int g = i < p.omega ? i + 1 : static_cast<int>(rng.range(1, p.omega));
        inst.vertices.push_back({i, g});
    }
    std::set<std::pair<int, int>> used;
    for (int i = 0; i < p.m; ++i) {
        int u, v;
        do {
            u = static_cast<int>(rng.below(p.n));
            v = static_cast<int>(rng.below(p.n));
            if (u > v) std::swap(u, v);
        } while (u == v || used.count({u, v}));
        used.insert({u, v});
        inst.edges.push_back({i, u, v, Rational(rng.range(1, p.max_weight))});
    }
    inst.thresholds.assign(p.omega, 0);
    std::vector<int> gsz(p.omega, 0);
    for (const auto& v : inst.vertices) gsz[v.group - 1]++;
    for (int g = 1; g <= p.omega; ++g)
        inst.thresholds[g - 1] = static_cast<int>(rng.range(0, gsz[g - 1]));
    inst.validate();
    return inst;
}

}  // namespace pvc

#endif  // PVC_INSTANCE_HPP
