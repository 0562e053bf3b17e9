// Command-line front end: solve / oracle / gen / verify / bench.
//
// Reports are line-oriented `key=value` pairs (rationals as p/q), or a JSON
// object with --json. Exit codes: 0 solved, 1 infeasible, 2 usage or parse
// error, 3 internal consistency failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvc/edgecover.hpp"
#include "pvc/hardcap.hpp"
#include "pvc/instance.hpp"
#include "pvc/oracle.hpp"
#include "pvc/softcap.hpp"

namespace {

using json = nlohmann::json;

std::string fnv1a_digest(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string read_file(const std::string& path, std::string& out) {
    std::ifstream in(path);
    if (!in) return "cannot open " + path;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return "";
}

struct Report {
    std::vector<std::pair<std::string, std::string>> kv;
    void add(const std::string& k, const std::string& v) { kv.push_back({k, v}); }
    void print(bool as_json) const {
        if (as_json) {
            json j;
            for (const auto& [k, v] : kv) j[k] = v;
            std::cout << j.dump(2) << '\n';
        } else {
            for (const auto& [k, v] : kv) std::cout << k << '=' << v << '\n';
        }
    }
};

std::string copies_str(const std::vector<long>& copies) {
    std::ostringstream out;
    for (size_t v = 0; v < copies.size(); ++v) {
        if (v) out << ',';
        out << v << ':' << copies[v];
    }
    return out.str();
}

std::string assignment_str(const std::map<int, int>& a) {
    std::ostringstream out;
    bool first = true;
    for (auto [e, v] : a) {
        if (!first) out << ',';
        out << e << ':' << v;
        first = false;
    }
    return out.str();
}

std::string edge_list_str(const std::vector<int>& edges) {
    std::ostringstream out;
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i) out << ',';
        out << edges[i];
    }
    return out.str();
}

pvc::PvcInstance load_pvc(const std::string& path) {
    std::string text, err = read_file(path, text);
    if (!err.empty()) throw pvc::invariant_error(err);
    std::istringstream in(text);
    return pvc::parse_pvc(in);
}

pvc::PecInstance load_pec(const std::string& path) {
    std::string text, err = read_file(path, text);
    if (!err.empty()) throw pvc::invariant_error(err);
    std::istringstream in(text);
    return pvc::parse_pec(in);
}

pvc::MatchingGraph load_mg(const std::string& path) {
    std::string text, err = read_file(path, text);
    if (!err.empty()) throw pvc::invariant_error(err);
    std::istringstream in(text);
    pvc::detail::LineReader rd{in};
    auto hdr = rd.next();
    if (!hdr || hdr->size() != 3 || (*hdr)[0] != "mg")
        throw pvc::parse_error(rd.lineno, "expected header 'mg <n> <m>'");
    long n = pvc::detail::to_long((*hdr)[1], rd.lineno);
    long m = pvc::detail::to_long((*hdr)[2], rd.lineno);
    if (n < 0 || m < 0) throw pvc::parse_error(rd.lineno, "bad header counts");
    pvc::MatchingGraph g(static_cast<int>(n));
    for (long i = 0; i < m; ++i) {
        auto rec = rd.next();
        if (!rec || rec->size() != 4 || (*rec)[0] != "e")
            throw pvc::parse_error(rd.lineno, "expected 'e <u> <v> <weight>'");
        g.add_edge(static_cast<int>(pvc::detail::to_long((*rec)[1], rd.lineno)),
                   static_cast<int>(pvc::detail::to_long((*rec)[2], rd.lineno)),
                   pvc::detail::to_rational((*rec)[3], rd.lineno));
    }
    if (rd.next()) throw pvc::parse_error(rd.lineno, "trailing records");
    return g;
}

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

// Shared state for `solve` and `bench`.
struct Options {
    std::string problem, file;
    std::string epsilon = "1";
    bool as_json = false;
    long timeout_ms = 0;  // 0 = unlimited
    uint64_t seed = 1;
    int count = 10;
};

int finish(Report& rep, const Options& opt, long wall, bool feasible) {
    rep.add("wall_ms", std::to_string(wall));
    rep.print(opt.as_json);
    if (opt.timeout_ms > 0 && wall > opt.timeout_ms) {
        std::cerr << "error: run exceeded --timeout-ms budget\n";
        return 3;
    }
    return feasible ? 0 : 1;
}

int cmd_solve(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    bool feasible = false;
    if (opt.problem == "pvc-soft" || opt.problem == "pvc-hard") {
        pvc::PvcInstance inst = load_pvc(opt.file);
        rep.add("digest", fnv1a_digest(inst.serialize()));
        rep.add("solver", opt.problem);
        std::optional<pvc::IntegralSolution> sol;
        std::optional<pvc::Rational> lp_bound;
        if (opt.problem == "pvc-soft") {
            if (inst.mode != pvc::CapacityMode::Soft)
                throw pvc::invariant_error("instance is not in soft mode");
            pvc::SoftResult r = pvc::solve_soft(inst);
            sol = std::move(r.solution);
            lp_bound = std::move(r.lp_bound);
        } else {
            if (inst.mode != pvc::CapacityMode::Hard)
                throw pvc::invariant_error("instance is not in hard mode");
            pvc::HardResult r = pvc::solve_hard(inst, pvc::parse_rational(opt.epsilon));
            sol = std::move(r.solution);
            lp_bound = std::move(r.lp_bound);
        }
        if (sol) {
            pvc::Verdict v = pvc::verify_solution(inst, *sol);
            pvc::check_internal(v.feasible, "solver output failed verification");
            feasible = true;
            rep.add("feasible", "true");
            rep.add("cost", pvc::rational_str(sol->cost));
            if (lp_bound) {
                rep.add("lp_bound", pvc::rational_str(*lp_bound));
                if (*lp_bound > 0)
                    rep.add("ratio_vs_lp", pvc::rational_str(sol->cost / *lp_bound));
            }
            rep.add("copies", copies_str(sol->copies));
            rep.add("assignment", assignment_str(sol->assignment));
        } else {
            rep.add("feasible", "false");
        }
    } else if (opt.problem == "pec") {
        pvc::PecInstance inst = load_pec(opt.file);
        rep.add("digest", fnv1a_digest(inst.serialize()));
        rep.add("solver", "pec");
        auto sol = pvc::solve_pec(inst);
        if (sol) {
            feasible = true;
            rep.add("feasible", "true");
            rep.add("cost", pvc::rational_str(sol->weight));
            rep.add("edges", edge_list_str(sol->selected));
        } else {
            rep.add("feasible", "false");
        }
    } else {
        throw CLI::ValidationError("problem must be pvc-soft, pvc-hard or pec");
    }
    return finish(rep, opt, elapsed_ms(t0), feasible);
}

int cmd_oracle(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    bool feasible = false;
    if (opt.problem == "pvc") {
        pvc::PvcInstance inst = load_pvc(opt.file);
        rep.add("digest", fnv1a_digest(inst.serialize()));
        rep.add("solver", "oracle-pvc");
        auto sol = pvc::brute_pvc(inst);
        if (sol) {
            feasible = true;
            rep.add("feasible", "true");
            rep.add("cost", pvc::rational_str(sol->cost));
            rep.add("copies", copies_str(sol->copies));
        } else {
            rep.add("feasible", "false");
        }
    } else if (opt.problem == "pec") {
        pvc::PecInstance inst = load_pec(opt.file);
        rep.add("digest", fnv1a_digest(inst.serialize()));
        rep.add("solver", "oracle-pec");
        auto sol = pvc::brute_pec(inst);
        if (sol) {
            feasible = true;
            rep.add("feasible", "true");
            rep.add("cost", pvc::rational_str(sol->weight));
            rep.add("edges", edge_list_str(sol->selected));
        } else {
            rep.add("feasible", "false");
        }
    } else if (opt.problem == "matching") {
        pvc::MatchingGraph g = load_mg(opt.file);
        rep.add("solver", "oracle-matching");
        pvc::Matching m = pvc::brute_matching(g);
        feasible = true;
        rep.add("feasible", "true");
        rep.add("cost", pvc::rational_str(m.total_weight));
        std::ostringstream pairs;
        for (size_t i = 0; i < m.edges.size(); ++i) {
            if (i) pairs << ',';
            pairs << m.edges[i].first << '-' << m.edges[i].second;
        }
        rep.add("pairs", pairs.str());
    } else {
        throw CLI::ValidationError("oracle target must be pvc, pec or matching");
    }
    return finish(rep, opt, elapsed_ms(t0), feasible);
}

int cmd_verify(const Options& opt, const std::string& solution_file) {
    Report rep;
    std::string text, err = read_file(solution_file, text);
    if (!err.empty()) throw pvc::invariant_error(err);
    std::istringstream in(text);
    pvc::detail::LineReader rd{in};
    pvc::Verdict verdict;
    if (opt.problem == "pvc") {
        pvc::PvcInstance inst = load_pvc(opt.file);
        pvc::IntegralSolution sol;
        sol.copies.assign(inst.n(), 0);
        sol.cost = 0;
        while (auto rec = rd.next()) {
            const auto& r = *rec;
            if (r[0] == "x" && r.size() == 3) {
                long v = pvc::detail::to_long(r[1], rd.lineno);
                if (v < 0 || v >= inst.n()) throw pvc::parse_error(rd.lineno, "bad vertex id");
                sol.copies[v] = pvc::detail::to_long(r[2], rd.lineno);
            } else if (r[0] == "a" && r.size() == 3) {
                sol.assignment[static_cast<int>(pvc::detail::to_long(r[1], rd.lineno))] =
                    static_cast<int>(pvc::detail::to_long(r[2], rd.lineno));
            } else {
                throw pvc::parse_error(rd.lineno, "expected 'x <vertex> <copies>' or 'a <edge> <vertex>'");
            }
        }
        for (int v = 0; v < inst.n(); ++v)
            sol.cost += pvc::Rational(sol.copies[v]) * inst.vertices[v].weight;
        verdict = pvc::verify_solution(inst, sol);
        rep.add("cost", pvc::rational_str(verdict.cost));
    } else if (opt.problem == "pec") {
        pvc::PecInstance inst = load_pec(opt.file);
        pvc::EdgeCoverSolution sol;
        sol.weight = 0;
        while (auto rec = rd.next()) {
            const auto& r = *rec;
            if (r[0] != "s" || r.size() != 2)
                throw pvc::parse_error(rd.lineno, "expected 's <edge>'");
            long e = pvc::detail::to_long(r[1], rd.lineno);
            if (e < 0 || e >= inst.m()) throw pvc::parse_error(rd.lineno, "bad edge id");
            sol.selected.push_back(static_cast<int>(e));
            sol.weight += inst.edges[e].weight;
        }
        std::sort(sol.selected.begin(), sol.selected.end());
        verdict = pvc::verify_solution(inst, sol);
        rep.add("cost", pvc::rational_str(verdict.cost));
    } else {
        throw CLI::ValidationError("verify target must be pvc or pec");
    }
    rep.add("feasible", verdict.feasible ? "true" : "false");
    for (const auto& v : verdict.violated) rep.add("violation", v);
    rep.print(opt.as_json);
    return verdict.feasible ? 0 : 1;
}

int cmd_gen(const Options& opt, const pvc::PvcGenParams& pp, const pvc::PecGenParams& ep) {
    if (opt.problem == "pvc") {
        std::cout << pvc::generate_random_pvc(opt.seed, pp).serialize();
    } else if (opt.problem == "pec") {
        std::cout << pvc::generate_random_pec(opt.seed, ep).serialize();
    } else {
        throw CLI::ValidationError("gen target must be pvc or pec");
    }
    return 0;
}

int cmd_bench(const Options& opt) {
    pvc::Rational eps = pvc::parse_rational(opt.epsilon);
    for (int i = 0; i < opt.count; ++i) {
        uint64_t seed = opt.seed + static_cast<uint64_t>(i);
        std::ostringstream line;
        line << "seed=" << seed;
        if (opt.problem == "pec") {
            pvc::PecGenParams p;
            pvc::PecInstance inst = pvc::generate_random_pec(seed, p);
            auto sol = pvc::solve_pec(inst);
            auto opt_sol = pvc::brute_pec(inst);
            line << " feasible=" << (sol ? "true" : "false");
            if (sol) line << " cost=" << pvc::rational_str(sol->weight);
            if (opt_sol) line << " opt=" << pvc::rational_str(opt_sol->weight);
        } else {
            pvc::PvcGenParams p;
            p.mode = opt.problem == "pvc-hard" ? pvc::CapacityMode::Hard : pvc::CapacityMode::Soft;
            pvc::PvcInstance inst = pvc::generate_random_pvc(seed, p);
            std::optional<pvc::IntegralSolution> sol;
            std::optional<pvc::Rational> lp_bound;
            if (p.mode == pvc::CapacityMode::Soft) {
                pvc::SoftResult r = pvc::solve_soft(inst);
                sol = std::move(r.solution);
                lp_bound = std::move(r.lp_bound);
            } else {
                pvc::HardResult r = pvc::solve_hard(inst, eps);
                sol = std::move(r.solution);
                lp_bound = std::move(r.lp_bound);
            }
            auto opt_sol = pvc::brute_pvc(inst);
            line << " feasible=" << (sol ? "true" : "false");
            if (sol) line << " cost=" << pvc::rational_str(sol->cost);
            if (opt_sol) line << " opt=" << pvc::rational_str(opt_sol->cost);
            if (sol && opt_sol && opt_sol->cost > 0)
                line << " ratio=" << pvc::rational_str(sol->cost / opt_sol->cost);
            if (lp_bound) line << " lp_bound=" << pvc::rational_str(*lp_bound);
        }
        std::cout << line.str() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition covering solvers: vertex cover (soft/hard capacities) and edge cover"};
    app.require_subcommand(1);
    Options opt;
    pvc::PvcGenParams pvc_params;
    pvc::PecGenParams pec_params;
    std::string solution_file;
    int gen_mode_hard = 0;

    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->add_option("problem", opt.problem, "pvc-soft | pvc-hard | pec")->required();
    solve->add_option("file", opt.file, "instance file")->required();
    solve->add_option("--epsilon", opt.epsilon, "accuracy parameter for pvc-hard (rational p/q)");
    solve->add_option("--timeout-ms", opt.timeout_ms, "fail (exit 3) if the run takes longer");
    solve->add_flag("--json", opt.as_json, "emit the report as JSON");

    auto* oracle = app.add_subcommand("oracle", "Brute-force reference solver");
    oracle->add_option("problem", opt.problem, "pvc | pec | matching")->required();
    oracle->add_option("file", opt.file, "instance file")->required();
    oracle->add_flag("--json", opt.as_json, "emit the report as JSON");

    auto* verify = app.add_subcommand("verify", "Check a solution file against an instance");
    verify->add_option("problem", opt.problem, "pvc | pec")->required();
    verify->add_option("file", opt.file, "instance file")->required();
    verify->add_option("solution", solution_file, "solution file")->required();
    verify->add_flag("--json", opt.as_json, "emit the report as JSON");

    auto* gen = app.add_subcommand("gen", "Generate a random instance to stdout");
    gen->add_option("problem", opt.problem, "pvc | pec")->required();
    gen->add_option("--seed", opt.seed, "generator seed");
    gen->add_option("--n", pvc_params.n, "vertex count");
    gen->add_option("--m", pvc_params.m, "edge count");
    gen->add_option("--f", pvc_params.f, "maximum hyperedge size (pvc)");
    gen->add_option("--omega", pvc_params.omega, "group count");
    gen->add_option("--max-weight", pvc_params.max_weight, "maximum weight");
    gen->add_option("--max-capacity", pvc_params.max_capacity, "maximum capacity (pvc)");
    gen->add_flag("--hard", gen_mode_hard, "generate a hard-capacity instance (pvc)");

    auto* bench = app.add_subcommand("bench", "Sweep seeds and print one line per instance");
    bench->add_option("problem", opt.problem, "pvc-soft | pvc-hard | pec")->required();
    bench->add_option("--seed", opt.seed, "first seed");
    bench->add_option("--count", opt.count, "number of seeds");
    bench->add_option("--epsilon", opt.epsilon, "accuracy parameter for pvc-hard");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(opt);
        if (oracle->parsed()) return cmd_oracle(opt);
        if (verify->parsed()) return cmd_verify(opt, solution_file);
        if (gen->parsed()) {
            if (gen_mode_hard) pvc_params.mode = pvc::CapacityMode::Hard;
            pec_params.n = pvc_params.n;
            pec_params.m = pvc_params.m;
            pec_params.omega = pvc_params.omega;
            pec_params.max_weight = pvc_params.max_weight;
            return cmd_gen(opt, pvc_params, pec_params);
        }
        if (bench->parsed()) return cmd_bench(opt);
    } catch (const pvc::internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const pvc::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
