#include "twtree/report.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "twtree/isocert.hpp"
#include "twtree/orbits.hpp"
#include "twtree/refinement.hpp"

namespace twtree {

Report analyze(const Graph& g, int root, const std::string& format_name, int cap) {
    auto start = std::chrono::steady_clock::now();
    Report r;
    r.format = format_name;
    r.n = g.n;
    r.root = root;
    r.n_squared = g.n * g.n;

    RootedGraph rg = bfs_levels(g, root);
    r.levels = rg.levels;
    TreenessVerdict verdict = treeness_check(rg);
    r.is_tree = verdict.is_tree();
    if (!r.is_tree) {
        r.witness = verdict;
    } else {
        RootedTree t = as_tree(rg);
        ClassPartition cp = level_classes(t);
        OrbitPartition op = orbit_partition(t, cp);
        r.classes = cp.classes;
        r.orbits = op.orbits;
        r.h_trivial = op.count() == t.n();
        r.certificate = certificate(t).text;
        if (g.n <= cap) {
            TOperators ops = build_operators(rg);
            r.dim_w0 = principal_module(ops, cap).dim();
            r.dim_t = dim_T(ops, cap);
            r.t_full = *r.dim_t == r.n_squared;
        }
    }
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return r;
}

std::string report_to_json(const Report& r) {
    nlohmann::json j;
    j["schema"] = "v1";
    j["input"] = {{"format", r.format}, {"n", r.n}, {"root", r.root}};
    j["levels"] = r.levels;
    j["flags"]["is_tree"] = r.is_tree;
    if (r.witness) {
        nlohmann::json w;
        if (r.witness->kind == TreenessVerdict::Kind::intra_level_edge) {
            w["kind"] = "intra-level-edge";
            w["level"] = r.witness->level;
        } else {
            w["kind"] = "multi-parent";
            w["vertex"] = r.witness->vertex;
        }
        j["witness"] = w;
    }
    if (r.classes) j["classes"] = *r.classes;
    if (r.orbits) j["orbits"] = *r.orbits;
    j["dims"]["n2"] = r.n_squared;
    j["dims"]["W0"] = r.dim_w0 ? nlohmann::json(*r.dim_w0) : nlohmann::json();
    j["dims"]["T"] = r.dim_t ? nlohmann::json(*r.dim_t) : nlohmann::json();
    j["flags"]["H_trivial"] = r.h_trivial ? nlohmann::json(*r.h_trivial) : nlohmann::json();
    j["flags"]["T_full"] = r.t_full ? nlohmann::json(*r.t_full) : nlohmann::json();
    if (r.certificate) j["certificate"] = *r.certificate;
    return j.dump(2) + "\n";
}

namespace {

std::string join_group(const std::vector<int>& vs) {
    std::string s = "{";
    for (size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
    return s + "}";
}

}  // namespace

std::string report_to_text(const Report& r) {
    std::ostringstream out;
    out << "input: format=" << r.format << " n=" << r.n << " root=" << r.root << "\n";
    out << "levels:";
    for (const auto& level : r.levels) out << " " << join_group(level);
    out << "\n";
    if (!r.is_tree) {
        out << "tree: no";
        if (r.witness) {
            if (r.witness->kind == TreenessVerdict::Kind::intra_level_edge)
                out << " (intra-level edge at level " << r.witness->level << ")";
            else
                out << " (vertex " << r.witness->vertex << " has multiple parents)";
        }
        out << "\n";
        return out.str();
    }
    out << "tree: yes\n";
    if (r.classes) {
        out << "classes:";
        for (int i = 0; i < int(r.classes->size()); ++i) {
            out << " level" << i << "=[";
            for (size_t a = 0; a < (*r.classes)[i].size(); ++a)
                out << (a ? " " : "") << join_group((*r.classes)[i][a]);
            out << "]";
        }
        out << "\n";
    }
    if (r.orbits) {
        out << "orbits:";
        for (const auto& orbit : *r.orbits) out << " " << join_group(orbit);
        out << "\n";
    }
    out << "dims: W0=" << (r.dim_w0 ? std::to_string(*r.dim_w0) : "-")
        << " T=" << (r.dim_t ? std::to_string(*r.dim_t) : "-") << " n^2=" << r.n_squared << "\n";
    out << "flags: H_trivial=" << (r.h_trivial ? (*r.h_trivial ? "yes" : "no") : "-")
        << " T_full=" << (r.t_full ? (*r.t_full ? "yes" : "no") : "-") << "\n";
    if (r.certificate) out << "certificate: " << *r.certificate << "\n";
    return out.str();
}

std::string scan_to_json(const ScanStatistics& s) {
    nlohmann::json j;
    j["model"] = s.model;
    j["n"] = s.n;
    j["trials"] = s.trials;
    j["seed"] = s.seed;
    j["all_roots"] = s.all_roots;
    j["hits"] = s.hits;
    j["completed"] = s.completed;
    j["fraction"] = s.fraction;
    j["failures"] = nlohmann::json::array();
    for (const auto& [trial, reason] : s.failures)
        j["failures"].push_back({{"trial", trial}, {"reason", reason}});
    nlohmann::json per_n = nlohmann::json::object();
    for (const auto& [size, counts] : s.per_n)
        per_n[std::to_string(size)] = {{"completed", counts.first}, {"hits", counts.second}};
    j["per_n"] = per_n;
    j["instance_hashes"] = s.instance_hashes;
    return j.dump(2) + "\n";
}

std::string export_dot(const Graph& g, int root) {
    RootedGraph rg = bfs_levels(g, root);
    std::optional<OrbitPartition> orbits;
    if (treeness_check(rg).is_tree()) {
        RootedTree t = as_tree(rg);
        orbits = orbit_partition(t, level_classes(t));
    }
    std::ostringstream out;
    out << "digraph G {\n  rankdir=TB;\n  node [style=filled, colorscheme=set312];\n";
    for (int i = 0; i <= rg.depth(); ++i) {
        out << "  { rank=same;";
        for (int v : rg.levels[i]) out << " v" << v << ";";
        out << " }\n";
    }
    for (int v = 0; v < g.n; ++v) {
        out << "  v" << v << " [label=\"" << v << "\"";
        if (orbits) out << ", fillcolor=" << (orbits->orbit_of[v] % 12) + 1;
        else out << ", fillcolor=white";
        if (v == root) out << ", shape=doublecircle";
        out << "];\n";
    }
    for (auto [u, v] : g.edges) {
        int a = u, b = v;
        if (rg.level_of[a] > rg.level_of[b]) std::swap(a, b);
        out << "  v" << a << " -> v" << b;
        if (rg.level_of[a] == rg.level_of[b]) out << " [dir=none, constraint=false]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace twtree
