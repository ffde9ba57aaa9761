#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "twtree/isocert.hpp"
#include "twtree/report.hpp"

namespace {

using namespace twtree;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph load_graph(const std::string& path, const std::string& format) {
    std::string text = read_file(path);
    if (format == "edgelist") return parse_edge_list(text);
    if (format == "parents") return parse_parent_array(text);
    throw ParseError("unknown format " + format);
}

RootedTree load_tree(const std::string& path, const std::string& format, int root) {
    Graph g = load_graph(path, format);
    RootedGraph rg = bfs_levels(g, root);
    return as_tree(rg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terwilliger algebra toolkit for rooted trees"};
    app.require_subcommand(1);
    int cap = kDefaultAlgebraCap;
    app.add_option("--cap", cap, "size cap for dense algebra closures")
        ->envname("TWTREE_CAP")
        ->capture_default_str();

    auto* analyze_cmd = app.add_subcommand("analyze", "full analysis of one instance");
    std::string analyze_path, analyze_format = "edgelist";
    int analyze_root = 0;
    bool as_json = false, as_text = false;
    analyze_cmd->add_option("path", analyze_path, "input file")->required();
    analyze_cmd->add_option("--root", analyze_root, "base vertex")->capture_default_str();
    analyze_cmd->add_option("--format", analyze_format, "edgelist|parents")
        ->check(CLI::IsMember({"edgelist", "parents"}))
        ->capture_default_str();
    analyze_cmd->add_flag("--json", as_json, "JSON report (default)");
    analyze_cmd->add_flag("--text", as_text, "text report");

    auto* iso_cmd = app.add_subcommand("iso", "decide rooted-tree isomorphism");
    std::string iso_a, iso_b, iso_format = "edgelist";
    int iso_root_a = 0, iso_root_b = 0;
    iso_cmd->add_option("pathA", iso_a, "first tree")->required();
    iso_cmd->add_option("pathB", iso_b, "second tree")->required();
    iso_cmd->add_option("--rootA", iso_root_a, "base vertex of A")->capture_default_str();
    iso_cmd->add_option("--rootB", iso_root_b, "base vertex of B")->capture_default_str();
    iso_cmd->add_option("--format", iso_format, "edgelist|parents")
        ->check(CLI::IsMember({"edgelist", "parents"}))
        ->capture_default_str();

    auto* scan_cmd = app.add_subcommand("scan", "sample instances and count T = End(V)");
    std::string scan_model = "tree";
    int scan_n = 8, scan_trials = 100;
    std::uint64_t scan_seed = 0;
    bool all_roots = false;
    scan_cmd->add_option("--model", scan_model, "tree or gnp:<p>")->capture_default_str();
    scan_cmd->add_option("--n", scan_n, "instance size")->capture_default_str();
    scan_cmd->add_option("--trials", scan_trials, "number of samples")->capture_default_str();
    scan_cmd->add_option("--seed", scan_seed, "base RNG seed")->capture_default_str();
    scan_cmd->add_flag("--all-roots", all_roots, "require fullness for every base vertex");

    auto* dot_cmd = app.add_subcommand("export-dot", "emit a DOT rendering");
    std::string dot_path, dot_format = "edgelist";
    int dot_root = 0;
    dot_cmd->add_option("path", dot_path, "input file")->required();
    dot_cmd->add_option("--root", dot_root, "base vertex")->capture_default_str();
    dot_cmd->add_option("--format", dot_format, "edgelist|parents")
        ->check(CLI::IsMember({"edgelist", "parents"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze_cmd) {
            Report r = analyze(load_graph(analyze_path, analyze_format), analyze_root,
                               analyze_format, cap);
            std::cout << (as_text ? report_to_text(r) : report_to_json(r));
            std::cerr << "elapsed_ms=" << r.elapsed_ms << "\n";
            return 0;
        }
        if (*iso_cmd) {
            RootedTree a = load_tree(iso_a, iso_format, iso_root_a);
            RootedTree b = load_tree(iso_b, iso_format, iso_root_b);
            std::string ca = certificate(a).text, cb = certificate(b).text;
            bool same = ca == cb;
            std::cout << (same ? "ISO" : "NON-ISO") << " " << ca << " " << cb << "\n";
            return same ? 0 : 1;
        }
        if (*scan_cmd) {
            ScanStatistics stats = conjecture_scan(ScanModel::parse(scan_model), scan_n,
                                                   scan_trials, scan_seed, all_roots, cap);
            std::cout << scan_to_json(stats);
            return 0;
        }
        if (*dot_cmd) {
            std::cout << export_dot(load_graph(dot_path, dot_format), dot_root);
            return 0;
        }
    } catch (const SizeGuard& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
