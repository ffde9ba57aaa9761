#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twtree/graph.hpp"
#include "twtree/talgebra.hpp"

namespace twtree {

// Everything cmd_analyze knows about an instance. JSON is the machine
// interface; text output renders the same struct. Timing is kept out of both
// renderings so identical invocations stay byte-identical.
struct Report {
    std::string format;
    int n = 0;
    int root = 0;
    std::vector<std::vector<int>> levels;

    bool is_tree = false;
    std::optional<TreenessVerdict> witness;  // present when not a tree

    std::optional<std::vector<std::vector<std::vector<int>>>> classes;  // per level
    std::optional<std::vector<std::vector<int>>> orbits;
    std::optional<int> dim_w0;
    std::optional<int> dim_t;
    int n_squared = 0;
    std::optional<bool> h_trivial;
    std::optional<bool> t_full;
    std::optional<std::string> certificate;

    double elapsed_ms = 0.0;  // stderr only
};

// Full pipeline: levels + treeness always; refinement, orbits, certificate
// for trees; module/algebra dimensions when n is within the cap.
Report analyze(const Graph& g, int root, const std::string& format_name,
               int cap = kDefaultAlgebraCap);

std::string report_to_json(const Report& r);
std::string report_to_text(const Report& r);

std::string scan_to_json(const ScanStatistics& s);

// DOT digraph with one rank per level; tree vertices are colored by orbit.
std::string export_dot(const Graph& g, int root);

}  // namespace twtree
