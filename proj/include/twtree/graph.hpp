#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twtree/errors.hpp"

namespace twtree {

// Finite simple connected undirected graph on dense 0-based vertex indices.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // normalized u < v, sorted
    std::vector<std::vector<int>> adj;       // ascending neighbor lists

    int edge_count() const { return int(edges.size()); }
    bool has_edge(int u, int v) const;
};

// Builds a Graph, validating simplicity and connectivity.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

// "n" on the first line, then one "u v" edge per non-empty line.
Graph parse_edge_list(const std::string& text);

// Single line "p1 p2 ... p_{n-1}": parent of vertex i is p_i, root is 0.
Graph parse_parent_array(const std::string& text);

std::string to_edge_list(const Graph& g);

// Graph with a distinguished base vertex and its BFS distance structure.
struct RootedGraph {
    Graph graph;
    int root = 0;
    std::vector<std::vector<int>> levels;   // levels[i] = vertices at distance i
    std::vector<int> level_of;              // distance from the root
    std::vector<std::vector<int>> parents;  // neighbors one level closer

    int n() const { return graph.n; }
    int depth() const { return int(levels.size()) - 1; }
};

RootedGraph bfs_levels(const Graph& g, int root);

// RootedGraph whose underlying graph is a tree: unique parents, explicit
// children lists (ascending vertex order; canonical reordering is the
// certificate machinery's job).
struct RootedTree {
    RootedGraph base;
    std::vector<int> parent;                 // -1 at the root
    std::vector<std::vector<int>> children;

    int n() const { return base.n(); }
    int root() const { return base.root; }
    int depth() const { return base.depth(); }
};

// Succeeds iff the edge count is n - 1; otherwise throws NotATree with a
// witness (an intra-level edge or a two-parent vertex).
RootedTree as_tree(const RootedGraph& rg);

struct SubtreeResult {
    RootedTree tree;                // reindexed 0..m-1, root at 0
    std::vector<int> original;      // original vertex of each new index
};

// The rooted subtree at x: descendants of x in the root-distance order.
SubtreeResult subtree(const RootedTree& t, int x);

// Uniform random labeled tree (Prufer decoding), rooted at vertex 0.
RootedTree random_tree(int n, std::uint64_t seed);

// G(n, p) conditioned on connectivity by rejection; throws GiveUp once the
// attempt budget is exhausted.
Graph random_connected_graph(int n, double p, std::uint64_t seed, int max_attempts = 10000);

// FNV-1a over the canonical edge-list serialization; used in scan reports.
std::string content_hash(const Graph& g);

}  // namespace twtree
