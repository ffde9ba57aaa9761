#include "twtree/graph.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>

namespace twtree {

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

namespace {

void check_connected(const Graph& g) {
    if (g.n == 0) throw NotConnected("empty graph");
    std::vector<char> seen(g.n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                queue.push_back(w);
            }
    }
    if (count != g.n) throw NotConnected("graph is not connected");
}

}  // namespace

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw ParseError("vertex count must be at least 1");
    Graph g;
    g.n = n;
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("vertex index out of range: " + std::to_string(std::max(u, v)));
        if (u == v) throw NotSimple("loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw NotSimple("duplicate edge");
    g.edges = std::move(edges);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& list : g.adj) std::sort(list.begin(), list.end());
    check_connected(g);
    return g;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tail;
            if (!(ls >> n) || n < 1 || (ls >> tail))
                throw ParseError("line 1: expected the vertex count");
            continue;
        }
        int u, v;
        std::string tail;
        if (!(ls >> u)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("line " + std::to_string(lineno) + ": malformed edge");
        }
        if (!(ls >> v) || (ls >> tail))
            throw ParseError("line " + std::to_string(lineno) + ": expected \"u v\"");
        edges.push_back({u, v});
    }
    if (n < 0) throw ParseError("empty input");
    return make_graph(n, std::move(edges));
}

Graph parse_parent_array(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> parents;
    int p;
    while (in >> p) parents.push_back(p);
    if (!in.eof()) throw ParseError("parent array: expected integers");
    int n = int(parents.size()) + 1;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.push_back({parents[i - 1], i});
    return make_graph(n, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n << "\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
    return out.str();
}

RootedGraph bfs_levels(const Graph& g, int root) {
    if (root < 0 || root >= g.n) throw Error("root out of range");
    RootedGraph rg;
    rg.graph = g;
    rg.root = root;
    rg.level_of.assign(g.n, -1);
    rg.parents.assign(g.n, {});
    std::deque<int> queue{root};
    rg.level_of[root] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.adj[v])
            if (rg.level_of[w] < 0) {
                rg.level_of[w] = rg.level_of[v] + 1;
                queue.push_back(w);
            }
    }
    int depth = *std::max_element(rg.level_of.begin(), rg.level_of.end());
    rg.levels.assign(depth + 1, {});
    for (int v = 0; v < g.n; ++v) rg.levels[rg.level_of[v]].push_back(v);
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adj[v])
            if (rg.level_of[w] == rg.level_of[v] - 1) rg.parents[v].push_back(w);
    return rg;
}

RootedTree as_tree(const RootedGraph& rg) {
    const Graph& g = rg.graph;
    if (g.edge_count() != g.n - 1) {
        for (int v = 0; v < g.n; ++v)
            if (int(rg.parents[v].size()) > 1) throw NotATree::multi_parent(v);
        for (auto [u, v] : g.edges)
            if (rg.level_of[u] == rg.level_of[v])
                throw NotATree::intra_level(rg.level_of[u], u, v);
        throw Mismatch("as_tree: edge surplus without witness");  // unreachable for connected input
    }
    RootedTree t;
    t.base = rg;
    t.parent.assign(g.n, -1);
    t.children.assign(g.n, {});
    for (int v = 0; v < g.n; ++v)
        if (v != rg.root) {
            t.parent[v] = rg.parents[v][0];
            t.children[t.parent[v]].push_back(v);
        }
    return t;
}

SubtreeResult subtree(const RootedTree& t, int x) {
    if (x < 0 || x >= t.n()) throw Error("subtree: vertex out of range");
    std::vector<int> original;
    std::deque<int> queue{x};
    while (!queue.empty()) {  // BFS keeps descendants in root-distance order
        int v = queue.front();
        queue.pop_front();
        original.push_back(v);
        for (int c : t.children[v]) queue.push_back(c);
    }
    std::vector<int> new_index(t.n(), -1);
    for (size_t i = 0; i < original.size(); ++i) new_index[original[i]] = int(i);
    std::vector<std::pair<int, int>> edges;
    for (int v : original)
        for (int c : t.children[v]) edges.push_back({new_index[v], new_index[c]});
    Graph g = make_graph(int(original.size()), std::move(edges));
    SubtreeResult res{as_tree(bfs_levels(g, 0)), std::move(original)};
    return res;
}

namespace {

// mt19937_64 output is standardized, so both helpers are reproducible
// across standard library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t k) {
    const std::uint64_t limit = k * (UINT64_MAX / k);
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit) return x % k;
    }
}

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

RootedTree random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw Error("random_tree: n must be at least 1");
    std::vector<std::pair<int, int>> edges;
    if (n >= 2) {
        std::mt19937_64 rng(seed);
        std::vector<int> prufer(std::max(0, n - 2));
        for (int& a : prufer) a = int(uniform_below(rng, n));
        std::vector<int> degree(n, 1);
        for (int a : prufer) ++degree[a];
        // Linear Prufer decoding with a moving leaf pointer.
        int ptr = 0;
        while (degree[ptr] != 1) ++ptr;
        int leaf = ptr;
        for (int a : prufer) {
            edges.push_back({leaf, a});
            if (--degree[a] == 1 && a < ptr) {
                leaf = a;
            } else {
                ++ptr;
                while (degree[ptr] != 1) ++ptr;
                leaf = ptr;
            }
        }
        edges.push_back({leaf, n - 1});
    }
    return as_tree(bfs_levels(make_graph(n, std::move(edges)), 0));
}

Graph random_connected_graph(int n, double p, std::uint64_t seed, int max_attempts) {
    if (n < 1) throw Error("random_connected_graph: n must be at least 1");
    if (p < 0.0 || p > 1.0) throw Error("random_connected_graph: p must be in [0, 1]");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (uniform01(rng) < p) edges.push_back({u, v});
        try {
            return make_graph(n, std::move(edges));
        } catch (const NotConnected&) {
            continue;
        }
    }
    throw GiveUp("random_connected_graph: no connected sample within " +
                 std::to_string(max_attempts) + " attempts (p too small?)");
}

std::string content_hash(const Graph& g) {
    std::string s = to_edge_list(g);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace twtree
