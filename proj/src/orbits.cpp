#include "twtree/orbits.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "twtree/linalg.hpp"
#include "twtree/talgebra.hpp"

namespace twtree {

OrbitPartition orbit_partition(const RootedTree& t, const ClassPartition& cp) {
    const int n = t.n();
    OrbitPartition op;
    op.orbit_of.assign(n, -1);

    auto add_orbit = [&](std::vector<int> members, int level, int label) {
        std::sort(members.begin(), members.end());
        int id = op.count();
        for (int v : members) op.orbit_of[v] = id;
        op.orbits.push_back(std::move(members));
        op.level.push_back(level);
        op.label.push_back(label);
    };

    add_orbit({t.root()}, 0, 0);
    for (int i = 1; i <= t.depth(); ++i) {
        // (parent orbit, class label) -> members; merged iff both agree.
        std::map<std::pair<int, int>, std::vector<int>> groups;
        for (int x : t.base.levels[i])
            groups[{op.orbit_of[t.parent[x]], cp.label_of[x]}].push_back(x);
        struct Entry {
            int label;
            int min_vertex;
            std::vector<int> members;
        };
        std::vector<Entry> entries;
        for (auto& [key, members] : groups)
            entries.push_back(
                {key.second, *std::min_element(members.begin(), members.end()), members});
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.label, a.min_vertex) < std::tie(b.label, b.min_vertex);
        });
        for (Entry& e : entries) add_orbit(std::move(e.members), i, e.label);
    }
    return op;
}

std::vector<Vec> orbit_sums(const OrbitPartition& op, int n) {
    std::vector<Vec> sums;
    sums.reserve(op.count());
    for (const auto& orbit : op.orbits) {
        Vec v(n);
        for (int x : orbit) v[x] = 1;
        sums.push_back(std::move(v));
    }
    return sums;
}

bool verify_theorem4(const RootedTree& t) {
    const int n = t.n();
    ClassPartition cp = level_classes(t);
    OrbitPartition op = orbit_partition(t, cp);
    SubspaceBasis lhs = row_basis(orbit_sums(op, n), n);

    TOperators ops = build_operators(t.base);
    Vec seed(n);
    seed[t.root()] = 1;
    SubspaceBasis rhs = span_closure({seed}, ops.generators(), n);
    return equal_subspace(lhs, rhs);
}

bool verify_eq16(const RootedTree& t) {
    const int n = t.n();
    ClassPartition cp = level_classes(t);
    OrbitPartition op = orbit_partition(t, cp);
    const auto& adj = t.base.graph.adj;

    for (int y = 0; y < op.count(); ++y) {
        if (op.level[y] == 0) continue;
        const std::vector<int>& orbit = op.orbits[y];
        // Z = psi(Y) must itself be an orbit.
        std::vector<int> parents;
        for (int v : orbit) parents.push_back(t.parent[v]);
        std::sort(parents.begin(), parents.end());
        parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
        if (parents != op.orbits[op.orbit_of[parents[0]]]) return false;

        // Y = E*_i(alpha) A Z, exactly.
        Vec az(n);
        for (int z : parents)
            for (int w : adj[z]) az[w] += 1;
        const auto& cls = cp.classes[op.level[y]][op.label[y]];
        Vec projected(n);
        for (int v : cls) projected[v] = az[v];
        Vec indicator(n);
        for (int v : orbit) indicator[v] = 1;
        if (projected != indicator) return false;
    }
    return true;
}

std::vector<std::vector<int>> brute_force_aut(const RootedTree& t) {
    const int n = t.n();
    if (n > 10) throw SizeGuard("brute_force_aut: n = " + std::to_string(n) + " exceeds 10");

    // BFS order: parents are assigned before their children, so each vertex
    // image is constrained to children of the parent's image.
    std::vector<int> order;
    for (const auto& level : t.base.levels)
        for (int v : level) order.push_back(v);

    std::vector<std::vector<int>> perms;
    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);

    auto rec = [&](auto&& self, size_t k) -> void {
        if (k == order.size()) {
            perms.push_back(image);
            return;
        }
        int v = order[k];
        if (v == t.root()) {
            image[v] = v;
            used[v] = 1;
            self(self, k + 1);
            used[v] = 0;
            image[v] = -1;
            return;
        }
        for (int u : t.children[image[t.parent[v]]]) {
            if (used[u] || t.children[u].size() != t.children[v].size()) continue;
            image[v] = u;
            used[u] = 1;
            self(self, k + 1);
            used[u] = 0;
            image[v] = -1;
        }
    };
    rec(rec, 0);
    return perms;
}

std::vector<std::vector<int>> orbit_closure(const std::vector<std::vector<int>>& perms, int n) {
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
        while (comp[v] != v) v = comp[v] = comp[comp[v]];
        return v;
    };
    for (const auto& perm : perms)
        for (int v = 0; v < n; ++v) comp[find(v)] = find(perm[v]);
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

}  // namespace twtree
