#pragma once

#include <vector>

#include "twtree/graph.hpp"
#include "twtree/matrix.hpp"
#include "twtree/refinement.hpp"

namespace twtree {

// Orbits of H = Aut of the rooted tree acting on the vertex set. Each orbit
// lies inside a single level class; orbits are ordered by
// (level, class label, smallest vertex).
struct OrbitPartition {
    std::vector<std::vector<int>> orbits;  // sorted vertex lists
    std::vector<int> orbit_of;
    std::vector<int> level;  // per orbit
    std::vector<int> label;  // per orbit: class label within the level

    int count() const { return int(orbits.size()); }
};

// Top-down recursion: the root is alone; two vertices merge iff their parents
// already merged and they carry the same class label. No group elements are
// enumerated.
OrbitPartition orbit_partition(const RootedTree& t, const ClassPartition& cp);

// Indicator sums, one 0/1 vector per orbit (pairwise disjoint supports).
std::vector<Vec> orbit_sums(const OrbitPartition& op, int n);

// span(orbit sums) == closure of the base vertex under {A, E*_0..E*_D}.
bool verify_theorem4(const RootedTree& t);

// For every orbit Y at level i >= 1 with class label alpha and Z its parent
// set: Z is an orbit and the indicator identity Y = E*_i(alpha) A Z holds.
bool verify_eq16(const RootedTree& t);

// All adjacency-preserving permutations fixing the root, by exhaustive
// level- and parent-respecting backtracking. Guarded to n <= 10.
std::vector<std::vector<int>> brute_force_aut(const RootedTree& t);

// Orbit closure (finest partition merged across all permutations).
std::vector<std::vector<int>> orbit_closure(const std::vector<std::vector<int>>& perms, int n);

}  // namespace twtree
