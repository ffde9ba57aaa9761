#pragma once

#include <string>
#include <vector>

#include "twtree/graph.hpp"
#include "twtree/matrix.hpp"

namespace twtree {

// Per-level equivalence classes of vertices with isomorphic rooted subtrees,
// computed bottom-up from child-class count vectors. Within each level the
// classes are ordered by the lexicographic order of their subtree
// certificate, so labels align across runs and across isomorphic trees.
struct ClassPartition {
    // classes[i][a] = sorted vertices of the a-th class at level i
    std::vector<std::vector<std::vector<int>>> classes;
    // label_of[v] = index of v's class within its level
    std::vector<int> label_of;
    // class_cert[i][a] = certificate of the subtree at any member
    std::vector<std::vector<std::string>> class_cert;
    // counts[i][a][b] = number of children in class b of level i+1,
    // for every member of class a at level i
    std::vector<std::vector<std::vector<int>>> counts;

    int levels() const { return int(classes.size()); }
    int classes_at(int level) const { return int(classes[level].size()); }
};

ClassPartition level_classes(const RootedTree& t);

// Diagonal 0/1 projector onto each class, per level.
std::vector<std::vector<RatMatrix>> class_projectors(const ClassPartition& cp, int n);

struct Lemma6Report {
    int levels_checked = 0;
    int operators_checked = 0;
    int projectors_checked = 0;
};

// Rebuilds the level classes from explicit operator products and checks them
// against the counting form: each E*_i A E*_{i+1}(beta) A E*_i must be
// diagonal with entry n_beta(x) at x, the common-eigenspace partition must
// equal the counting partition, and each class projector must lie in the
// span of products of these operators together with E*_i (the unit on the
// level). Throws Mismatch with the offending (i, beta) on any violation.
Lemma6Report verify_lemma6(const RootedTree& t);

}  // namespace twtree
