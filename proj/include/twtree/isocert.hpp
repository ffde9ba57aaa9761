#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "twtree/graph.hpp"
#include "twtree/linalg.hpp"

namespace twtree {

// Canonical nested-parenthesis form: a leaf is "()", an inner vertex wraps
// the lexicographically sorted certificates of its children. Two rooted
// trees are isomorphic iff their certificates are equal.
struct CertificateResult {
    std::string text;
    RootedTree canonical;  // input tree with children lists in certificate order
};

CertificateResult certificate(const RootedTree& t);

bool rooted_isomorphic(const RootedTree& t1, const RootedTree& t2);

// Recursive backtracking match of children subtrees, no canonical forms.
// Guarded to n <= 10.
bool brute_force_rooted_iso(const RootedTree& t1, const RootedTree& t2);

// Inverse of certificate: preorder-numbered tree with the given form.
RootedTree reconstruct(const std::string& cert);

// One representative per isomorphism class; n <= 12.
std::vector<RootedTree> enumerate_rooted_trees(int n);

// Order of the rooted automorphism group: the product over vertices of the
// factorials of the multiplicities of isomorphic children subtrees.
mpz_class aut_order(const RootedTree& t);

// Rooted-tree invariants extracted from the principal module alone: the
// module's level count, class counts per level from the restricted
// refinement, and per level-1 class its size (a norm ratio) plus the bundle
// of one representative subtree module. Equal bundles <=> equal certificates.
struct InvariantBundle {
    int depth = 0;
    std::vector<int> lambda_sizes;
    std::vector<std::pair<long long, InvariantBundle>> children;  // (class size, sub-bundle)

    bool operator==(const InvariantBundle& o) const;
    std::string str() const;
};

InvariantBundle module_invariants(const RootedTree& t, int cap = kDefaultAlgebraCap);

}  // namespace twtree
