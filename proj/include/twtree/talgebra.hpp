#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twtree/graph.hpp"
#include "twtree/linalg.hpp"
#include "twtree/refinement.hpp"

namespace twtree {

// Generators of the Terwilliger algebra T(x0): the adjacency matrix and the
// diagonal projectors onto the distance shells of the base vertex.
struct TOperators {
    int n = 0;
    int root = 0;
    RatMatrix A;
    std::vector<RatMatrix> projectors;  // E*_0 .. E*_D

    int depth() const { return int(projectors.size()) - 1; }
    std::vector<RatMatrix> generators() const;  // {A, E*_0..E*_D}
};

TOperators build_operators(const RootedGraph& rg);

// W0 = T x0 with the generator actions expressed on its basis, plus the
// Gram matrix of the basis and the coordinates of x0. Everything downstream
// of the recognition theorem consumes only this data.
struct PrincipalModule {
    SubspaceBasis basis;
    RatMatrix a_restricted;
    std::vector<RatMatrix> projectors_restricted;
    RatMatrix gram;
    Vec root_coords;

    int dim() const { return basis.dim(); }
};

PrincipalModule principal_module(const TOperators& ops, int cap = kDefaultAlgebraCap);

int dim_T(const TOperators& ops, int cap = kDefaultAlgebraCap);

bool is_full_endomorphism(const TOperators& ops, int cap = kDefaultAlgebraCap);

// W0 is irreducible: the commutant of the generator restrictions is scalar.
bool verify_prop1(const TOperators& ops, int cap = kDefaultAlgebraCap);

// For trees: the rooted automorphism group is trivial iff T = End(V).
bool verify_rigidity_equivalence(const RootedTree& t, int cap = kDefaultAlgebraCap);

// Every basis matrix of T commutes with every rooted automorphism (n <= 10).
bool verify_centralizer_containment(const RootedTree& t, int cap = kDefaultAlgebraCap);

// c and s with E*_0 A^i E*_i A^i E*_0 x0 = c x0 and s = |E*_i A^i x0|^2.
// c = s on every graph; on trees additionally s = |X_i|.
std::pair<Rat, Rat> eval_eq17(const TOperators& ops, int i);

// c with E*_0 A^i E*_i A E*_i A^i E*_0 x0 = c x0; zero iff no level-i edge.
Rat eval_eq18(const TOperators& ops, int i);

struct TreenessVerdict {
    enum class Kind { tree, intra_level_edge, multi_parent };
    Kind kind = Kind::tree;
    int level = -1;   // intra_level_edge
    int vertex = -1;  // multi_parent

    bool is_tree() const { return kind == Kind::tree; }
};

// Tree iff eval_eq18 vanishes at every level and every non-root vertex has a
// unique parent.
TreenessVerdict treeness_check(const RootedGraph& rg);

// The Terwilliger generators of V-hat = span of the non-root shells:
// A-hat = (sum_{j>=1} E*_j) A (sum_{i>=1} E*_i) plus E*_1..E*_D, expressed on
// the non-root coordinates.
struct HatOperators {
    int m = 0;                          // n - |X_0|
    RatMatrix A;
    std::vector<RatMatrix> projectors;  // levels 1..D
    std::vector<int> vertex;            // original vertex per coordinate
};

HatOperators hat_operators(const TOperators& ops);

// The modules generated by a level-1 class sum and by one class member under
// the hat generators are isomorphic via word-by-word correspondence.
bool verify_eq20(const RootedTree& t, const ClassPartition& cp, int alpha,
                 int cap = kDefaultAlgebraCap);

struct ScanModel {
    enum class Kind { tree, gnp };
    Kind kind = Kind::tree;
    double p = 0.5;

    std::string str() const;
    static ScanModel parse(const std::string& text);  // "tree" or "gnp:<p>"
};

struct ScanStatistics {
    std::string model;
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    bool all_roots = false;
    int hits = 0;
    int completed = 0;
    double fraction = 0.0;
    std::vector<std::pair<int, std::string>> failures;  // (trial, reason)
    std::vector<std::string> instance_hashes;
    std::map<int, std::pair<int, int>> per_n;  // n -> (completed, hits)
};

// Samples instances with per-trial seed = seed + trial and counts how often
// T = End(V); with all_roots the instance must be full for every base vertex.
ScanStatistics conjecture_scan(const ScanModel& model, int n, int trials, std::uint64_t seed,
                               bool all_roots = false, int cap = kDefaultAlgebraCap);

}  // namespace twtree
