#pragma once

#include <stdexcept>
#include <string>

namespace twtree {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

// Loop or duplicate edge in the input.
struct NotSimple : Error {
    using Error::Error;
};

struct NotConnected : Error {
    using Error::Error;
};

// Rooted graph is not a tree; carries one concrete witness.
struct NotATree : Error {
    enum class Witness { intra_level_edge, multi_parent };
    Witness witness;
    int level = -1;            // level of the intra-level edge
    int edge_u = -1, edge_v = -1;
    int vertex = -1;           // the multi-parent vertex

    static NotATree intra_level(int level, int u, int v) {
        NotATree e("not a tree: intra-level edge {" + std::to_string(u) + "," +
                   std::to_string(v) + "} at level " + std::to_string(level));
        e.witness = Witness::intra_level_edge;
        e.level = level;
        e.edge_u = u;
        e.edge_v = v;
        return e;
    }
    static NotATree multi_parent(int v) {
        NotATree e("not a tree: vertex " + std::to_string(v) + " has more than one parent");
        e.witness = Witness::multi_parent;
        e.vertex = v;
        return e;
    }

  private:
    using Error::Error;
};

// Instance exceeds the configured size cap for dense exact linear algebra.
struct SizeGuard : Error {
    using Error::Error;
};

// Rejection sampler exhausted its budget.
struct GiveUp : Error {
    using Error::Error;
};

// Operation undefined for this instance (e.g. hat algebra of a single vertex).
struct Degenerate : Error {
    using Error::Error;
};

// An exact cross-check that must hold on valid input failed; signals a bug.
struct Mismatch : Error {
    using Error::Error;
};

// Carrier subspace is not invariant under the given operators.
struct NotInvariant : Error {
    using Error::Error;
};

// Certificate string is not balanced / well formed.
struct Malformed : Error {
    using Error::Error;
};

}  // namespace twtree
