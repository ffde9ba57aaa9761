#pragma once

#include <optional>
#include <vector>

#include "twtree/errors.hpp"
#include "twtree/matrix.hpp"

namespace twtree {

inline constexpr int kDefaultAlgebraCap = 32;

namespace detail {

// Incremental row-echelon basis. Rows are kept sorted by pivot column and
// carry a cached nonzero-column list so that reductions only touch the
// support of each row; algebra closures over n^2 coordinates depend on this.
class Echelon {
  public:
    explicit Echelon(int ambient) : ambient_(ambient) {}

    int ambient() const { return ambient_; }
    int dim() const { return int(rows_.size()); }

    // Reduces v in place against the current rows. Returns the leading
    // nonzero column of the residual, or -1 if v reduced to zero.
    int reduce(Vec& v) const;

    // Reduce and, if independent, normalize + insert. True if dim grew.
    // When inserted != nullptr, receives the stored (normalized) row.
    bool insert(Vec v, const Vec** inserted = nullptr);

    bool contains(Vec v) const { return reduce(v) < 0; }

    // Back-eliminates above every pivot, making the basis the canonical
    // reduced row-echelon form of the spanned subspace.
    void finalize();

    // Coordinates of v in the finalized basis; nullopt if v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;

    const Vec& row(int k) const { return rows_[k].v; }
    int pivot(int k) const { return rows_[k].pivot; }

  private:
    struct Row {
        int pivot;
        Vec v;
        std::vector<int> nz;  // sorted nonzero columns
    };
    void rebuild_nz(Row& r);

    int ambient_;
    bool finalized_ = false;
    std::vector<Row> rows_;  // sorted by pivot column
};

}  // namespace detail

// Basis of a subspace of Q^ambient in reduced row-echelon form: pivots are 1,
// pivot columns strictly increasing, each pivot column zero elsewhere. The
// RREF is canonical, so two subspaces are equal iff their bases are identical.
class SubspaceBasis {
  public:
    SubspaceBasis() = default;
    explicit SubspaceBasis(detail::Echelon e);

    int ambient_dim() const { return ambient_; }
    int dim() const { return int(rows_.size()); }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const Vec& v) const;
    // Unique expansion of v in the basis rows; nullopt if v is not in the span.
    std::optional<Vec> coordinates(const Vec& v) const;

    bool operator==(const SubspaceBasis& o) const {
        return ambient_ == o.ambient_ && rows_ == o.rows_;
    }

  private:
    int ambient_ = 0;
    std::vector<Vec> rows_;
    std::vector<int> pivots_;
};

SubspaceBasis row_basis(const std::vector<Vec>& vectors, int ambient_dim);

inline bool equal_subspace(const SubspaceBasis& a, const SubspaceBasis& b) { return a == b; }

// Smallest subspace containing the seeds and invariant under every operator.
// Worklist closure; the result is re-checked for invariance with one extra pass.
SubspaceBasis span_closure(const std::vector<Vec>& seeds, const std::vector<RatMatrix>& operators,
                           int ambient_dim);

// Spanning basis of the unital matrix algebra generated by a set of n x n
// matrices, echelonized over row-major n^2 coordinates. Keeps the generator
// list: the commutant of the spanned algebra is determined by it.
class AlgebraBasis {
  public:
    AlgebraBasis() = default;
    AlgebraBasis(int n, std::vector<RatMatrix> basis, std::vector<RatMatrix> generators,
                 detail::Echelon echelon);

    int n() const { return n_; }
    int dim() const { return int(basis_.size()); }
    const std::vector<RatMatrix>& basis() const { return basis_; }
    const std::vector<RatMatrix>& generators() const { return generators_; }

    bool contains(const RatMatrix& m) const;

  private:
    int n_ = 0;
    std::vector<RatMatrix> basis_;
    std::vector<RatMatrix> generators_;
    std::optional<detail::Echelon> echelon_;
};

AlgebraBasis algebra_closure(const std::vector<RatMatrix>& generators,
                             int cap = kDefaultAlgebraCap);

// Matrix of the action of m on an invariant subspace, in the carrier's basis.
// Throws NotInvariant if some image leaves the carrier.
RatMatrix restrict_to(const RatMatrix& m, const SubspaceBasis& carrier);

// Dimension of {X : XM = MX for all M in the algebra}, with every basis
// matrix restricted to the carrier first. Commuting with the generators is
// equivalent to commuting with the whole algebra, so the solve runs over the
// generator restrictions.
int commutant_dim(const AlgebraBasis& algebra, const SubspaceBasis& carrier);

// Same solve for matrices already expressed on the carrier's basis.
int commutant_dim_restricted(const std::vector<RatMatrix>& restricted);

// Coefficients c with sum c_k basis[k] = target; nullopt if target is
// outside the span. Dependent basis vectors are allowed.
std::optional<Vec> express_in(const std::vector<Vec>& basis, const Vec& target);

// Solution of the square system a x = b; nullopt if none exists.
std::optional<Vec> solve_linear(const RatMatrix& a, const Vec& b);

// Basis of the right kernel {x : m x = 0}.
std::vector<Vec> nullspace(const RatMatrix& m);

}  // namespace twtree
