#include "twtree/linalg.hpp"

#include <algorithm>
#include <deque>

namespace twtree {

namespace detail {

void Echelon::rebuild_nz(Row& r) {
    r.nz.clear();
    for (int j = 0; j < ambient_; ++j)
        if (!is_zero(r.v[j])) r.nz.push_back(j);
}

int Echelon::reduce(Vec& v) const {
    int first = 0;
    for (const Row& r : rows_) {
        while (first < r.pivot && first < ambient_ && is_zero(v[first])) ++first;
        if (first < r.pivot) return first;  // pivot-free leading column
        if (first >= ambient_) return -1;
        if (is_zero(v[r.pivot])) continue;
        Rat c = v[r.pivot];
        for (int j : r.nz) v[j] -= c * r.v[j];
    }
    while (first < ambient_ && is_zero(v[first])) ++first;
    return first < ambient_ ? first : -1;
}

bool Echelon::insert(Vec v, const Vec** inserted) {
    int p = reduce(v);
    if (p < 0) return false;
    Rat lead = v[p];
    for (int j = p; j < ambient_; ++j)
        if (!is_zero(v[j])) v[j] /= lead;
    Row r{p, std::move(v), {}};
    rebuild_nz(r);
    auto it = std::lower_bound(rows_.begin(), rows_.end(), p,
                               [](const Row& a, int piv) { return a.pivot < piv; });
    it = rows_.insert(it, std::move(r));
    finalized_ = false;
    if (inserted) *inserted = &it->v;
    return true;
}

void Echelon::finalize() {
    if (finalized_) return;
    for (int k = int(rows_.size()) - 1; k >= 0; --k) {
        const Row& low = rows_[k];
        for (int s = 0; s < k; ++s) {
            Row& up = rows_[s];
            if (is_zero(up.v[low.pivot])) continue;
            Rat c = up.v[low.pivot];
            for (int j : low.nz) up.v[j] -= c * low.v[j];
            rebuild_nz(up);
        }
    }
    finalized_ = true;
}

std::optional<Vec> Echelon::coordinates(const Vec& v) const {
    // Requires finalize(): pivot columns are then exclusive to their row.
    Vec coords(rows_.size());
    Vec rest = v;
    for (size_t k = 0; k < rows_.size(); ++k) {
        coords[k] = v[rows_[k].pivot];
        if (!is_zero(coords[k]))
            for (int j : rows_[k].nz) rest[j] -= coords[k] * rows_[k].v[j];
    }
    for (const Rat& x : rest)
        if (!is_zero(x)) return std::nullopt;
    return coords;
}

}  // namespace detail

SubspaceBasis::SubspaceBasis(detail::Echelon e) {
    e.finalize();
    ambient_ = e.ambient();
    for (int k = 0; k < e.dim(); ++k) {
        rows_.push_back(e.row(k));
        pivots_.push_back(e.pivot(k));
    }
}

bool SubspaceBasis::contains(const Vec& v) const { return coordinates(v).has_value(); }

std::optional<Vec> SubspaceBasis::coordinates(const Vec& v) const {
    Vec coords(rows_.size());
    Vec rest = v;
    for (size_t k = 0; k < rows_.size(); ++k) {
        coords[k] = rest[pivots_[k]];
        if (!is_zero(coords[k]))
            for (int j = 0; j < ambient_; ++j)
                if (!is_zero(rows_[k][j])) rest[j] -= coords[k] * rows_[k][j];
    }
    for (const Rat& x : rest)
        if (!is_zero(x)) return std::nullopt;
    return coords;
}

SubspaceBasis row_basis(const std::vector<Vec>& vectors, int ambient_dim) {
    detail::Echelon e(ambient_dim);
    for (const Vec& v : vectors) {
        if (int(v.size()) != ambient_dim) throw Error("row_basis: inconsistent vector lengths");
        e.insert(v);
    }
    return SubspaceBasis(std::move(e));
}

SubspaceBasis span_closure(const std::vector<Vec>& seeds, const std::vector<RatMatrix>& operators,
                           int ambient_dim) {
    detail::Echelon e(ambient_dim);
    std::deque<Vec> work;
    for (const Vec& s : seeds) {
        if (int(s.size()) != ambient_dim) throw Error("span_closure: seed has wrong dimension");
        const Vec* stored = nullptr;
        if (e.insert(s, &stored)) work.push_back(*stored);
    }
    while (!work.empty()) {
        Vec v = std::move(work.front());
        work.pop_front();
        for (const RatMatrix& m : operators) {
            const Vec* stored = nullptr;
            if (e.insert(m.apply(v), &stored)) work.push_back(*stored);
        }
    }
    SubspaceBasis basis{detail::Echelon(e)};
    // Invariance re-check on the finalized basis.
    for (const Vec& r : basis.rows())
        for (const RatMatrix& m : operators)
            if (!basis.contains(m.apply(r)))
                throw Mismatch("span_closure: result not operator-invariant");
    return basis;
}

namespace {

// Structure-aware left/right multiplication by a closure generator: the
// generators here are typically a sparse 0/1 adjacency and 0/1 diagonals,
// and closures spend most of their time in these products.
struct GenApplier {
    enum class Kind { diagonal01, sparse, dense } kind;
    const RatMatrix* g;
    std::vector<char> diag;                             // diagonal01
    std::vector<std::vector<std::pair<int, Rat>>> row;  // sparse: row -> (col, val)
    std::vector<std::vector<std::pair<int, Rat>>> col;  // sparse: col -> (row, val)

    explicit GenApplier(const RatMatrix& m) : g(&m) {
        int n = m.rows();
        bool diag01 = true;
        int nnz = 0;
        for (int i = 0; i < n && diag01; ++i)
            for (int j = 0; j < n; ++j) {
                const Rat& x = m.at(i, j);
                if (is_zero(x)) continue;
                ++nnz;
                if (i != j || x != 1) {
                    diag01 = false;
                    break;
                }
            }
        if (diag01) {
            kind = Kind::diagonal01;
            diag.resize(n);
            for (int i = 0; i < n; ++i) diag[i] = !is_zero(m.at(i, i));
            return;
        }
        nnz = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!is_zero(m.at(i, j))) ++nnz;
        if (nnz <= 4 * n) {
            kind = Kind::sparse;
            row.resize(n);
            col.resize(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!is_zero(m.at(i, j))) {
                        row[i].push_back({j, m.at(i, j)});
                        col[j].push_back({i, m.at(i, j)});
                    }
        } else {
            kind = Kind::dense;
        }
    }

    RatMatrix left(const RatMatrix& m) const {  // g * m
        int n = m.rows();
        RatMatrix r(n, n);
        switch (kind) {
            case Kind::diagonal01:
                for (int i = 0; i < n; ++i)
                    if (diag[i])
                        for (int j = 0; j < n; ++j) r.at(i, j) = m.at(i, j);
                break;
            case Kind::sparse:
                for (int i = 0; i < n; ++i)
                    for (const auto& [k, x] : row[i])
                        for (int j = 0; j < n; ++j) {
                            const Rat& y = m.at(k, j);
                            if (!is_zero(y)) r.at(i, j) += x * y;
                        }
                break;
            case Kind::dense:
                return (*g) * m;
        }
        return r;
    }

    RatMatrix right(const RatMatrix& m) const {  // m * g
        int n = m.rows();
        RatMatrix r(n, n);
        switch (kind) {
            case Kind::diagonal01:
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        if (diag[j]) r.at(i, j) = m.at(i, j);
                break;
            case Kind::sparse:
                for (int j = 0; j < n; ++j)
                    for (const auto& [k, x] : col[j])
                        for (int i = 0; i < n; ++i) {
                            const Rat& y = m.at(i, k);
                            if (!is_zero(y)) r.at(i, j) += y * x;
                        }
                break;
            case Kind::dense:
                return m * (*g);
        }
        return r;
    }
};

}  // namespace

AlgebraBasis::AlgebraBasis(int n, std::vector<RatMatrix> basis, std::vector<RatMatrix> generators,
                           detail::Echelon echelon)
    : n_(n), basis_(std::move(basis)), generators_(std::move(generators)),
      echelon_(std::move(echelon)) {}

bool AlgebraBasis::contains(const RatMatrix& m) const {
    if (m.rows() != n_ || m.cols() != n_) return false;
    return echelon_ && echelon_->contains(m.flatten());
}

AlgebraBasis algebra_closure(const std::vector<RatMatrix>& generators, int cap) {
    if (generators.empty()) throw Error("algebra_closure: no generators");
    int n = generators[0].rows();
    for (const RatMatrix& g : generators)
        if (g.rows() != n || g.cols() != n)
            throw Error("algebra_closure: generators must be square of equal size");
    if (n > cap)
        throw SizeGuard("algebra_closure: n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));

    std::vector<GenApplier> appliers;
    appliers.reserve(generators.size());
    for (const RatMatrix& g : generators) appliers.emplace_back(g);

    const int full = n * n;
    detail::Echelon e(full);
    std::deque<RatMatrix> work;
    auto offer = [&](const RatMatrix& m) {
        const Vec* stored = nullptr;
        if (e.insert(m.flatten(), &stored)) work.push_back(RatMatrix::reshape(*stored, n));
    };
    offer(RatMatrix::identity(n));
    for (const RatMatrix& g : generators) offer(g);
    // Once the closure reaches End(V) it cannot grow further; stop early.
    while (!work.empty() && e.dim() < full) {
        RatMatrix m = std::move(work.front());
        work.pop_front();
        for (const GenApplier& ap : appliers) {
            offer(ap.left(m));
            if (e.dim() == full) break;
            offer(ap.right(m));
            if (e.dim() == full) break;
        }
    }
    if (e.dim() == full) {
        detail::Echelon id(full);
        for (int k = 0; k < full; ++k) {
            Vec v(full);
            v[k] = 1;
            id.insert(std::move(v));
        }
        e = std::move(id);
    }
    e.finalize();
    std::vector<RatMatrix> basis;
    basis.reserve(e.dim());
    for (int k = 0; k < e.dim(); ++k) basis.push_back(RatMatrix::reshape(e.row(k), n));
    return AlgebraBasis(n, std::move(basis), generators, std::move(e));
}

RatMatrix restrict_to(const RatMatrix& m, const SubspaceBasis& carrier) {
    int d = carrier.dim();
    RatMatrix r(d, d);
    for (int j = 0; j < d; ++j) {
        auto coords = carrier.coordinates(m.apply(carrier.rows()[j]));
        if (!coords) throw NotInvariant("restrict_to: image of basis vector leaves the carrier");
        for (int k = 0; k < d; ++k) r.at(k, j) = (*coords)[k];
    }
    return r;
}

int commutant_dim_restricted(const std::vector<RatMatrix>& restricted) {
    if (restricted.empty()) throw Error("commutant_dim: no matrices");
    int d = restricted[0].rows();
    int unknowns = d * d;
    // Rows of the constraint system for X M - M X = 0, unknowns X[a][b].
    detail::Echelon e(unknowns);
    for (const RatMatrix& m : restricted) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Vec row(unknowns);
                for (int k = 0; k < d; ++k) {
                    if (!is_zero(m.at(k, j))) row[i * d + k] += m.at(k, j);
                    if (!is_zero(m.at(i, k))) row[k * d + j] -= m.at(i, k);
                }
                e.insert(std::move(row));
                // The identity always commutes, so rank never exceeds d^2 - 1;
                // hitting that bound pins the commutant to the scalars.
                if (e.dim() == unknowns - 1) return 1;
            }
    }
    return unknowns - e.dim();
}

int commutant_dim(const AlgebraBasis& algebra, const SubspaceBasis& carrier) {
    std::vector<RatMatrix> restricted;
    restricted.reserve(algebra.generators().size());
    for (const RatMatrix& g : algebra.generators()) restricted.push_back(restrict_to(g, carrier));
    return commutant_dim_restricted(restricted);
}

std::optional<Vec> express_in(const std::vector<Vec>& basis, const Vec& target) {
    const int ambient = int(target.size());
    const int k = int(basis.size());
    // Tag each basis vector with a unit coordinate; reductions then carry the
    // combination along, and rows pivoting in the tag block encode
    // dependencies that only reshuffle valid coefficient choices.
    detail::Echelon e(ambient + k);
    for (int j = 0; j < k; ++j) {
        Vec row(ambient + k);
        std::copy(basis[j].begin(), basis[j].end(), row.begin());
        row[ambient + j] = 1;
        e.insert(std::move(row));
    }
    Vec w(ambient + k);
    std::copy(target.begin(), target.end(), w.begin());
    e.reduce(w);
    for (int c = 0; c < ambient; ++c)
        if (!is_zero(w[c])) return std::nullopt;
    Vec coeffs(k);
    for (int j = 0; j < k; ++j) coeffs[j] = -w[ambient + j];
    return coeffs;
}

std::optional<Vec> solve_linear(const RatMatrix& a, const Vec& b) {
    std::vector<Vec> columns(a.cols(), Vec(a.rows()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) columns[j][i] = a.at(i, j);
    return express_in(columns, b);
}

std::vector<Vec> nullspace(const RatMatrix& m) {
    detail::Echelon e(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        Vec row(m.cols());
        for (int j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        e.insert(std::move(row));
    }
    e.finalize();
    std::vector<char> is_pivot(m.cols(), 0);
    for (int k = 0; k < e.dim(); ++k) is_pivot[e.pivot(k)] = 1;
    std::vector<Vec> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec x(m.cols());
        x[f] = 1;
        for (int k = 0; k < e.dim(); ++k) x[e.pivot(k)] = -e.row(k)[f];
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace twtree
