#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "twtree/linalg.hpp"

using namespace twtree;

namespace {

Vec vec(std::initializer_list<int> xs) {
    Vec v;
    for (int x : xs) v.push_back(x);
    return v;
}

RatMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    int n = int(rows.size());
    int m = int(rows.begin()->size());
    RatMatrix a(n, m);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (int x : row) a.at(i, j++) = x;
        ++i;
    }
    return a;
}

// Path 0-1-2 rooted at 0.
const RatMatrix kPathA = from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
const RatMatrix kPathE0 = from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
const RatMatrix kPathE1 = from_rows({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
const RatMatrix kPathE2 = from_rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}});

// Star with root 0 and leaves 1, 2.
const RatMatrix kStarA = from_rows({{0, 1, 1}, {1, 0, 0}, {1, 0, 0}});
const RatMatrix kStarE0 = kPathE0;
const RatMatrix kStarE1 = from_rows({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}});

}  // namespace

TEST_CASE("row_basis on simple spans") {
    SubspaceBasis b = row_basis({vec({1, 1, 0}), vec({0, 0, 1})}, 3);
    CHECK(b.dim() == 2);
    CHECK(b.contains(vec({1, 1, 1})));
    CHECK(!b.contains(vec({1, 0, 0})));

    SubspaceBasis c = row_basis({vec({1, 2}), vec({2, 4})}, 2);
    CHECK(c.dim() == 1);
    CHECK(c.rows()[0] == vec({1, 2}));
}

TEST_CASE("row_basis is idempotent on random integer vectors") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-5, 5);
    std::vector<Vec> vs;
    for (int k = 0; k < 100; ++k) {
        Vec v(10);
        for (Rat& x : v) x = entry(rng);
        vs.push_back(v);
    }
    SubspaceBasis b = row_basis(vs, 10);
    CHECK(b.dim() <= 10);
    SubspaceBasis again = row_basis(b.rows(), 10);
    CHECK(b == again);
}

TEST_CASE("span_closure of the base vertex") {
    SUBCASE("path rooted at the end fills the space") {
        SubspaceBasis w =
            span_closure({vec({1, 0, 0})}, {kPathA, kPathE0, kPathE1, kPathE2}, 3);
        CHECK(w.dim() == 3);
    }
    SUBCASE("star keeps the leaf pair glued") {
        SubspaceBasis w = span_closure({vec({1, 0, 0})}, {kStarA, kStarE0, kStarE1}, 3);
        CHECK(w.dim() == 2);
        CHECK(w.rows()[0] == vec({1, 0, 0}));
        CHECK(w.rows()[1] == vec({0, 1, 1}));
    }
    SUBCASE("no operators leaves the seed span") {
        SubspaceBasis w = span_closure({vec({1, 2, 3})}, {}, 3);
        CHECK(w.dim() == 1);
    }
}

TEST_CASE("equal_subspace compares canonical forms") {
    SubspaceBasis a = row_basis({vec({1, 0})}, 2);
    SubspaceBasis b = row_basis({vec({0, 1})}, 2);
    CHECK(equal_subspace(a, a));
    CHECK(!equal_subspace(a, b));
    SubspaceBasis c = row_basis({vec({1, 1}), vec({1, -1})}, 2);
    SubspaceBasis full = row_basis({vec({1, 0}), vec({0, 1})}, 2);
    CHECK(equal_subspace(c, full));
}

TEST_CASE("algebra_closure on the reference instances") {
    CHECK(algebra_closure({RatMatrix::identity(4)}).dim() == 1);
    CHECK(algebra_closure({kStarA, kStarE0, kStarE1}).dim() == 5);
    CHECK(algebra_closure({kPathA, kPathE0, kPathE1, kPathE2}).dim() == 9);
}

TEST_CASE("algebra_closure basis is order independent and closed") {
    std::vector<RatMatrix> gens{kStarA, kStarE0, kStarE1};
    AlgebraBasis a = algebra_closure(gens);
    std::reverse(gens.begin(), gens.end());
    AlgebraBasis b = algebra_closure(gens);
    REQUIRE(a.dim() == b.dim());
    for (int k = 0; k < a.dim(); ++k) CHECK(a.basis()[k] == b.basis()[k]);

    CHECK(a.contains(RatMatrix::identity(3)));
    for (const RatMatrix& m : a.basis())
        for (const RatMatrix& g : a.generators()) {
            CHECK(a.contains(g * m));
            CHECK(a.contains(m * g));
        }
}

TEST_CASE("algebra_closure size guard") {
    CHECK_THROWS_AS(algebra_closure({RatMatrix::identity(33)}), SizeGuard);
    CHECK_NOTHROW(algebra_closure({RatMatrix::identity(33)}, 33));
}

TEST_CASE("commutant dimensions") {
    SUBCASE("full matrix algebra has scalar commutant") {
        RatMatrix e01 = from_rows({{0, 1}, {0, 0}});
        RatMatrix e10 = from_rows({{0, 0}, {1, 0}});
        AlgebraBasis full = algebra_closure({e01, e10});
        REQUIRE(full.dim() == 4);
        SubspaceBasis v = row_basis({vec({1, 0}), vec({0, 1})}, 2);
        CHECK(commutant_dim(full, v) == 1);
    }
    SUBCASE("scalars commute with everything") {
        AlgebraBasis scalars = algebra_closure({RatMatrix::identity(2)});
        SubspaceBasis v = row_basis({vec({1, 0}), vec({0, 1})}, 2);
        CHECK(commutant_dim(scalars, v) == 4);
    }
    SUBCASE("star principal module is irreducible") {
        SubspaceBasis w = span_closure({vec({1, 0, 0})}, {kStarA, kStarE0, kStarE1}, 3);
        AlgebraBasis t = algebra_closure({kStarA, kStarE0, kStarE1});
        CHECK(commutant_dim(t, w) == 1);
    }
}

TEST_CASE("restrict_to rejects non-invariant carriers") {
    SubspaceBasis carrier = row_basis({vec({1, 0, 0})}, 3);
    CHECK_THROWS_AS(restrict_to(kPathA, carrier), NotInvariant);
}

TEST_CASE("express_in, solve_linear, nullspace") {
    auto coeffs = express_in({vec({1, 0}), vec({1, 1})}, vec({3, 2}));
    REQUIRE(coeffs.has_value());
    CHECK((*coeffs)[0] == 1);
    CHECK((*coeffs)[1] == 2);
    CHECK(!express_in({vec({1, 0})}, vec({0, 1})).has_value());

    RatMatrix a = from_rows({{2, 1}, {1, 1}});
    auto x = solve_linear(a, vec({3, 2}));
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == vec({3, 2}));

    RatMatrix singular = from_rows({{1, 2}, {2, 4}});
    auto k = nullspace(singular);
    REQUIRE(k.size() == 1);
    CHECK(singular.apply(k[0]) == vec({0, 0}));
}

TEST_CASE("span_closure basis does not depend on operator order") {
    std::vector<RatMatrix> ops{kPathA, kPathE0, kPathE1, kPathE2};
    SubspaceBasis a = span_closure({vec({1, 0, 0})}, ops, 3);
    std::reverse(ops.begin(), ops.end());
    SubspaceBasis b = span_closure({vec({1, 0, 0})}, ops, 3);
    CHECK(a == b);
}

TEST_CASE("span_closure result is operator invariant") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> entry(0, 1);
    for (int round = 0; round < 20; ++round) {
        RatMatrix m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = entry(rng);
        Vec seed(4);
        seed[0] = 1;
        SubspaceBasis w = span_closure({seed}, {m}, 4);
        for (const Vec& r : w.rows()) CHECK(w.contains(m.apply(r)));
    }
}
