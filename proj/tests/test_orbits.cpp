#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "twtree/isocert.hpp"
#include "twtree/orbits.hpp"

using namespace twtree;

namespace {

RootedTree from_parents(const std::string& spec) {
    return as_tree(bfs_levels(parse_parent_array(spec), 0));
}

const char* kT6 = "0 0 1 1 2";

std::set<std::set<int>> as_sets(const std::vector<std::vector<int>>& groups) {
    std::set<std::set<int>> out;
    for (const auto& g : groups) out.insert(std::set<int>(g.begin(), g.end()));
    return out;
}

OrbitPartition orbits_of(const RootedTree& t) { return orbit_partition(t, level_classes(t)); }

}  // namespace

TEST_CASE("orbit partitions of the reference trees") {
    CHECK(orbits_of(from_parents("0 0")).orbits ==
          std::vector<std::vector<int>>{{0}, {1, 2}});
    CHECK(orbits_of(from_parents(kT6)).orbits ==
          std::vector<std::vector<int>>{{0}, {1}, {2}, {3, 4}, {5}});
    OrbitPartition path = orbits_of(from_parents("0 1 2"));
    CHECK(path.count() == 4);  // rigid: all singletons
    for (const auto& orbit : path.orbits) CHECK(orbit.size() == 1);
}

TEST_CASE("orbit metadata places each orbit inside one class") {
    RootedTree t = from_parents(kT6);
    ClassPartition cp = level_classes(t);
    OrbitPartition op = orbit_partition(t, cp);
    CHECK(op.orbit_of[0] == 0);
    for (int k = 0; k < op.count(); ++k)
        for (int v : op.orbits[k]) {
            CHECK(t.base.level_of[v] == op.level[k]);
            CHECK(cp.label_of[v] == op.label[k]);
        }
}

TEST_CASE("orbit sums are orthogonal indicators") {
    RootedTree t = from_parents(kT6);
    auto sums = orbit_sums(orbits_of(t), t.n());
    REQUIRE(sums.size() == 5);
    CHECK(sums[0] == Vec{1, 0, 0, 0, 0, 0});
    for (size_t a = 0; a < sums.size(); ++a)
        for (size_t b = a + 1; b < sums.size(); ++b) CHECK(is_zero(dot(sums[a], sums[b])));
    CHECK(orbit_sums(orbits_of(as_tree(bfs_levels(make_graph(1, {}), 0))), 1) ==
          std::vector<Vec>{{1}});
}

TEST_CASE("brute force automorphisms of the reference trees") {
    auto star = brute_force_aut(from_parents("0 0"));
    CHECK(star.size() == 2);
    CHECK(std::find(star.begin(), star.end(), std::vector<int>{0, 2, 1}) != star.end());

    CHECK(brute_force_aut(from_parents("0 1 2")).size() == 1);

    auto t6 = brute_force_aut(from_parents(kT6));
    CHECK(t6.size() == 2);
    CHECK(std::find(t6.begin(), t6.end(), std::vector<int>{0, 1, 2, 4, 3, 5}) != t6.end());

    CHECK_THROWS_AS(brute_force_aut(random_tree(11, 4)), SizeGuard);
}

TEST_CASE("recursive orbits equal the brute force orbit closure") {
    for (int n = 1; n <= 8; ++n) {
        int checked = 0;
        for (const RootedTree& t : enumerate_rooted_trees(n)) {
            auto recursion = as_sets(orbits_of(t).orbits);
            auto closure = as_sets(orbit_closure(brute_force_aut(t), t.n()));
            CHECK(recursion == closure);
            ++checked;
        }
        CHECK(checked > 0);
    }
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        RootedTree t = random_tree(1 + int(seed % 10), seed);
        CHECK(as_sets(orbits_of(t).orbits) == as_sets(orbit_closure(brute_force_aut(t), t.n())));
    }
}

TEST_CASE("theorem 4 on the reference trees") {
    CHECK(verify_theorem4(from_parents(kT6)));
    for (int k = 1; k <= 5; ++k) {
        std::string star, path;
        for (int i = 0; i < k; ++i) {
            star += (i ? " 0" : "0");
            path += (i ? " " + std::to_string(i) : "0");
        }
        CHECK(verify_theorem4(from_parents(star)));
        CHECK(verify_theorem4(from_parents(path)));
    }
}

TEST_CASE("theorem 4 over random trees") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed)
        CHECK(verify_theorem4(random_tree(2 + int(seed % 24), seed)));
}

TEST_CASE("number of orbits equals dim of the orbit-sum span") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        RootedTree t = random_tree(3 + int(seed % 20), seed);
        OrbitPartition op = orbits_of(t);
        CHECK(row_basis(orbit_sums(op, t.n()), t.n()).dim() == op.count());
    }
}

TEST_CASE("eq 16 on the reference trees and at random") {
    CHECK(verify_eq16(from_parents("0 0")));
    CHECK(verify_eq16(from_parents(kT6)));
    CHECK(verify_eq16(from_parents("0 1 2")));
    CHECK(verify_eq16(as_tree(bfs_levels(make_graph(1, {}), 0))));
    for (std::uint64_t seed = 1; seed <= 150; ++seed)
        CHECK(verify_eq16(random_tree(2 + int(seed % 24), seed)));
}
