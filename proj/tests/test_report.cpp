#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twtree/report.hpp"

using namespace twtree;

namespace {

const char* kT6Edges = "6\n0 1\n0 2\n1 3\n1 4\n2 5";

}  // namespace

TEST_CASE("analyze a tree end to end") {
    Report r = analyze(parse_edge_list(kT6Edges), 0, "edgelist");
    CHECK(r.is_tree);
    CHECK(r.n == 6);
    REQUIRE(r.dim_w0.has_value());
    CHECK(*r.dim_w0 == 5);
    REQUIRE(r.dim_t.has_value());
    CHECK(*r.dim_t < 36);
    CHECK(r.n_squared == 36);
    CHECK(*r.h_trivial == false);
    CHECK(*r.t_full == false);
    CHECK(*r.certificate == "((()())(()))");
    CHECK(r.orbits ==
          std::vector<std::vector<int>>{{0}, {1}, {2}, {3, 4}, {5}});
}

TEST_CASE("analyze a rigid path") {
    Report r = analyze(parse_edge_list("3\n0 1\n1 2"), 2, "edgelist");
    CHECK(r.is_tree);
    CHECK(*r.dim_w0 == 3);
    CHECK(*r.dim_t == 9);
    CHECK(*r.t_full);
    CHECK(*r.h_trivial);
}

TEST_CASE("analyze a non-tree") {
    Report r = analyze(parse_edge_list("3\n0 1\n1 2\n0 2"), 0, "edgelist");
    CHECK(!r.is_tree);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->kind == TreenessVerdict::Kind::intra_level_edge);
    CHECK(r.witness->level == 1);
    CHECK(!r.certificate.has_value());
    CHECK(!r.dim_t.has_value());
    std::string json = report_to_json(r);
    CHECK(json.find("\"is_tree\": false") != std::string::npos);
    CHECK(json.find("intra-level-edge") != std::string::npos);
}

TEST_CASE("analyze beyond the cap skips the algebra dims") {
    RootedTree t = random_tree(40, 3);
    Report r = analyze(t.base.graph, 0, "edgelist");
    CHECK(r.is_tree);
    CHECK(!r.dim_t.has_value());
    CHECK(!r.dim_w0.has_value());
    CHECK(r.certificate.has_value());  // certificates are uncapped
    CHECK(r.orbits.has_value());
}

TEST_CASE("reports are deterministic") {
    Report a = analyze(parse_edge_list(kT6Edges), 0, "edgelist");
    Report b = analyze(parse_edge_list(kT6Edges), 0, "edgelist");
    CHECK(report_to_json(a) == report_to_json(b));
    CHECK(report_to_text(a) == report_to_text(b));
    CHECK(report_to_json(a).find("elapsed") == std::string::npos);
}

TEST_CASE("scan json is deterministic and carries the schema fields") {
    ScanStatistics s1 = conjecture_scan(ScanModel::parse("tree"), 6, 20, 7);
    ScanStatistics s2 = conjecture_scan(ScanModel::parse("tree"), 6, 20, 7);
    std::string j1 = scan_to_json(s1), j2 = scan_to_json(s2);
    CHECK(j1 == j2);
    for (const char* key : {"\"model\"", "\"n\"", "\"trials\"", "\"seed\"", "\"hits\"",
                            "\"fraction\"", "\"failures\"", "\"instance_hashes\""})
        CHECK(j1.find(key) != std::string::npos);
}

TEST_CASE("dot export") {
    std::string one = export_dot(make_graph(1, {}), 0);
    CHECK(one.find("v0") != std::string::npos);

    std::string t6 = export_dot(parse_edge_list(kT6Edges), 0);
    CHECK(t6.find("rank=same") != std::string::npos);
    // Orbit coloring: 3 and 4 share a color, 5 differs.
    auto color_of = [&](const std::string& dot, int v) {
        size_t pos = dot.find("v" + std::to_string(v) + " [");
        size_t fill = dot.find("fillcolor=", pos);
        return dot.substr(fill, dot.find_first_of(",]", fill) - fill);
    };
    CHECK(color_of(t6, 3) == color_of(t6, 4));
    CHECK(color_of(t6, 3) != color_of(t6, 5));

    std::string triangle = export_dot(parse_edge_list("3\n0 1\n1 2\n0 2"), 0);
    CHECK(triangle.find("fillcolor=white") != std::string::npos);
    CHECK(triangle.find("dir=none") != std::string::npos);

    CHECK(export_dot(parse_edge_list(kT6Edges), 0) == export_dot(parse_edge_list(kT6Edges), 0));
}
