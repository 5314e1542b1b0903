#include <doctest.h>

#include "fixtures.hpp"

using namespace hyperpoly;
using fixtures::error_code;

TEST_CASE("document order and members are kept") {
    const Hypergraph h = parse_hypergraph(R"({"vertices":["x","y","z"],
        "hyperedges":[{"id":"b","vertices":["z","x"]},{"id":"a","vertices":["y"]}]})");
    CHECK(h.vertex_count() == 3);
    CHECK(h.hyperedge_count() == 2);
    CHECK(h.hyperedge_id(0) == "b");
    CHECK(h.members(0) == std::vector<VertexIndex>{0, 2});
    CHECK(h.find_vertex("z") == 2);
    CHECK_FALSE(h.find_hyperedge("q").has_value());
}

TEST_CASE("parse and serialize round trip") {
    const Hypergraph h = fixtures::triangle();
    CHECK(parse_hypergraph(serialize_hypergraph(h)) == h);
    const Hypergraph p = fixtures::parallel_pair();
    CHECK(parse_hypergraph(serialize_hypergraph(p)) == p);
}

TEST_CASE("input errors carry their codes") {
    CHECK(error_code([] { parse_hypergraph("not json"); }) == ErrorCode::kMalformed);
    CHECK(error_code([] { parse_hypergraph(R"({"vertices":["a"]})"); }) == ErrorCode::kMalformed);
    CHECK(error_code([] { parse_hypergraph(R"({"vertices":[1],"hyperedges":[]})"); }) == ErrorCode::kMalformed);
    CHECK(error_code([] {
              parse_hypergraph(R"({"vertices":["a","a"],"hyperedges":[{"id":"e","vertices":["a"]}]})");
          }) == ErrorCode::kDuplicateId);
    CHECK(error_code([] {
              parse_hypergraph(R"({"vertices":["a"],"hyperedges":[{"id":"e","vertices":["a"]},{"id":"e","vertices":["a"]}]})");
          }) == ErrorCode::kDuplicateId);
    CHECK(error_code([] {
              parse_hypergraph(R"({"vertices":["a"],"hyperedges":[{"id":"e","vertices":[]}]})");
          }) == ErrorCode::kEmptyHyperedge);
    CHECK(error_code([] {
              parse_hypergraph(R"({"vertices":["a"],"hyperedges":[{"id":"e","vertices":["b"]}]})");
          }) == ErrorCode::kUndeclaredVertex);
    CHECK(error_code([] {
              parse_hypergraph(R"({"vertices":["a","b"],"hyperedges":[{"id":"e","vertices":["a","a"]}]})");
          }) == ErrorCode::kDuplicateId);
}

TEST_CASE("size-one hyperedges are accepted and flagged") {
    const Hypergraph h({"a", "b"}, {{"e", {"a", "b"}}, {"s", {"a"}}});
    const auto notes = h.diagnostics();
    REQUIRE(notes.size() == 1);
    CHECK(notes[0].find("'s'") != std::string::npos);
    CHECK(fixtures::triangle().diagnostics().empty());
}

TEST_CASE("incidence graph") {
    const BipartiteGraph b = build_bipartite(fixtures::triangle());
    CHECK(b.incidence_count() == 6);
    CHECK(b.degree(1) == 2);
    CHECK(b.hyperedges_of(0) == std::vector<EdgeIndex>{0, 2});
    CHECK(b.edge_index("c") == 2);
    CHECK(error_code([&] { b.edge_index("zz"); }) == ErrorCode::kUnknownId);
    const std::vector<std::string> ids{"a", "c"};
    CHECK(b.subset(ids).bits() == 0b101);
    CHECK(is_connected(b));
}

TEST_CASE("connectivity") {
    CHECK_FALSE(is_connected(BipartiteGraph(Hypergraph({"v1", "v2", "v3"}, {{"a", {"v1", "v2"}}}))));
    CHECK_FALSE(is_connected(BipartiteGraph(Hypergraph({"v1", "v2"}, {}))));
    CHECK(is_connected(BipartiteGraph(Hypergraph({"v1"}, {{"a", {"v1"}}}))));
    CHECK(is_connected(BipartiteGraph(fixtures::parallel_pair())));
}

TEST_CASE("mu on the triangle") {
    const BipartiteGraph b(fixtures::triangle());
    CHECK(mu(b, EdgeSubset()) == 0);
    CHECK(mu(b, EdgeSubset(0b001)) == 1);
    CHECK(mu(b, EdgeSubset(0b011)) == 2);
    CHECK(mu(b, EdgeSubset(0b111)) == 2);
    CHECK(error_code([&] { mu(b, EdgeSubset(0b1000)); }) == ErrorCode::kUnknownId);
    const MuTable table(b, 10);
    for (std::uint64_t s = 0; s < 8; ++s) CHECK(table(EdgeSubset(s)) == mu(b, EdgeSubset(s)));
    CHECK(error_code([&] { MuTable(b, 2); }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("mu of two parallel hyperedges") {
    const BipartiteGraph b(fixtures::parallel_pair());
    CHECK(mu(b, EdgeSubset(0b01)) == 2);
    CHECK(mu(b, EdgeSubset(0b11)) == 2);
}

TEST_CASE("edge subsets") {
    const EdgeSubset s = EdgeSubset::single(1).with(3);
    CHECK(s.size() == 2);
    CHECK(s.contains(3));
    CHECK(s.indices() == std::vector<EdgeIndex>{1, 3});
    CHECK(s.without(1) == EdgeSubset::single(3));
    CHECK(s.is_subset_of(EdgeSubset::full(4)));
    CHECK(EdgeSubset::full(64).bits() == ~std::uint64_t{0});
}

TEST_CASE("graph documents") {
    const Multigraph g = parse_graph(R"({"vertices":["p","q"],"edges":[{"id":"x","ends":["p","q"]},{"id":"y","ends":["q","p"]}]})");
    CHECK(g.edge_count() == 2);
    CHECK(g.is_connected());
    CHECK(parse_graph(to_json(g).dump()).edge_count() == 2);
    const Hypergraph h = graph_to_hypergraph(g);
    CHECK(h.hyperedge_ids() == std::vector<std::string>{"x", "y"});
    const BipartiteGraph b(h);
    for (EdgeIndex e = 0; e < b.hyperedge_count(); ++e) CHECK(b.degree(e) == 2);

    const Multigraph loop = parse_graph(R"({"vertices":["p"],"edges":[{"id":"l","ends":["p","p"]}]})");
    CHECK(loop.has_loop());
    CHECK(error_code([&] { graph_to_hypergraph(loop); }) == ErrorCode::kLoop);
    CHECK(error_code([] { parse_graph(R"({"vertices":["p"],"edges":[{"id":"l","ends":["p"]}]})"); }) ==
          ErrorCode::kMalformed);
    CHECK(error_code([] { parse_graph(R"({"vertices":["p"],"edges":[{"id":"l","ends":["p","r"]}]})"); }) ==
          ErrorCode::kUndeclaredVertex);
}
