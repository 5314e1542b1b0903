#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "hyperpoly/corpus.hpp"
#include "hyperpoly/hypertree.hpp"

using namespace hyperpoly;
using fixtures::error_code;

namespace {

std::vector<Hypertree> trees(std::vector<std::vector<int>> rows) {
    std::vector<Hypertree> out;
    for (auto& r : rows) out.push_back({std::move(r)});
    return out;
}

// Every map with the right sum and 0 <= f(e) <= d(e) - 1.
std::vector<Hypertree> candidates(const BipartiteGraph& b) {
    std::vector<Hypertree> out;
    const std::size_t m = b.hyperedge_count();
    const int target = static_cast<int>(b.vertex_count()) - 1;
    Hypertree f{std::vector<int>(m, 0)};
    auto rec = [&](auto&& self, std::size_t e, int left) -> void {
        if (e == m) {
            if (left == 0) out.push_back(f);
            return;
        }
        for (int v = 0; v <= std::min(left, static_cast<int>(b.degree(e)) - 1); ++v) {
            f.values[e] = v;
            self(self, e + 1, left - v);
        }
        f.values[e] = 0;
    };
    rec(rec, 0, target);
    return out;
}

}  // namespace

TEST_CASE("hypertrees of the triangle") {
    const BipartiteGraph b(fixtures::triangle());
    CHECK(enumerate_hypertrees(b) == trees({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    CHECK(is_hypertree(b, {{1, 1, 0}}));
    CHECK_FALSE(is_hypertree(b, {{2, 0, 0}}));
    CHECK_FALSE(is_hypertree(b, {{1, 0, 0}}));
    CHECK_FALSE(is_hypertree(b, {{-1, 2, 1}}));
    CHECK(is_hypertree_polymatroid(b, {{1, 1, 0}}));
    CHECK_FALSE(is_hypertree_polymatroid(b, {{2, 0, 0}}));
}

TEST_CASE("hypertrees of two parallel hyperedges") {
    const BipartiteGraph b(fixtures::parallel_pair());
    CHECK(enumerate_hypertrees(b) == trees({{0, 2}, {1, 1}, {2, 0}}));
}

TEST_CASE("a tree-shaped incidence graph has one hypertree") {
    const BipartiteGraph b(Hypergraph({"1", "2", "3", "4"}, {{"p", {"1", "2", "3"}}, {"q", {"3", "4"}}}));
    CHECK(enumerate_hypertrees(b) == trees({{2, 1}}));
    const BipartiteGraph whole(Hypergraph({"1", "2", "3", "4"}, {{"all", {"1", "2", "3", "4"}}}));
    CHECK(enumerate_hypertrees(whole) == trees({{3}}));
}

TEST_CASE("size-one hyperedges only take the value zero") {
    const BipartiteGraph b(Hypergraph({"a", "b"}, {{"e", {"a", "b"}}, {"s", {"a"}}}));
    CHECK(enumerate_hypertrees(b) == trees({{1, 0}}));
}

TEST_CASE("complete graph K6 has 6^4 hypertrees") {
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) ends.emplace_back(i, j);
    const BipartiteGraph b(graph_to_hypergraph(fixtures::graph(6, ends)));
    const auto all = enumerate_hypertrees(b);
    CHECK(all.size() == 1296);
    CHECK(std::all_of(all.begin(), all.end(), [&](const Hypertree& f) { return is_hypertree(b, f); }));
}

TEST_CASE("realizing trees re-validate") {
    const BipartiteGraph b(fixtures::triangle());
    const auto tau = find_realizing_tree(b, {{1, 1, 0}});
    REQUIRE(tau.has_value());
    CHECK(tau->size() == 5);
    CHECK(std::is_sorted(tau->begin(), tau->end()));
    CHECK(hypertree_from_tree(b, *tau) == Hypertree{{1, 1, 0}});
    CHECK_FALSE(find_realizing_tree(b, {{2, 0, 0}}).has_value());
    CHECK(error_code([&] { find_realizing_tree(b, {{1, 1}}); }) == ErrorCode::kDomainMismatch);
}

TEST_CASE("hypertree_from_tree rejects non-trees") {
    const BipartiteGraph b(fixtures::triangle());
    // v1-a-v2-b-v3-c-v1 minus one incidence is a path, hence a tree.
    SpanningTreeWitness path{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}};
    CHECK(hypertree_from_tree(b, path) == Hypertree{{1, 1, 0}});
    SpanningTreeWitness short_one(path.begin(), path.end() - 1);
    CHECK(error_code([&] { hypertree_from_tree(b, short_one); }) == ErrorCode::kPrecondition);
    SpanningTreeWitness foreign{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {1, 2}};  // v2 is not in c
    CHECK(error_code([&] { hypertree_from_tree(b, foreign); }) == ErrorCode::kPrecondition);
    // Same incidence twice.
    SpanningTreeWitness repeated{{0, 0}, {0, 0}, {1, 1}, {2, 1}, {2, 2}};
    CHECK(error_code([&] { hypertree_from_tree(b, repeated); }) == ErrorCode::kPrecondition);
}

TEST_CASE("hypertree_from_tree rejects a cycle") {
    const BipartiteGraph b(fixtures::parallel_pair());
    // v1-e1-v2-e2-v1 is a cycle; total edge count 4 = 3 + 2 - 1.
    SpanningTreeWitness cyc{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    CHECK(error_code([&] { hypertree_from_tree(b, cyc); }) == ErrorCode::kPrecondition);
}

TEST_CASE("enumeration preconditions") {
    const BipartiteGraph split(Hypergraph({"v1", "v2", "v3"}, {{"a", {"v1", "v2"}}}));
    CHECK(error_code([&] { enumerate_hypertrees(split); }) == ErrorCode::kNotConnected);
    const BipartiteGraph b(fixtures::triangle());
    CHECK(error_code([&] { enumerate_hypertrees(b, {20, 1}); }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("transfers on the triangle") {
    const BipartiteGraph b(fixtures::triangle());
    const Hypertree f{{1, 1, 0}};
    CHECK(transfer_valid(b, f, {0, 2}));
    CHECK(transfer_valid(b, f, {1, 2}));
    CHECK_FALSE(transfer_valid(b, f, {0, 1}));
    CHECK_FALSE(transfer_valid(b, f, {2, 0}));
    CHECK(error_code([&] { transfer_valid(b, f, {1, 1}); }) == ErrorCode::kPrecondition);
    CHECK(apply_transfer(f, {0, 2}) == Hypertree{{0, 1, 1}});
    for (EdgeIndex from = 0; from < 3; ++from) {
        for (EdgeIndex to = 0; to < 3; ++to) {
            if (from != to) CHECK(transfer_valid(b, f, {from, to}) == transfer_valid_by_tightness(b, f, {from, to}));
        }
    }
}

TEST_CASE("tight sets at a triangle hypertree") {
    const BipartiteGraph b(fixtures::triangle());
    const Hypertree f{{1, 1, 0}};
    const auto tight = tight_family(b, f);
    std::vector<std::uint64_t> masks;
    for (auto s : tight) masks.push_back(s.bits());
    CHECK(masks == std::vector<std::uint64_t>{0b000, 0b001, 0b010, 0b011, 0b111});
    CHECK(is_tight(b, f, EdgeSubset(0b011)));
    CHECK_FALSE(is_tight(b, f, EdgeSubset(0b100)));
}

TEST_CASE("transfer closure reproduces the enumeration") {
    const BipartiteGraph b(fixtures::triangle());
    for (const auto& seed : enumerate_hypertrees(b)) CHECK(enumerate_hypertrees_by_transfer(b, seed) == enumerate_hypertrees(b));
    CHECK(error_code([&] { enumerate_hypertrees_by_transfer(b, {{2, 0, 0}}); }) == ErrorCode::kPrecondition);
}

TEST_CASE("hypertree documents") {
    const BipartiteGraph b(fixtures::triangle());
    const Hypertree f{{1, 0, 1}};
    const auto doc = to_json(b, f);
    CHECK(doc == nlohmann::json{{"a", 1}, {"b", 0}, {"c", 1}});
    CHECK(hypertree_from_json(b, doc) == f);
    CHECK(error_code([&] { hypertree_from_json(b, nlohmann::json::array()); }) == ErrorCode::kMalformed);
    CHECK(error_code([&] { hypertree_from_json(b, {{"a", 1}, {"b", 0}, {"z", 1}}); }) == ErrorCode::kUnknownId);
    CHECK(error_code([&] { hypertree_from_json(b, {{"a", 1}, {"b", 1}}); }) == ErrorCode::kDomainMismatch);
}

// Property checks on a seeded corpus; the two routes must agree everywhere.
TEST_CASE("checkers and enumerators agree on random instances") {
    for (const auto& h : generate_corpus({99, 60, 6, 5})) {
        const BipartiteGraph b(h);
        const auto all = enumerate_hypertrees(b);
        CHECK(std::is_sorted(all.begin(), all.end()));
        std::size_t accepted = 0;
        for (const auto& f : candidates(b)) {
            const bool direct = is_hypertree(b, f);
            CHECK(direct == is_hypertree_polymatroid(b, f));
            CHECK(direct == std::binary_search(all.begin(), all.end(), f));
            if (direct) {
                ++accepted;
                const auto tau = find_realizing_tree(b, f);
                REQUIRE(tau.has_value());
                CHECK(hypertree_from_tree(b, *tau) == f);
            }
        }
        CHECK(accepted == all.size());
        CHECK(enumerate_hypertrees_by_transfer(b, all.front()) == all);
    }
}
