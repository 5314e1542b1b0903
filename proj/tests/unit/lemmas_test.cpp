#include <doctest.h>

#include "fixtures.hpp"
#include "hyperpoly/corpus.hpp"
#include "hyperpoly/lemmas.hpp"

using namespace hyperpoly;
using fixtures::error_code;

TEST_CASE("lemma suite on small fixed instances") {
    for (const auto& h : {fixtures::triangle(), fixtures::parallel_pair(), graph_to_hypergraph(fixtures::k4()),
                          graph_to_hypergraph(fixtures::triple_bond())}) {
        const Report r = verify_lemmas(BipartiteGraph(h));
        CHECK(r.passed());
        CHECK_FALSE(r.counterexample().has_value());
    }
}

TEST_CASE("lemma suite report shape") {
    const Report r = verify_lemmas(BipartiteGraph(graph_to_hypergraph(fixtures::k4())));
    const auto doc = r.to_json();
    CHECK(doc["status"] == "pass");
    CHECK(doc["hypertrees"] == 16);
    for (const char* name : {"mu_monotone", "mu_submodular", "mu_full_rank", "checker_equivalence",
                             "transfer_checker_equivalence", "tight_lattice",
                             "slack_implies_inflow", "pair_shift_sender", "pair_shift_receiver",
                             "pair_blocked_receiver", "pair_blocked_sender", "activity_stability",
                             "enumerator_agreement"}) {
        INFO(std::string(name));
        const CheckTally* t = r.find(name);
        REQUIRE(t != nullptr);
        CHECK(t->failed == 0);
        CHECK(t->passed > 0);
    }
}

// With values in {0, 1} a hyperedge cannot both receive and send, so
// transitivity needs larger hyperedges to fire.
TEST_CASE("transitivity fires on triple-parallel hyperedges") {
    const Hypergraph h({"1", "2", "3", "4"},
                       {{"p", {"1", "2", "3", "4"}}, {"q", {"1", "2", "3", "4"}}, {"r", {"1", "2", "3", "4"}}});
    const Report r = verify_lemmas(BipartiteGraph(h));
    CHECK(r.passed());
    CHECK(r.find("transfer_transitivity")->passed > 0);
    CHECK(verify_lemmas(BipartiteGraph(graph_to_hypergraph(fixtures::k4()))).find("transfer_transitivity")->passed == 0);
}

TEST_CASE("lemma suite preconditions") {
    const BipartiteGraph split(Hypergraph({"v1", "v2", "v3"}, {{"a", {"v1", "v2"}}}));
    CHECK(error_code([&] { verify_lemmas(split); }) == ErrorCode::kNotConnected);
    LemmaOptions opts;
    opts.limits.exhaustive_bound = 2;
    CHECK(error_code([&] { verify_lemmas(BipartiteGraph(fixtures::triangle()), opts); }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("lemma suite on a random corpus with sampled orderings") {
    LemmaOptions opts;
    opts.max_all_order_edges = 3;
    opts.ordering_samples = 10;
    opts.seed = 4;
    for (const auto& h : generate_corpus({31, 40, 6, 5})) CHECK(verify_lemmas(BipartiteGraph(h), opts).passed());
}
