#include <doctest.h>

#include "fixtures.hpp"
#include "hyperpoly/corpus.hpp"

using namespace hyperpoly;
using fixtures::error_code;

TEST_CASE("corpus is deterministic and within bounds") {
    const CorpusOptions opts{8, 100, 5, 4};
    const auto a = generate_corpus(opts);
    CHECK(a == generate_corpus(opts));
    CHECK(a.size() == 100);
    bool saw_parallel = false;
    for (const auto& h : a) {
        CHECK(h.vertex_count() >= 2);
        CHECK(h.vertex_count() <= 5);
        CHECK(h.hyperedge_count() >= 1);
        CHECK(h.hyperedge_count() <= 4);
        CHECK(is_connected(BipartiteGraph(h)));
        for (EdgeIndex e = 0; e + 1 < h.hyperedge_count(); ++e) {
            for (EdgeIndex f = e + 1; f < h.hyperedge_count(); ++f) saw_parallel = saw_parallel || h.members(e) == h.members(f);
        }
    }
    CHECK(saw_parallel);
    CHECK(generate_corpus({9, 100, 5, 4}) != a);
}

TEST_CASE("corpus bounds") {
    CHECK(error_code([] { generate_corpus({1, 1, 0, 3}); }) == ErrorCode::kPrecondition);
    CHECK(error_code([] { generate_corpus({1, 1, 3, 65}); }) == ErrorCode::kBudgetExceeded);
    CHECK(generate_corpus({1, 0, 3, 3}).empty());
}
