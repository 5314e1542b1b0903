#include "hyperpoly/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hyperpoly/error.hpp"
#include "hyperpoly/random.hpp"

namespace hyperpoly {

namespace {

// Sizes lean small: half the draws are 2, the rest uniform over [1, n].
std::size_t draw_size(Rng& rng, std::size_t n) {
    if (n >= 2 && rng.below(2) == 0) return 2;
    return static_cast<std::size_t>(rng.between(1, n));
}

Hypergraph draw_one(Rng& rng, const CorpusOptions& options) {
    // One vertex admits only the zero hypertree, so n starts at 2.
    for (;;) {
        const auto n = static_cast<std::size_t>(rng.between(std::min<std::size_t>(2, options.max_vertices), options.max_vertices));
        const auto m = static_cast<std::size_t>(rng.between(1, options.max_hyperedges));
        std::vector<std::string> vertices;
        for (std::size_t v = 1; v <= n; ++v) vertices.push_back("v" + std::to_string(v));
        std::vector<HyperedgeSpec> hyperedges;
        for (std::size_t e = 1; e <= m; ++e) {
            std::vector<std::size_t> pool(n);
            std::iota(pool.begin(), pool.end(), std::size_t{0});
            rng.shuffle(pool);
            pool.resize(draw_size(rng, n));
            std::sort(pool.begin(), pool.end());
            HyperedgeSpec spec{"e" + std::to_string(e), {}};
            for (auto v : pool) spec.vertices.push_back(vertices[v]);
            hyperedges.push_back(std::move(spec));
        }
        Hypergraph h(vertices, std::move(hyperedges));
        if (is_connected(build_bipartite(h))) return h;
    }
}

}  // namespace

std::vector<Hypergraph> generate_corpus(const CorpusOptions& options) {
    if (options.max_vertices == 0 || options.max_hyperedges == 0) {
        throw Error(ErrorCode::kPrecondition, "corpus bounds must be positive");
    }
    if (options.max_hyperedges > kMaxMaskedEdges) {
        throw Error(ErrorCode::kBudgetExceeded, "corpus hyperedge bound above " + std::to_string(kMaxMaskedEdges));
    }
    Rng rng(options.seed);
    std::vector<Hypergraph> corpus;
    corpus.reserve(options.count);
    for (std::size_t i = 0; i < options.count; ++i) corpus.push_back(draw_one(rng, options));
    return corpus;
}

}  // namespace hyperpoly
