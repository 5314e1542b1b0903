#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyperpoly/hypergraph.hpp"

namespace hyperpoly {

struct CorpusOptions {
    std::uint64_t seed = 0;
    std::size_t count = 200;
    std::size_t max_vertices = 7;
    std::size_t max_hyperedges = 6;
};

/// Random hypergraphs with connected Bip H, drawn by rejection. Vertex ids
/// are v1..vn and hyperedge ids e1..em; parallel hyperedges and size-1
/// hyperedges occur. Same options, same corpus.
std::vector<Hypergraph> generate_corpus(const CorpusOptions& options);

}  // namespace hyperpoly
