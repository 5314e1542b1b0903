#pragma once

#include <doctest.h>

#include <string>
#include <utility>
#include <vector>

#include "hyperpoly/error.hpp"
#include "hyperpoly/hypergraph.hpp"

namespace fixtures {

using namespace hyperpoly;

// Triangle C3 as a hypergraph: hyperedges a, b, c of size 2.
inline Hypergraph triangle() {
    return Hypergraph({"v1", "v2", "v3"}, {{"a", {"v1", "v2"}}, {"b", {"v2", "v3"}}, {"c", {"v1", "v3"}}});
}

// Two parallel hyperedges on three vertices.
inline Hypergraph parallel_pair() {
    return Hypergraph({"v1", "v2", "v3"}, {{"e1", {"v1", "v2", "v3"}}, {"e2", {"v1", "v2", "v3"}}});
}

inline Multigraph graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& ends) {
    std::vector<std::string> vertices;
    for (std::size_t v = 1; v <= n; ++v) vertices.push_back("v" + std::to_string(v));
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> edges;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        edges.push_back({"e" + std::to_string(i + 1), {vertices[ends[i].first], vertices[ends[i].second]}});
    }
    return Multigraph(vertices, edges);
}

inline Multigraph cycle(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (std::size_t i = 0; i < n; ++i) ends.emplace_back(i, (i + 1) % n);
    return graph(n, ends);
}

inline Multigraph k4() { return graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// Two vertices joined by three parallel edges.
inline Multigraph triple_bond() { return graph(2, {{0, 1}, {0, 1}, {0, 1}}); }

template <class F>
ErrorCode error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::kInvariantViolation;
}

}  // namespace fixtures
