#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hyperpoly {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

// Subset-based operations address hyperedges through a 64-bit mask.
inline constexpr std::size_t kMaxMaskedEdges = 64;

struct HyperedgeSpec {
    std::string id;
    std::vector<std::string> vertices;
};

/// A hypergraph H = (V, E). Hyperedges form a multiset: two hyperedges with
/// the same vertex set are still distinct, told apart by their id.
///
/// Vertices and hyperedges keep document order; indices into both are
/// stable and used throughout the library in place of string labels.
class Hypergraph {
public:
    Hypergraph() = default;

    /// Validates identifiers and incidences; throws Error on the first
    /// violation (duplicate id, empty hyperedge, undeclared vertex).
    Hypergraph(std::vector<std::string> vertices, std::vector<HyperedgeSpec> hyperedges);

    std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
    std::size_t hyperedge_count() const noexcept { return edge_ids_.size(); }

    const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
    const std::string& hyperedge_id(EdgeIndex e) const { return edge_ids_.at(e); }
    const std::vector<std::string>& vertex_ids() const noexcept { return vertex_ids_; }
    const std::vector<std::string>& hyperedge_ids() const noexcept { return edge_ids_; }

    /// Member vertices of hyperedge e, ascending by vertex index.
    const std::vector<VertexIndex>& members(EdgeIndex e) const { return members_.at(e); }

    std::optional<VertexIndex> find_vertex(std::string_view id) const;
    std::optional<EdgeIndex> find_hyperedge(std::string_view id) const;

    /// Non-fatal remarks about the instance (currently: size-1 hyperedges,
    /// which admit only the value 0 in any hypertree).
    std::vector<std::string> diagnostics() const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::vector<std::string> vertex_ids_;
    std::vector<std::string> edge_ids_;
    std::vector<std::vector<VertexIndex>> members_;
};

Hypergraph parse_hypergraph(std::string_view text);
Hypergraph hypergraph_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Hypergraph& h);
std::string serialize_hypergraph(const Hypergraph& h);

/// A set of hyperedge indices of one hypergraph.
class EdgeSubset {
public:
    constexpr EdgeSubset() = default;
    constexpr explicit EdgeSubset(std::uint64_t bits) : bits_(bits) {}

    static constexpr EdgeSubset full(std::size_t edge_count) {
        return EdgeSubset(edge_count >= 64 ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << edge_count) - 1);
    }
    static constexpr EdgeSubset single(EdgeIndex e) { return EdgeSubset(std::uint64_t{1} << e); }

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::size_t size() const noexcept {
        return static_cast<std::size_t>(std::popcount(bits_));
    }
    constexpr bool contains(EdgeIndex e) const noexcept { return (bits_ >> e) & 1U; }
    constexpr bool is_subset_of(EdgeSubset other) const noexcept {
        return (bits_ & ~other.bits_) == 0;
    }

    constexpr EdgeSubset with(EdgeIndex e) const { return EdgeSubset(bits_ | (std::uint64_t{1} << e)); }
    constexpr EdgeSubset without(EdgeIndex e) const { return EdgeSubset(bits_ & ~(std::uint64_t{1} << e)); }

    friend constexpr EdgeSubset operator&(EdgeSubset a, EdgeSubset b) { return EdgeSubset(a.bits_ & b.bits_); }
    friend constexpr EdgeSubset operator|(EdgeSubset a, EdgeSubset b) { return EdgeSubset(a.bits_ | b.bits_); }
    friend constexpr auto operator<=>(EdgeSubset, EdgeSubset) = default;

    std::vector<EdgeIndex> indices() const;

private:
    std::uint64_t bits_ = 0;
};

/// Bip H: the bipartite incidence graph with colour classes V and E, where
/// v ~ e iff v is a member of e. Keeps a copy of its source hypergraph so
/// labels and counterexample documents stay available downstream.
class BipartiteGraph {
public:
    explicit BipartiteGraph(Hypergraph source);

    const Hypergraph& source() const noexcept { return source_; }
    std::size_t vertex_count() const noexcept { return source_.vertex_count(); }
    std::size_t hyperedge_count() const noexcept { return source_.hyperedge_count(); }
    std::size_t incidence_count() const noexcept { return incidence_count_; }

    std::size_t degree(EdgeIndex e) const { return source_.members(e).size(); }
    const std::vector<VertexIndex>& vertices_of(EdgeIndex e) const { return source_.members(e); }
    const std::vector<EdgeIndex>& hyperedges_of(VertexIndex v) const { return incident_.at(v); }

    /// Resolves hyperedge ids; throws kUnknownId for unknown labels.
    EdgeIndex edge_index(std::string_view id) const;
    EdgeSubset subset(std::span<const std::string> ids) const;

private:
    Hypergraph source_;
    std::vector<std::vector<EdgeIndex>> incident_;
    std::size_t incidence_count_ = 0;
};

BipartiteGraph build_bipartite(const Hypergraph& h);

bool is_connected(const BipartiteGraph& b);

/// mu(S) = |union of S| - (components of the subgraph induced by S and its
/// incident vertices); mu(empty) = 0. Throws kUnknownId if S names an
/// index outside E.
int mu(const BipartiteGraph& b, EdgeSubset s);

/// mu over every subset of E, precomputed once. Used by the subset-based
/// checkers; construction throws kBudgetExceeded above `bound` hyperedges.
class MuTable {
public:
    MuTable(const BipartiteGraph& b, std::size_t bound);

    int operator()(EdgeSubset s) const { return values_[static_cast<std::size_t>(s.bits())]; }
    std::size_t edge_count() const noexcept { return edge_count_; }

private:
    std::size_t edge_count_;
    std::vector<int> values_;
};

struct GraphEdge {
    std::string id;
    VertexIndex a;
    VertexIndex b;
};

/// An ordinary multigraph: parallel edges allowed. Loops are representable
/// here; the conversions and Tutte routines that cannot handle them reject
/// them.
class Multigraph {
public:
    Multigraph() = default;
    Multigraph(std::vector<std::string> vertices,
               std::vector<std::pair<std::string, std::pair<std::string, std::string>>> edges);

    std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<std::string>& vertex_ids() const noexcept { return vertex_ids_; }
    const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
    const GraphEdge& edge(std::size_t i) const { return edges_.at(i); }

    bool has_loop() const;
    bool is_connected() const;

private:
    std::vector<std::string> vertex_ids_;
    std::vector<GraphEdge> edges_;
};

Multigraph parse_graph(std::string_view text);
Multigraph graph_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Multigraph& g);

/// Each edge becomes a two-element hyperedge carrying the edge's id.
/// Throws kLoop for loop edges.
Hypergraph graph_to_hypergraph(const Multigraph& g);

}  // namespace hyperpoly
