#include "hyperpoly/hypergraph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hyperpoly/error.hpp"
#include "union_find.hpp"

namespace hyperpoly {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kMalformed: return "malformed document";
        case ErrorCode::kDuplicateId: return "duplicate identifier";
        case ErrorCode::kEmptyHyperedge: return "empty hyperedge";
        case ErrorCode::kUndeclaredVertex: return "undeclared vertex";
        case ErrorCode::kLoop: return "loop not representable";
        case ErrorCode::kUnknownId: return "unknown identifier";
        case ErrorCode::kDomainMismatch: return "domain mismatch";
        case ErrorCode::kPrecondition: return "precondition violated";
        case ErrorCode::kNotConnected: return "hypergraph not connected";
        case ErrorCode::kBudgetExceeded: return "budget exceeded";
        case ErrorCode::kInvariantViolation: return "invariant violated";
    }
    return "unknown error";
}

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& detail) {
    throw Error(ErrorCode::kMalformed, "malformed document: " + detail);
}

std::vector<std::string> string_list(const json& doc, const char* field) {
    auto it = doc.find(field);
    if (it == doc.end()) malformed(std::string("missing field '") + field + "'");
    if (!it->is_array()) malformed(std::string("field '") + field + "' must be an array");
    std::vector<std::string> out;
    out.reserve(it->size());
    for (const auto& item : *it) {
        if (!item.is_string()) malformed(std::string("field '") + field + "' must hold strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

json parse_text(std::string_view text) {
    json doc = json::parse(text.begin(), text.end(), nullptr, false);
    if (doc.is_discarded()) malformed("not valid JSON");
    if (!doc.is_object()) malformed("top level must be an object");
    return doc;
}

std::unordered_map<std::string, VertexIndex> index_vertices(const std::vector<std::string>& ids) {
    std::unordered_map<std::string, VertexIndex> index;
    for (VertexIndex v = 0; v < ids.size(); ++v) {
        if (ids[v].empty()) malformed("vertex identifiers must be nonempty");
        if (!index.emplace(ids[v], v).second) {
            throw Error(ErrorCode::kDuplicateId, "duplicate identifier: vertex '" + ids[v] + "'");
        }
    }
    return index;
}

}  // namespace

Hypergraph::Hypergraph(std::vector<std::string> vertices, std::vector<HyperedgeSpec> hyperedges)
    : vertex_ids_(std::move(vertices)) {
    const auto vertex_index = index_vertices(vertex_ids_);
    std::unordered_set<std::string> seen_edges;
    edge_ids_.reserve(hyperedges.size());
    members_.reserve(hyperedges.size());
    for (auto& spec : hyperedges) {
        if (spec.id.empty()) malformed("hyperedge identifiers must be nonempty");
        if (!seen_edges.insert(spec.id).second) {
            throw Error(ErrorCode::kDuplicateId, "duplicate identifier: hyperedge '" + spec.id + "'");
        }
        if (spec.vertices.empty()) {
            throw Error(ErrorCode::kEmptyHyperedge, "empty hyperedge: '" + spec.id + "'");
        }
        std::vector<VertexIndex> members;
        members.reserve(spec.vertices.size());
        for (const auto& label : spec.vertices) {
            auto it = vertex_index.find(label);
            if (it == vertex_index.end()) {
                throw Error(ErrorCode::kUndeclaredVertex,
                            "undeclared vertex '" + label + "' in hyperedge '" + spec.id + "'");
            }
            members.push_back(it->second);
        }
        std::sort(members.begin(), members.end());
        if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
            throw Error(ErrorCode::kDuplicateId,
                        "duplicate identifier: repeated vertex in hyperedge '" + spec.id + "'");
        }
        edge_ids_.push_back(std::move(spec.id));
        members_.push_back(std::move(members));
    }
}

std::optional<VertexIndex> Hypergraph::find_vertex(std::string_view id) const {
    auto it = std::find(vertex_ids_.begin(), vertex_ids_.end(), id);
    if (it == vertex_ids_.end()) return std::nullopt;
    return static_cast<VertexIndex>(it - vertex_ids_.begin());
}

std::optional<EdgeIndex> Hypergraph::find_hyperedge(std::string_view id) const {
    auto it = std::find(edge_ids_.begin(), edge_ids_.end(), id);
    if (it == edge_ids_.end()) return std::nullopt;
    return static_cast<EdgeIndex>(it - edge_ids_.begin());
}

std::vector<std::string> Hypergraph::diagnostics() const {
    std::vector<std::string> notes;
    for (EdgeIndex e = 0; e < edge_ids_.size(); ++e) {
        if (members_[e].size() == 1) {
            notes.push_back("hyperedge '" + edge_ids_[e] +
                            "' has a single vertex; every hypertree assigns it 0");
        }
    }
    return notes;
}

Hypergraph hypergraph_from_json(const json& doc) {
    if (!doc.is_object()) malformed("hypergraph must be an object");
    auto vertices = string_list(doc, "vertices");
    auto it = doc.find("hyperedges");
    if (it == doc.end()) malformed("missing field 'hyperedges'");
    if (!it->is_array()) malformed("field 'hyperedges' must be an array");
    std::vector<HyperedgeSpec> edges;
    edges.reserve(it->size());
    for (const auto& item : *it) {
        if (!item.is_object()) malformed("hyperedge entries must be objects");
        auto id = item.find("id");
        if (id == item.end() || !id->is_string()) malformed("hyperedge entry needs a string 'id'");
        edges.push_back({id->get<std::string>(), string_list(item, "vertices")});
    }
    return Hypergraph(std::move(vertices), std::move(edges));
}

Hypergraph parse_hypergraph(std::string_view text) {
    return hypergraph_from_json(parse_text(text));
}

json to_json(const Hypergraph& h) {
    json edges = json::array();
    for (EdgeIndex e = 0; e < h.hyperedge_count(); ++e) {
        json members = json::array();
        for (VertexIndex v : h.members(e)) members.push_back(h.vertex_id(v));
        edges.push_back({{"id", h.hyperedge_id(e)}, {"vertices", std::move(members)}});
    }
    return {{"vertices", h.vertex_ids()}, {"hyperedges", std::move(edges)}};
}

std::string serialize_hypergraph(const Hypergraph& h) { return to_json(h).dump(); }

std::vector<EdgeIndex> EdgeSubset::indices() const {
    std::vector<EdgeIndex> out;
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
        out.push_back(static_cast<EdgeIndex>(std::countr_zero(rest)));
    }
    return out;
}

BipartiteGraph::BipartiteGraph(Hypergraph source)
    : source_(std::move(source)), incident_(source_.vertex_count()) {
    for (EdgeIndex e = 0; e < source_.hyperedge_count(); ++e) {
        for (VertexIndex v : source_.members(e)) incident_[v].push_back(e);
        incidence_count_ += source_.members(e).size();
    }
}

EdgeIndex BipartiteGraph::edge_index(std::string_view id) const {
    auto e = source_.find_hyperedge(id);
    if (!e) throw Error(ErrorCode::kUnknownId, "unknown identifier: hyperedge '" + std::string(id) + "'");
    return *e;
}

EdgeSubset BipartiteGraph::subset(std::span<const std::string> ids) const {
    if (hyperedge_count() > kMaxMaskedEdges) {
        throw Error(ErrorCode::kPrecondition, "edge subsets support at most 64 hyperedges");
    }
    EdgeSubset s;
    for (const auto& id : ids) s = s.with(edge_index(id));
    return s;
}

BipartiteGraph build_bipartite(const Hypergraph& h) { return BipartiteGraph(h); }

bool is_connected(const BipartiteGraph& b) {
    const std::size_t n = b.vertex_count();
    const std::size_t m = b.hyperedge_count();
    if (n + m == 0) return false;
    detail::UnionFind uf(n + m);
    for (EdgeIndex e = 0; e < m; ++e) {
        for (VertexIndex v : b.vertices_of(e)) uf.unite(v, n + e);
    }
    return uf.components() == 1;
}

int mu(const BipartiteGraph& b, EdgeSubset s) {
    const std::size_t m = b.hyperedge_count();
    if (m < kMaxMaskedEdges && (s.bits() >> m) != 0) {
        throw Error(ErrorCode::kUnknownId, "unknown identifier: subset names a hyperedge outside E");
    }
    if (s.empty()) return 0;
    // Components of G|_S: each hyperedge node joins its members, so the
    // count is (touched vertices) - (successful merges between them).
    detail::UnionFind uf(b.vertex_count());
    std::vector<bool> touched(b.vertex_count(), false);
    std::size_t union_size = 0;
    std::size_t merges = 0;
    for (EdgeIndex e : s.indices()) {
        const auto& vs = b.vertices_of(e);
        for (VertexIndex v : vs) {
            if (!touched[v]) {
                touched[v] = true;
                ++union_size;
            }
            if (uf.unite(vs.front(), v)) ++merges;
        }
    }
    const std::size_t components = union_size - merges;
    return static_cast<int>(union_size) - static_cast<int>(components);
}

MuTable::MuTable(const BipartiteGraph& b, std::size_t bound) : edge_count_(b.hyperedge_count()) {
    if (edge_count_ > bound || edge_count_ > 30) {
        throw Error(ErrorCode::kBudgetExceeded,
                    "budget exceeded: subset enumeration over " + std::to_string(edge_count_) +
                        " hyperedges exceeds the exhaustive bound of " + std::to_string(bound));
    }
    const std::uint64_t count = std::uint64_t{1} << edge_count_;
    values_.resize(static_cast<std::size_t>(count));
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        values_[static_cast<std::size_t>(bits)] = mu(b, EdgeSubset(bits));
    }
}

Multigraph::Multigraph(std::vector<std::string> vertices,
                       std::vector<std::pair<std::string, std::pair<std::string, std::string>>> edges)
    : vertex_ids_(std::move(vertices)) {
    const auto vertex_index = index_vertices(vertex_ids_);
    std::unordered_set<std::string> seen;
    for (auto& [id, ends] : edges) {
        if (id.empty()) malformed("edge identifiers must be nonempty");
        if (!seen.insert(id).second) {
            throw Error(ErrorCode::kDuplicateId, "duplicate identifier: edge '" + id + "'");
        }
        auto resolve = [&](const std::string& label) {
            auto it = vertex_index.find(label);
            if (it == vertex_index.end()) {
                throw Error(ErrorCode::kUndeclaredVertex,
                            "undeclared vertex '" + label + "' in edge '" + id + "'");
            }
            return it->second;
        };
        edges_.push_back({std::move(id), resolve(ends.first), resolve(ends.second)});
    }
}

bool Multigraph::has_loop() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const GraphEdge& e) { return e.a == e.b; });
}

bool Multigraph::is_connected() const {
    if (vertex_ids_.empty()) return false;
    detail::UnionFind uf(vertex_ids_.size());
    for (const auto& e : edges_) uf.unite(e.a, e.b);
    return uf.components() == 1;
}

Multigraph graph_from_json(const json& doc) {
    if (!doc.is_object()) malformed("graph must be an object");
    auto vertices = string_list(doc, "vertices");
    auto it = doc.find("edges");
    if (it == doc.end()) malformed("missing field 'edges'");
    if (!it->is_array()) malformed("field 'edges' must be an array");
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> edges;
    for (const auto& item : *it) {
        if (!item.is_object()) malformed("edge entries must be objects");
        auto id = item.find("id");
        if (id == item.end() || !id->is_string()) malformed("edge entry needs a string 'id'");
        auto ends = string_list(item, "ends");
        if (ends.size() != 2) malformed("edge '" + id->get<std::string>() + "' needs exactly two ends");
        edges.push_back({id->get<std::string>(), {ends[0], ends[1]}});
    }
    return Multigraph(std::move(vertices), std::move(edges));
}

Multigraph parse_graph(std::string_view text) { return graph_from_json(parse_text(text)); }

json to_json(const Multigraph& g) {
    json edges = json::array();
    for (const auto& e : g.edges()) {
        edges.push_back({{"id", e.id}, {"ends", {g.vertex_ids()[e.a], g.vertex_ids()[e.b]}}});
    }
    return {{"vertices", g.vertex_ids()}, {"edges", std::move(edges)}};
}

Hypergraph graph_to_hypergraph(const Multigraph& g) {
    std::vector<HyperedgeSpec> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        if (e.a == e.b) {
            throw Error(ErrorCode::kLoop, "loop not representable: edge '" + e.id + "'");
        }
        edges.push_back({e.id, {g.vertex_ids()[e.a], g.vertex_ids()[e.b]}});
    }
    return Hypergraph(g.vertex_ids(), std::move(edges));
}

}  // namespace hyperpoly
