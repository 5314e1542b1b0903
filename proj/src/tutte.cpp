#include "hyperpoly/tutte.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "hyperpoly/error.hpp"
#include "union_find.hpp"

namespace hyperpoly {

std::int64_t TuttePolynomial::coefficient(std::size_t i, std::size_t j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? 0 : it->second;
}

void TuttePolynomial::add(std::size_t i, std::size_t j, std::int64_t c) {
    if (c == 0) return;
    auto& slot = terms_[{i, j}];
    slot += c;
    if (slot == 0) terms_.erase({i, j});
}

void TuttePolynomial::add(const TuttePolynomial& other) {
    for (const auto& [ij, c] : other.terms_) add(ij.first, ij.second, c);
}

TuttePolynomial TuttePolynomial::shifted(std::size_t di, std::size_t dj) const {
    TuttePolynomial out;
    for (const auto& [ij, c] : terms_) out.terms_[{ij.first + di, ij.second + dj}] = c;
    return out;
}

std::int64_t TuttePolynomial::at_one_one() const {
    std::int64_t sum = 0;
    for (const auto& [ij, c] : terms_) sum += c;
    return sum;
}

IntPolynomial TuttePolynomial::at_y_one() const {
    IntPolynomial p;
    for (const auto& [ij, c] : terms_) p.add_term(ij.first, c);
    return p;
}

IntPolynomial TuttePolynomial::at_x_one() const {
    IntPolynomial p;
    for (const auto& [ij, c] : terms_) p.add_term(ij.second, c);
    return p;
}

nlohmann::json TuttePolynomial::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [ij, c] : terms_) coeffs.push_back({ij.first, ij.second, c});
    return {{"coeffs", std::move(coeffs)}};
}

std::string TuttePolynomial::to_string() const {
    if (terms_.empty()) return "0";
    // Highest total degree first, then higher powers of x.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::int64_t>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        const auto da = a.first.first + a.first.second;
        const auto db = b.first.first + b.first.second;
        return da != db ? da > db : a.first.first > b.first.first;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [ij, c] : sorted) {
        if (!first) out << " + ";
        first = false;
        const auto [i, j] = ij;
        if (c != 1 || (i == 0 && j == 0)) out << c;
        if (i) out << 'x' << (i > 1 ? "^" + std::to_string(i) : "");
        if (j) out << 'y' << (j > 1 ? "^" + std::to_string(j) : "");
    }
    return out.str();
}

namespace {

struct SmallGraph {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Colour refinement from degrees, then a relabelling by (colour, old
// index). The key spells out the whole relabelled edge list, so equal keys
// always mean isomorphic graphs; ties only cost cache hits.
std::string canonical_key(const SmallGraph& g) {
    std::vector<std::size_t> colour(g.n, 0);
    for (const auto& [a, b] : g.edges) {
        ++colour[a];
        ++colour[b];
    }
    for (std::size_t round = 0; round < g.n; ++round) {
        std::vector<std::vector<std::size_t>> signature(g.n);
        for (const auto& [a, b] : g.edges) {
            signature[a].push_back(colour[b]);
            signature[b].push_back(colour[a]);
        }
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> full(g.n);
        for (std::size_t v = 0; v < g.n; ++v) {
            std::sort(signature[v].begin(), signature[v].end());
            full[v] = {colour[v], std::move(signature[v])};
        }
        auto distinct = full;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<std::size_t> next(g.n);
        for (std::size_t v = 0; v < g.n; ++v) {
            next[v] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), full[v]) - distinct.begin());
        }
        const bool stable = next == colour;
        colour = std::move(next);
        if (stable) break;
    }
    std::vector<std::size_t> order(g.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return colour[a] < colour[b]; });
    std::vector<std::size_t> label(g.n);
    for (std::size_t k = 0; k < g.n; ++k) label[order[k]] = k;
    std::vector<std::pair<std::size_t, std::size_t>> relabelled;
    for (const auto& [a, b] : g.edges) relabelled.emplace_back(std::minmax(label[a], label[b]));
    std::sort(relabelled.begin(), relabelled.end());
    std::string key = std::to_string(g.n) + ':';
    for (const auto& [a, b] : relabelled) key += std::to_string(a) + '-' + std::to_string(b) + ',';
    return key;
}

bool connected_without(const SmallGraph& g, std::size_t skip) {
    detail::UnionFind uf(g.n);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i != skip) uf.unite(g.edges[i].first, g.edges[i].second);
    }
    return uf.components() == 1;
}

SmallGraph deleted(const SmallGraph& g, std::size_t i) {
    SmallGraph h = g;
    h.edges.erase(h.edges.begin() + static_cast<std::ptrdiff_t>(i));
    return h;
}

// Merges the endpoints of edge i into one vertex; parallel edges become loops.
SmallGraph contracted(const SmallGraph& g, std::size_t i) {
    auto [keep, gone] = std::minmax(g.edges[i].first, g.edges[i].second);
    auto relabel = [&](std::size_t v) {
        if (v == gone) v = keep;
        return v > gone ? v - 1 : v;
    };
    SmallGraph h;
    h.n = g.n - 1;
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
        if (j != i) h.edges.emplace_back(relabel(g.edges[j].first), relabel(g.edges[j].second));
    }
    return h;
}

class DeletionContraction {
public:
    TuttePolynomial solve(const SmallGraph& g) {
        if (g.edges.empty()) {
            TuttePolynomial one;
            one.add(0, 0, 1);
            return one;
        }
        // Loops only ever multiply by y.
        std::size_t loops = 0;
        SmallGraph rest;
        rest.n = g.n;
        for (const auto& e : g.edges) {
            if (e.first == e.second) ++loops;
            else rest.edges.push_back(e);
        }
        if (loops > 0) return solve(rest).shifted(0, loops);

        auto key = canonical_key(g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const std::size_t last = g.edges.size() - 1;
        TuttePolynomial result;
        if (!connected_without(g, last)) {
            result = solve(contracted(g, last)).shifted(1, 0);
        } else {
            result = solve(deleted(g, last));
            result.add(solve(contracted(g, last)));
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    std::unordered_map<std::string, TuttePolynomial> memo_;
};

void require_tutte_input(const Multigraph& g) {
    if (g.has_loop()) throw Error(ErrorCode::kLoop, "loop not representable in input graph");
    if (!g.is_connected()) throw Error(ErrorCode::kNotConnected, "graph not connected");
}

}  // namespace

TuttePolynomial tutte_deletion_contraction(const Multigraph& g) {
    require_tutte_input(g);
    SmallGraph small;
    small.n = g.vertex_count();
    for (const auto& e : g.edges()) small.edges.emplace_back(e.a, e.b);
    return DeletionContraction().solve(small);
}

TuttePolynomial tutte_by_activities(const Multigraph& g, const std::vector<std::size_t>& order) {
    require_tutte_input(g);
    const std::size_t m = g.edge_count();
    const std::size_t n = g.vertex_count();
    if (order.size() != m) throw Error(ErrorCode::kDomainMismatch, "domain mismatch: ordering size differs from edge count");
    std::vector<std::size_t> rank(m, m);
    for (std::size_t p = 0; p < m; ++p) {
        if (order[p] >= m || rank[order[p]] != m) {
            throw Error(ErrorCode::kDomainMismatch, "domain mismatch: ordering is not a permutation of the edges");
        }
        rank[order[p]] = p;
    }

    TuttePolynomial result;
    std::vector<bool> in_tree(m, false);

    // Tree path between u and v as edge indices, by DFS over tree edges.
    auto tree_path = [&](std::size_t u, std::size_t v) {
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
        for (std::size_t i = 0; i < m; ++i) {
            if (!in_tree[i]) continue;
            adj[g.edge(i).a].emplace_back(g.edge(i).b, i);
            adj[g.edge(i).b].emplace_back(g.edge(i).a, i);
        }
        std::vector<std::size_t> via(n, m);
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{u};
        seen[u] = true;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto [y, i] : adj[x]) {
                if (!seen[y]) {
                    seen[y] = true;
                    via[y] = i;
                    stack.push_back(y);
                }
            }
        }
        std::vector<std::size_t> path;
        for (std::size_t x = v; x != u;) {
            const std::size_t i = via[x];
            path.push_back(i);
            x = g.edge(i).a == x ? g.edge(i).b : g.edge(i).a;
        }
        return path;
    };

    auto score = [&] {
        // A tree edge stays internally active until some smaller non-tree
        // edge closes a cycle through it.
        std::vector<bool> internally_active(m, true);
        std::size_t external = 0;
        for (std::size_t f = 0; f < m; ++f) {
            if (in_tree[f]) continue;
            const auto cycle = tree_path(g.edge(f).a, g.edge(f).b);
            bool smallest = true;
            for (std::size_t e : cycle) {
                if (rank[e] < rank[f]) smallest = false;
                if (rank[f] < rank[e]) internally_active[e] = false;
            }
            if (smallest) ++external;
        }
        std::size_t internal = 0;
        for (std::size_t e = 0; e < m; ++e) {
            if (in_tree[e] && internally_active[e]) ++internal;
        }
        result.add(internal, external, 1);
    };

    auto grow = [&](auto&& self, std::size_t i, std::size_t taken, detail::UnionFind uf) -> void {
        if (taken + 1 == n) {
            score();
            return;
        }
        if (i == m || m - i < n - 1 - taken) return;
        if (uf.find(g.edge(i).a) != uf.find(g.edge(i).b)) {
            detail::UnionFind with = uf;
            with.unite(g.edge(i).a, g.edge(i).b);
            in_tree[i] = true;
            self(self, i + 1, taken + 1, with);
            in_tree[i] = false;
        }
        self(self, i + 1, taken, uf);
    };
    grow(grow, 0, 0, detail::UnionFind(n));
    return result;
}

TuttePolynomial tutte_by_activities(const Multigraph& g) {
    std::vector<std::size_t> order(g.edge_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    return tutte_by_activities(g, order);
}

Report crosscheck_specialization(const Multigraph& g, const EngineLimits& limits) {
    require_tutte_input(g);
    const TuttePolynomial recurrence = tutte_deletion_contraction(g);
    std::vector<std::size_t> order(g.edge_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const TuttePolynomial forward = tutte_by_activities(g, order);
    std::reverse(order.begin(), order.end());
    const TuttePolynomial backward = tutte_by_activities(g, order);

    const BipartiteGraph b(graph_to_hypergraph(g));
    const TransferTable table(b, limits);
    const auto doc_order = EdgeOrdering::document_order(b.hyperedge_count());
    const IntPolynomial interior = interior_polynomial(table, doc_order);
    const IntPolynomial exterior = exterior_polynomial(table, doc_order);
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    const IntPolynomial expected_interior = recurrence.at_y_one().reversed(n - 1);
    const IntPolynomial expected_exterior = recurrence.at_x_one().reversed(m - n + 1);

    Report report;
    auto witness = [&] {
        return nlohmann::json{
            {"kind", "tutte"},
            {"graph", to_json(g)},
            {"tutte_recurrence", recurrence.to_json()},
            {"tutte_activities", forward.to_json()},
            {"interior", interior.to_json()},
            {"exterior", exterior.to_json()},
            {"expected_interior", expected_interior.to_json()},
            {"expected_exterior", expected_exterior.to_json()},
        };
    };
    report.expect("tutte_dual_oracle", recurrence == forward && recurrence == backward, witness);
    report.expect("tree_count", recurrence.at_one_one() == static_cast<std::int64_t>(table.size()), witness);
    report.expect("interior_reversal", interior == expected_interior, witness);
    report.expect("exterior_reversal", exterior == expected_exterior, witness);

    auto& d = report.details();
    d["tutte"] = recurrence.to_json();
    d["interior"] = interior.to_json();
    d["exterior"] = exterior.to_json();
    d["interior_degree_shift"] = n - 1;
    d["exterior_degree_shift"] = m - n + 1;
    return report;
}

}  // namespace hyperpoly
