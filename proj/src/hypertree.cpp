#include "hyperpoly/hypertree.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "hyperpoly/error.hpp"
#include "union_find.hpp"

namespace hyperpoly {

namespace {

void check_domain(const BipartiteGraph& b, const Hypertree& f) {
    if (f.size() != b.hyperedge_count()) {
        throw Error(ErrorCode::kDomainMismatch,
                    "domain mismatch: map has " + std::to_string(f.size()) + " values, hypergraph has " +
                        std::to_string(b.hyperedge_count()) + " hyperedges");
    }
}

void check_move(const BipartiteGraph& b, TransferMove m) {
    if (m.from == m.to) throw Error(ErrorCode::kPrecondition, "transfer move has identical endpoints");
    if (m.from >= b.hyperedge_count() || m.to >= b.hyperedge_count()) {
        throw Error(ErrorCode::kUnknownId, "unknown identifier: transfer endpoint outside E");
    }
}

void append_u16(std::string& key, std::size_t x) {
    key.push_back(static_cast<char>(x & 0xff));
    key.push_back(static_cast<char>((x >> 8) & 0xff));
}

// Relabels a partition by order of first appearance so equal partitions
// produce equal keys.
std::string partition_key(detail::UnionFind& uf, std::size_t nodes) {
    std::string key;
    key.reserve(2 * nodes + 8);
    std::vector<int> label(nodes, -1);
    int next = 0;
    for (std::size_t x = 0; x < nodes; ++x) {
        auto root = uf.find(x);
        if (label[root] < 0) label[root] = next++;
        append_u16(key, static_cast<std::size_t>(label[root]));
    }
    return key;
}

// Backtracking realization. Hyperedges are placed in document order; for
// each, the search picks f(e)+1 pairwise distinct current components among
// its members (the lowest-index member stands in for its component, since
// which member is used does not change the resulting partition).
class TreeRealizer {
public:
    TreeRealizer(const BipartiteGraph& b, const Hypertree& f) : b_(b), f_(f) {}

    std::optional<SpanningTreeWitness> run() {
        detail::UnionFind uf(b_.vertex_count());
        if (!place(0, uf)) return std::nullopt;
        SpanningTreeWitness tau = chosen_;
        std::sort(tau.begin(), tau.end());
        return tau;
    }

private:
    bool feasible_ahead(std::size_t next, detail::UnionFind& uf) {
        const std::size_t m = b_.hyperedge_count();
        // Every remaining hyperedge must still see enough distinct components.
        for (EdgeIndex e = next; e < m; ++e) {
            std::vector<std::size_t> roots;
            for (VertexIndex v : b_.vertices_of(e)) roots.push_back(uf.find(v));
            std::sort(roots.begin(), roots.end());
            auto distinct = static_cast<std::size_t>(std::unique(roots.begin(), roots.end()) - roots.begin());
            if (distinct < static_cast<std::size_t>(f_[e]) + 1) return false;
        }
        // The remaining hyperedges must be able to connect what is left.
        detail::UnionFind probe = uf;
        for (EdgeIndex e = next; e < m; ++e) {
            const auto& vs = b_.vertices_of(e);
            for (VertexIndex v : vs) probe.unite(vs.front(), v);
        }
        return probe.components() == 1;
    }

    bool place(EdgeIndex e, detail::UnionFind& uf) {
        if (e == b_.hyperedge_count()) return uf.components() == 1;
        if (!feasible_ahead(e, uf)) return false;
        auto key = partition_key(uf, b_.vertex_count());
        append_u16(key, e);
        if (failed_.count(key)) return false;

        // One representative per component among e's members, in member order.
        std::vector<VertexIndex> reps;
        std::vector<std::size_t> seen_roots;
        for (VertexIndex v : b_.vertices_of(e)) {
            auto root = uf.find(v);
            if (std::find(seen_roots.begin(), seen_roots.end(), root) == seen_roots.end()) {
                seen_roots.push_back(root);
                reps.push_back(v);
            }
        }
        const std::size_t pick = static_cast<std::size_t>(f_[e]) + 1;
        std::vector<std::size_t> idx(pick);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        while (true) {
            detail::UnionFind next = uf;
            for (std::size_t k = 1; k < pick; ++k) next.unite(reps[idx[0]], reps[idx[k]]);
            const std::size_t mark = chosen_.size();
            for (std::size_t k = 0; k < pick; ++k) chosen_.push_back({reps[idx[k]], e});
            if (place(e + 1, next)) return true;
            chosen_.resize(mark);

            // Next combination in lexicographic order.
            std::size_t k = pick;
            while (k > 0 && idx[k - 1] == reps.size() - pick + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < pick; ++j) idx[j] = idx[j - 1] + 1;
        }
        failed_.insert(std::move(key));
        return false;
    }

    const BipartiteGraph& b_;
    const Hypertree& f_;
    SpanningTreeWitness chosen_;
    std::unordered_set<std::string> failed_;
};

// Contraction/deletion over the incidence edges of Bip H, one hyperedge at a
// time. At hyperedge e the incidences kept (contracted) join e to a set C of
// current vertex components and the rest are deleted, so only C matters:
// d(e) = |C| and the next partition is P with C merged. The suffix values
// reachable from (e, P) depend on nothing else, so they are computed once
// per state and shared.
class SpanningTreeEnumerator {
public:
    SpanningTreeEnumerator(const BipartiteGraph& b, std::uint64_t budget)
        : b_(b), budget_(budget), last_use_(b.vertex_count(), 0) {
        for (EdgeIndex e = 0; e < b.hyperedge_count(); ++e) {
            for (VertexIndex v : b.vertices_of(e)) last_use_[v] = std::max(last_use_[v], e);
        }
    }

    std::vector<Hypertree> run() {
        detail::UnionFind uf(b_.vertex_count());
        const auto& suffixes = solve(0, uf);
        std::vector<Hypertree> out;
        out.reserve(suffixes.size());
        for (const auto& s : suffixes) out.push_back({s});
        return out;
    }

private:
    using Suffixes = std::vector<std::vector<int>>;

    void tick() {
        if (++visited_ > budget_) {
            throw Error(ErrorCode::kBudgetExceeded,
                        "budget exceeded: spanning-tree search passed " + std::to_string(budget_) + " steps");
        }
    }

    bool can_still_connect(EdgeIndex next, detail::UnionFind uf) const {
        for (EdgeIndex e = next; e < b_.hyperedge_count(); ++e) {
            const auto& vs = b_.vertices_of(e);
            for (VertexIndex v : vs) uf.unite(vs.front(), v);
        }
        return uf.components() == 1;
    }

    // Sorted, duplicate-free suffix vectors (f(e), ..., f(m-1)).
    const Suffixes& solve(EdgeIndex e, detail::UnionFind& uf) {
        tick();
        const std::size_t m = b_.hyperedge_count();
        if (!can_still_connect(e, uf)) return empty_;
        auto key = live_key(e, uf);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        Suffixes out;
        if (e == m) {
            out.emplace_back();
        } else {
            std::vector<std::size_t> roots;
            for (VertexIndex v : b_.vertices_of(e)) roots.push_back(uf.find(v));
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            const std::uint64_t subsets = std::uint64_t{1} << roots.size();
            for (std::uint64_t pick = 1; pick < subsets; ++pick) {
                tick();
                detail::UnionFind next = uf;
                std::size_t first = roots.size();
                for (std::size_t k = 0; k < roots.size(); ++k) {
                    if (!((pick >> k) & 1U)) continue;
                    if (first == roots.size()) first = k;
                    else next.unite(roots[first], roots[k]);
                }
                const int value = std::popcount(pick) - 1;
                for (const auto& rest : solve(e + 1, next)) {
                    tick();
                    std::vector<int> row;
                    row.reserve(m - e);
                    row.push_back(value);
                    row.insert(row.end(), rest.begin(), rest.end());
                    out.push_back(std::move(row));
                }
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
        return memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    // Once every component still holds a vertex used at or after e, vertices
    // not used again cannot change the suffix, so the key keeps only the
    // partition of the live ones.
    std::string live_key(EdgeIndex e, detail::UnionFind& uf) const {
        std::string key;
        std::vector<int> label(b_.vertex_count(), -1);
        int next = 0;
        for (VertexIndex v = 0; v < b_.vertex_count(); ++v) {
            if (e == b_.hyperedge_count() || last_use_[v] < e) continue;
            auto root = uf.find(v);
            if (label[root] < 0) label[root] = next++;
            append_u16(key, v);
            append_u16(key, static_cast<std::size_t>(label[root]));
        }
        append_u16(key, e);
        return key;
    }

    const BipartiteGraph& b_;
    std::uint64_t budget_;
    std::vector<EdgeIndex> last_use_;
    std::uint64_t visited_ = 0;
    const Suffixes empty_;
    std::unordered_map<std::string, Suffixes> memo_;
};

}  // namespace

int Hypertree::total() const { return std::accumulate(values.begin(), values.end(), 0); }

std::size_t HypertreeHash::operator()(const Hypertree& f) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : f.values) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Hypertree apply_transfer(const Hypertree& f, TransferMove m) {
    Hypertree g = f;
    --g.values[m.from];
    ++g.values[m.to];
    return g;
}

std::optional<SpanningTreeWitness> find_realizing_tree(const BipartiteGraph& b, const Hypertree& f) {
    check_domain(b, f);
    if (b.vertex_count() == 0) return std::nullopt;
    for (EdgeIndex e = 0; e < b.hyperedge_count(); ++e) {
        if (f[e] < 0 || static_cast<std::size_t>(f[e]) + 1 > b.degree(e)) return std::nullopt;
    }
    if (f.total() != static_cast<int>(b.vertex_count()) - 1) return std::nullopt;
    return TreeRealizer(b, f).run();
}

bool is_hypertree(const BipartiteGraph& b, const Hypertree& f) {
    return find_realizing_tree(b, f).has_value();
}

bool is_hypertree_polymatroid(const MuTable& mu_table, std::size_t vertex_count, const Hypertree& f) {
    const std::size_t m = mu_table.edge_count();
    if (f.size() != m) throw Error(ErrorCode::kDomainMismatch, "domain mismatch: map size differs from |E|");
    if (std::any_of(f.values.begin(), f.values.end(), [](int x) { return x < 0; })) return false;
    if (f.total() != static_cast<int>(vertex_count) - 1) return false;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t bits = 1; bits < count; ++bits) {
        int sum = 0;
        for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) sum += f[std::countr_zero(rest)];
        if (sum > mu_table(EdgeSubset(bits))) return false;
    }
    return true;
}

bool is_hypertree_polymatroid(const BipartiteGraph& b, const Hypertree& f, const EngineLimits& limits) {
    check_domain(b, f);
    return is_hypertree_polymatroid(MuTable(b, limits.exhaustive_bound), b.vertex_count(), f);
}

Hypertree hypertree_from_tree(const BipartiteGraph& b, const SpanningTreeWitness& tau) {
    const std::size_t n = b.vertex_count();
    const std::size_t m = b.hyperedge_count();
    if (tau.size() + 1 != n + m) {
        throw Error(ErrorCode::kPrecondition, "not a spanning tree: wrong number of edges");
    }
    detail::UnionFind uf(n + m);
    Hypertree f{std::vector<int>(m, -1)};
    for (const auto& [v, e] : tau) {
        if (e >= m || v >= n) throw Error(ErrorCode::kPrecondition, "not a spanning tree: node outside Bip H");
        const auto& members = b.vertices_of(e);
        if (!std::binary_search(members.begin(), members.end(), v)) {
            throw Error(ErrorCode::kPrecondition, "not a spanning tree: edge not in Bip H");
        }
        if (!uf.unite(v, n + e)) throw Error(ErrorCode::kPrecondition, "not a spanning tree: contains a cycle");
        ++f.values[e];
    }
    return f;
}

std::vector<Hypertree> enumerate_hypertrees(const BipartiteGraph& b, const EngineLimits& limits) {
    if (!is_connected(b)) throw Error(ErrorCode::kNotConnected, "hypergraph not connected");
    return SpanningTreeEnumerator(b, limits.tree_budget).run();
}

bool HypertreeMemo::operator()(const Hypertree& f) {
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
    const bool ok = is_hypertree(b_, f);
    cache_.emplace(f, ok);
    return ok;
}

std::vector<Hypertree> enumerate_hypertrees_by_transfer(const BipartiteGraph& b, const Hypertree& seed,
                                                        HypertreeMemo& memo) {
    check_domain(b, seed);
    if (!memo(seed)) throw Error(ErrorCode::kPrecondition, "invalid seed: not a hypertree");
    const std::size_t m = b.hyperedge_count();
    std::set<Hypertree> reached{seed};
    std::deque<Hypertree> queue{seed};
    while (!queue.empty()) {
        Hypertree f = std::move(queue.front());
        queue.pop_front();
        for (EdgeIndex from = 0; from < m; ++from) {
            if (f[from] == 0) continue;
            for (EdgeIndex to = 0; to < m; ++to) {
                if (to == from) continue;
                Hypertree g = apply_transfer(f, {from, to});
                if (reached.count(g) == 0 && memo(g)) {
                    reached.insert(g);
                    queue.push_back(std::move(g));
                }
            }
        }
    }
    return {reached.begin(), reached.end()};
}

std::vector<Hypertree> enumerate_hypertrees_by_transfer(const BipartiteGraph& b, const Hypertree& seed) {
    HypertreeMemo memo(b);
    return enumerate_hypertrees_by_transfer(b, seed, memo);
}

bool transfer_valid(const BipartiteGraph& b, const Hypertree& f, TransferMove m) {
    check_domain(b, f);
    check_move(b, m);
    if (f[m.from] < 1) return false;
    return is_hypertree(b, apply_transfer(f, m));
}

bool is_tight(const BipartiteGraph& b, const Hypertree& f, EdgeSubset s) {
    check_domain(b, f);
    int sum = 0;
    for (EdgeIndex e : s.indices()) {
        if (e >= b.hyperedge_count()) throw Error(ErrorCode::kUnknownId, "unknown identifier: subset outside E");
        sum += f[e];
    }
    return sum == mu(b, s);
}

std::vector<EdgeSubset> tight_family(const MuTable& mu_table, const Hypertree& f) {
    const std::size_t m = mu_table.edge_count();
    if (f.size() != m) throw Error(ErrorCode::kDomainMismatch, "domain mismatch: map size differs from |E|");
    std::vector<EdgeSubset> out;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        int sum = 0;
        for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) sum += f[std::countr_zero(rest)];
        if (sum == mu_table(EdgeSubset(bits))) out.emplace_back(bits);
    }
    return out;
}

std::vector<EdgeSubset> tight_family(const BipartiteGraph& b, const Hypertree& f, const EngineLimits& limits) {
    check_domain(b, f);
    return tight_family(MuTable(b, limits.exhaustive_bound), f);
}

bool transfer_valid_by_tightness(std::span<const EdgeSubset> tight, const Hypertree& f, TransferMove m) {
    if (m.from == m.to) throw Error(ErrorCode::kPrecondition, "transfer move has identical endpoints");
    if (f[m.from] == 0) return false;
    return std::none_of(tight.begin(), tight.end(),
                        [&](EdgeSubset s) { return s.contains(m.to) && !s.contains(m.from); });
}

bool transfer_valid_by_tightness(const BipartiteGraph& b, const Hypertree& f, TransferMove m,
                                 const EngineLimits& limits) {
    check_domain(b, f);
    check_move(b, m);
    const auto tight = tight_family(b, f, limits);
    return transfer_valid_by_tightness(tight, f, m);
}

nlohmann::json to_json(const BipartiteGraph& b, const Hypertree& f) {
    nlohmann::json doc = nlohmann::json::object();
    for (EdgeIndex e = 0; e < f.size(); ++e) doc[b.source().hyperedge_id(e)] = f[e];
    return doc;
}

Hypertree hypertree_from_json(const BipartiteGraph& b, const nlohmann::json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::kMalformed, "malformed document: hypertree must be an object");
    Hypertree f{std::vector<int>(b.hyperedge_count(), 0)};
    std::vector<bool> given(b.hyperedge_count(), false);
    for (const auto& [id, value] : doc.items()) {
        if (!value.is_number_integer()) {
            throw Error(ErrorCode::kMalformed, "malformed document: value for '" + id + "' is not an integer");
        }
        const EdgeIndex e = b.edge_index(id);
        f.values[e] = value.get<int>();
        given[e] = true;
    }
    if (std::find(given.begin(), given.end(), false) != given.end()) {
        throw Error(ErrorCode::kDomainMismatch, "domain mismatch: hypertree does not cover every hyperedge");
    }
    return f;
}

nlohmann::json to_json(const BipartiteGraph& b, const SpanningTreeWitness& tau) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [v, e] : tau) pairs.emplace_back(b.source().vertex_id(v), b.source().hyperedge_id(e));
    std::sort(pairs.begin(), pairs.end());
    nlohmann::json doc = nlohmann::json::array();
    for (auto& [v, e] : pairs) doc.push_back({v, e});
    return doc;
}

}  // namespace hyperpoly
