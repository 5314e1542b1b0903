#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hyperpoly/hypergraph.hpp"

namespace hyperpoly {

/// A candidate (or actual) hypertree: one nonnegative value per hyperedge,
/// indexed by hyperedge position in document order.
struct Hypertree {
    std::vector<int> values;

    int operator[](EdgeIndex e) const { return values[e]; }
    std::size_t size() const noexcept { return values.size(); }
    int total() const;

    friend auto operator<=>(const Hypertree&, const Hypertree&) = default;
};

struct HypertreeHash {
    std::size_t operator()(const Hypertree& f) const noexcept;
};

/// One edge (v, e) of Bip H.
struct Incidence {
    VertexIndex vertex;
    EdgeIndex hyperedge;

    friend auto operator<=>(const Incidence&, const Incidence&) = default;
};

/// A spanning tree of Bip H, as its incidence edges, sorted.
using SpanningTreeWitness = std::vector<Incidence>;

struct TransferMove {
    EdgeIndex from;
    EdgeIndex to;
};

/// f - chi_from + chi_to, without any validity check.
Hypertree apply_transfer(const Hypertree& f, TransferMove m);

struct EngineLimits {
    /// Largest |E| accepted by the subset-enumerating operations.
    std::size_t exhaustive_bound = 20;
    /// Cap on search steps (states plus emitted rows) while enumerating B_H.
    std::uint64_t tree_budget = 20'000'000;
};

/// Searches for a spanning tree of B in which every hyperedge node e has
/// degree f(e) + 1. Throws kDomainMismatch if f is not defined on exactly E.
std::optional<SpanningTreeWitness> find_realizing_tree(const BipartiteGraph& b, const Hypertree& f);

bool is_hypertree(const BipartiteGraph& b, const Hypertree& f);

/// Subset characterization: f >= 0, sum f = |V| - 1 and sum_S f <= mu(S) for
/// every nonempty S. Exhaustive over 2^|E| subsets.
bool is_hypertree_polymatroid(const BipartiteGraph& b, const Hypertree& f,
                              const EngineLimits& limits = {});
bool is_hypertree_polymatroid(const MuTable& mu_table, std::size_t vertex_count, const Hypertree& f);

/// f(e) = d_tau(e) - 1. Throws kPrecondition if tau is not a spanning tree
/// of B (wrong edge count, an edge missing from B, a cycle, or a repeat).
Hypertree hypertree_from_tree(const BipartiteGraph& b, const SpanningTreeWitness& tau);

/// B_H via contraction/deletion over the edges of Bip H, deduplicating
/// degree vectors. Sorted ascending (lexicographic in document order of E).
std::vector<Hypertree> enumerate_hypertrees(const BipartiteGraph& b, const EngineLimits& limits = {});

/// Memoized is_hypertree for repeated queries against one graph.
class HypertreeMemo {
public:
    explicit HypertreeMemo(const BipartiteGraph& b) : b_(b) {}

    bool operator()(const Hypertree& f);
    std::size_t size() const noexcept { return cache_.size(); }

private:
    const BipartiteGraph& b_;
    std::unordered_map<Hypertree, bool, HypertreeHash> cache_;
};

/// Breadth-first closure of {seed} under valid single transfers. Throws
/// kPrecondition if seed is not a hypertree.
std::vector<Hypertree> enumerate_hypertrees_by_transfer(const BipartiteGraph& b, const Hypertree& seed);
std::vector<Hypertree> enumerate_hypertrees_by_transfer(const BipartiteGraph& b, const Hypertree& seed,
                                                        HypertreeMemo& memo);

/// True iff f(from) >= 1 and f - chi_from + chi_to is a hypertree.
bool transfer_valid(const BipartiteGraph& b, const Hypertree& f, TransferMove m);

bool is_tight(const BipartiteGraph& b, const Hypertree& f, EdgeSubset s);

/// All subsets tight at f, in ascending mask order.
std::vector<EdgeSubset> tight_family(const BipartiteGraph& b, const Hypertree& f,
                                     const EngineLimits& limits = {});
std::vector<EdgeSubset> tight_family(const MuTable& mu_table, const Hypertree& f);

/// Transfer feasibility via tight sets: from -> to is possible iff
/// f(from) != 0 and no subset containing `to` but not `from` is tight.
bool transfer_valid_by_tightness(const BipartiteGraph& b, const Hypertree& f, TransferMove m,
                                 const EngineLimits& limits = {});
bool transfer_valid_by_tightness(std::span<const EdgeSubset> tight, const Hypertree& f, TransferMove m);

nlohmann::json to_json(const BipartiteGraph& b, const Hypertree& f);
Hypertree hypertree_from_json(const BipartiteGraph& b, const nlohmann::json& doc);
nlohmann::json to_json(const BipartiteGraph& b, const SpanningTreeWitness& tau);

}  // namespace hyperpoly
