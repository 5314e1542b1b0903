#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hyperpoly/hypergraph.hpp"
#include "hyperpoly/hypertree.hpp"
#include "hyperpoly/random.hpp"
#include "hyperpoly/report.hpp"

namespace hyperpoly {

/// A total order on E. Position 0 is the smallest hyperedge.
class EdgeOrdering {
public:
    /// Throws kDomainMismatch unless `sequence` is a permutation of 0..m-1.
    explicit EdgeOrdering(std::vector<EdgeIndex> sequence);

    static EdgeOrdering document_order(std::size_t edge_count);
    /// Comma-separated hyperedge ids; an empty string means document order.
    static EdgeOrdering parse(const BipartiteGraph& b, std::string_view list);
    static EdgeOrdering from_json(const BipartiteGraph& b, const nlohmann::json& ids);
    static EdgeOrdering random(std::size_t edge_count, Rng& rng);

    std::size_t size() const noexcept { return sequence_.size(); }
    EdgeIndex at(std::size_t position) const { return sequence_.at(position); }
    std::size_t position_of(EdgeIndex e) const { return position_.at(e); }
    const std::vector<EdgeIndex>& sequence() const noexcept { return sequence_; }

    /// Hyperedges strictly smaller than e.
    std::uint64_t smaller_than(EdgeIndex e) const { return smaller_.at(e); }

    /// The order with positions p and p+1 exchanged.
    EdgeOrdering with_adjacent_swap(std::size_t p) const;

    nlohmann::json to_json(const BipartiteGraph& b) const;
    std::string to_string(const BipartiteGraph& b) const;

    friend bool operator==(const EdgeOrdering& a, const EdgeOrdering& b) { return a.sequence_ == b.sequence_; }

private:
    std::vector<EdgeIndex> sequence_;
    std::vector<std::size_t> position_;
    std::vector<std::uint64_t> smaller_;
};

struct ActivityProfile {
    std::vector<bool> internally_active;
    std::vector<bool> externally_active;

    std::size_t internal_activity() const;
    std::size_t internal_inactivity() const { return internally_active.size() - internal_activity(); }
    std::size_t external_activity() const;
    std::size_t external_inactivity() const { return externally_active.size() - external_activity(); }
};

/// Every valid transfer for every hypertree of one hypergraph. Built from
/// the complete set B_H, so "f - chi_a + chi_b is a hypertree" is a set
/// lookup. Rows are bit masks over E, which caps |E| at 64.
class TransferTable {
public:
    explicit TransferTable(const BipartiteGraph& b, const EngineLimits& limits = {});
    TransferTable(const BipartiteGraph& b, std::vector<Hypertree> hypertrees);

    const BipartiteGraph& graph() const noexcept { return graph_; }
    std::size_t edge_count() const noexcept { return graph_.hyperedge_count(); }
    std::size_t size() const noexcept { return hypertrees_.size(); }
    const std::vector<Hypertree>& hypertrees() const noexcept { return hypertrees_; }
    const Hypertree& hypertree(std::size_t t) const { return hypertrees_.at(t); }
    std::optional<std::size_t> find(const Hypertree& f) const;

    bool can_transfer(std::size_t t, TransferMove m) const { return (receivers_[t * edge_count() + m.from] >> m.to) & 1U; }
    /// Hyperedges that can receive valence from `from` at hypertree t.
    std::uint64_t receivers(std::size_t t, EdgeIndex from) const { return receivers_[t * edge_count() + from]; }
    /// Hyperedges that can send valence to `to` at hypertree t.
    std::uint64_t senders(std::size_t t, EdgeIndex to) const { return senders_[t * edge_count() + to]; }

private:
    void build();

    BipartiteGraph graph_;
    std::vector<Hypertree> hypertrees_;
    std::unordered_map<Hypertree, std::size_t, HypertreeHash> index_;
    std::vector<std::uint64_t> receivers_;
    std::vector<std::uint64_t> senders_;
};

/// e is internally active iff no smaller e' can receive valence from e;
/// externally active iff no smaller e' can send valence to e.
ActivityProfile activity_profile(const BipartiteGraph& b, const Hypertree& f, const EdgeOrdering& order);
ActivityProfile activity_profile(const TransferTable& table, std::size_t t, const EdgeOrdering& order);

/// Integer coefficients, ascending degree, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<std::int64_t> coefficients);

    const std::vector<std::int64_t>& coefficients() const noexcept { return coefficients_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
    std::int64_t coefficient(std::size_t k) const { return k < coefficients_.size() ? coefficients_[k] : 0; }
    std::int64_t evaluate(std::int64_t x) const;

    void add_term(std::size_t degree, std::int64_t c);
    /// x^degree * p(1/x); requires degree >= this->degree().
    IntPolynomial reversed(std::size_t degree) const;

    nlohmann::json to_json() const;
    static IntPolynomial from_json(const nlohmann::json& doc);
    std::string to_string(char variable) const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
    friend auto operator<=>(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coefficients_ <=> b.coefficients_;
    }

private:
    void trim();
    std::vector<std::int64_t> coefficients_;
};

/// I(x) = sum over hypertrees of x^(internal inactivity).
IntPolynomial interior_polynomial(const BipartiteGraph& b, const EdgeOrdering& order, const EngineLimits& limits = {});
IntPolynomial interior_polynomial(const TransferTable& table, const EdgeOrdering& order);
/// X(y) = sum over hypertrees of y^(external inactivity).
IntPolynomial exterior_polynomial(const BipartiteGraph& b, const EdgeOrdering& order, const EngineLimits& limits = {});
IntPolynomial exterior_polynomial(const TransferTable& table, const EdgeOrdering& order);

enum class OrderingMode { kAll, kRandom };

struct OrderIndependenceOptions {
    OrderingMode mode = OrderingMode::kAll;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    /// all-orderings mode refuses hypergraphs with more hyperedges than this.
    std::size_t max_all_edges = 8;
    unsigned jobs = 1;
};

/// Computes I and X under many orderings and reports the distinct values.
/// A failure carries both orderings and both polynomials.
Report verify_order_independence(const BipartiteGraph& b, const OrderIndependenceOptions& options,
                                 const EngineLimits& limits = {});
Report verify_order_independence(const TransferTable& table, const OrderIndependenceOptions& options);

/// Hypertrees agreeing off {e_h, e_h1}, ascending by value at e_h.
struct Fiber {
    std::vector<Hypertree> members;
};

/// Partition of B_H into fibers. Throws kPrecondition for e_h == e_h1 and
/// kInvariantViolation if some fiber's values at e_h are not consecutive.
std::vector<Fiber> fiber_decomposition(const BipartiteGraph& b, EdgeIndex e_h, EdgeIndex e_h1,
                                       const EngineLimits& limits = {});
/// Same partition, as indices into the table; no invariant check.
std::vector<std::vector<std::size_t>> fiber_indices(const TransferTable& table, EdgeIndex e_h, EdgeIndex e_h1);

/// Checks, step by step, why swapping the hyperedges at 1-based ranks h and
/// h+1 leaves I and X unchanged: activity of the other hyperedges is
/// stable, per-member implications between the two orders hold (vacuous
/// passes counted separately), fiber members behave as their position
/// predicts, the fiber endpoints trade counts, and each fiber conserves
/// the multiset of counts.
Report verify_transposition_proof(const BipartiteGraph& b, const EdgeOrdering& order, std::size_t h,
                                  const EngineLimits& limits = {});
Report verify_transposition_proof(const TransferTable& table, const EdgeOrdering& order, std::size_t h);

}  // namespace hyperpoly
