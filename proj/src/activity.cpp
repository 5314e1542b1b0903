#include "hyperpoly/activity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "hyperpoly/error.hpp"

namespace hyperpoly {

namespace {

void require_masked(std::size_t edge_count) {
    if (edge_count > kMaxMaskedEdges) {
        throw Error(ErrorCode::kPrecondition, "activities support at most 64 hyperedges");
    }
}

bool in_mask(std::uint64_t mask, EdgeIndex e) { return (mask >> e) & 1U; }

void require_full(const BipartiteGraph& b, const std::vector<EdgeIndex>& seq) {
    if (seq.size() != b.hyperedge_count()) {
        throw Error(ErrorCode::kDomainMismatch, "domain mismatch: ordering lists " + std::to_string(seq.size()) +
                                                    " hyperedges, expected " + std::to_string(b.hyperedge_count()));
    }
}

}  // namespace

// --- EdgeOrdering -----------------------------------------------------------

EdgeOrdering::EdgeOrdering(std::vector<EdgeIndex> sequence) : sequence_(std::move(sequence)) {
    const std::size_t m = sequence_.size();
    require_masked(m);
    position_.assign(m, m);
    for (std::size_t p = 0; p < m; ++p) {
        const EdgeIndex e = sequence_[p];
        if (e >= m || position_[e] != m) {
            throw Error(ErrorCode::kDomainMismatch, "domain mismatch: ordering is not a permutation of E");
        }
        position_[e] = p;
    }
    smaller_.assign(m, 0);
    std::uint64_t seen = 0;
    for (EdgeIndex e : sequence_) {
        smaller_[e] = seen;
        seen |= std::uint64_t{1} << e;
    }
}

EdgeOrdering EdgeOrdering::document_order(std::size_t edge_count) {
    std::vector<EdgeIndex> seq(edge_count);
    std::iota(seq.begin(), seq.end(), EdgeIndex{0});
    return EdgeOrdering(std::move(seq));
}

EdgeOrdering EdgeOrdering::parse(const BipartiteGraph& b, std::string_view list) {
    if (list.empty()) return document_order(b.hyperedge_count());
    std::vector<EdgeIndex> seq;
    std::size_t start = 0;
    while (start <= list.size()) {
        auto comma = list.find(',', start);
        if (comma == std::string_view::npos) comma = list.size();
        seq.push_back(b.edge_index(list.substr(start, comma - start)));
        start = comma + 1;
    }
    require_full(b, seq);
    return EdgeOrdering(std::move(seq));
}

EdgeOrdering EdgeOrdering::from_json(const BipartiteGraph& b, const nlohmann::json& ids) {
    if (!ids.is_array()) throw Error(ErrorCode::kMalformed, "malformed document: ordering must be an array");
    std::vector<EdgeIndex> seq;
    for (const auto& id : ids) {
        if (!id.is_string()) throw Error(ErrorCode::kMalformed, "malformed document: ordering holds strings");
        seq.push_back(b.edge_index(id.get<std::string>()));
    }
    require_full(b, seq);
    return EdgeOrdering(std::move(seq));
}

EdgeOrdering EdgeOrdering::random(std::size_t edge_count, Rng& rng) {
    std::vector<EdgeIndex> seq(edge_count);
    std::iota(seq.begin(), seq.end(), EdgeIndex{0});
    rng.shuffle(seq);
    return EdgeOrdering(std::move(seq));
}

EdgeOrdering EdgeOrdering::with_adjacent_swap(std::size_t p) const {
    if (p + 1 >= sequence_.size()) throw Error(ErrorCode::kPrecondition, "rank out of range");
    auto seq = sequence_;
    std::swap(seq[p], seq[p + 1]);
    return EdgeOrdering(std::move(seq));
}

nlohmann::json EdgeOrdering::to_json(const BipartiteGraph& b) const {
    nlohmann::json ids = nlohmann::json::array();
    for (EdgeIndex e : sequence_) ids.push_back(b.source().hyperedge_id(e));
    return ids;
}

std::string EdgeOrdering::to_string(const BipartiteGraph& b) const {
    std::string out;
    for (std::size_t p = 0; p < sequence_.size(); ++p) {
        if (p) out += ',';
        out += b.source().hyperedge_id(sequence_[p]);
    }
    return out;
}

// --- ActivityProfile ----------------------------------------------------------

std::size_t ActivityProfile::internal_activity() const {
    return static_cast<std::size_t>(std::count(internally_active.begin(), internally_active.end(), true));
}

std::size_t ActivityProfile::external_activity() const {
    return static_cast<std::size_t>(std::count(externally_active.begin(), externally_active.end(), true));
}

// --- TransferTable ------------------------------------------------------------

TransferTable::TransferTable(const BipartiteGraph& b, const EngineLimits& limits)
    : TransferTable(b, enumerate_hypertrees(b, limits)) {}

TransferTable::TransferTable(const BipartiteGraph& b, std::vector<Hypertree> hypertrees)
    : graph_(b), hypertrees_(std::move(hypertrees)) {
    require_masked(b.hyperedge_count());
    build();
}

void TransferTable::build() {
    const std::size_t m = edge_count();
    index_.reserve(hypertrees_.size());
    for (std::size_t t = 0; t < hypertrees_.size(); ++t) {
        if (hypertrees_[t].size() != m) {
            throw Error(ErrorCode::kDomainMismatch, "domain mismatch: hypertree size differs from |E|");
        }
        index_.emplace(hypertrees_[t], t);
    }
    receivers_.assign(hypertrees_.size() * m, 0);
    senders_.assign(hypertrees_.size() * m, 0);
    for (std::size_t t = 0; t < hypertrees_.size(); ++t) {
        const Hypertree& f = hypertrees_[t];
        Hypertree g = f;
        for (EdgeIndex from = 0; from < m; ++from) {
            if (f[from] == 0) continue;
            --g.values[from];
            for (EdgeIndex to = 0; to < m; ++to) {
                if (to == from) continue;
                ++g.values[to];
                if (index_.count(g)) {
                    receivers_[t * m + from] |= std::uint64_t{1} << to;
                    senders_[t * m + to] |= std::uint64_t{1} << from;
                }
                --g.values[to];
            }
            ++g.values[from];
        }
    }
}

std::optional<std::size_t> TransferTable::find(const Hypertree& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

// --- Activities -----------------------------------------------------------------

ActivityProfile activity_profile(const TransferTable& table, std::size_t t, const EdgeOrdering& order) {
    const std::size_t m = table.edge_count();
    if (order.size() != m) throw Error(ErrorCode::kDomainMismatch, "domain mismatch: ordering size differs from |E|");
    ActivityProfile p{std::vector<bool>(m), std::vector<bool>(m)};
    for (EdgeIndex e = 0; e < m; ++e) {
        const std::uint64_t smaller = order.smaller_than(e);
        p.internally_active[e] = (table.receivers(t, e) & smaller) == 0;
        p.externally_active[e] = (table.senders(t, e) & smaller) == 0;
    }
    return p;
}

ActivityProfile activity_profile(const BipartiteGraph& b, const Hypertree& f, const EdgeOrdering& order) {
    const std::size_t m = b.hyperedge_count();
    if (order.size() != m) throw Error(ErrorCode::kDomainMismatch, "domain mismatch: ordering size differs from |E|");
    if (f.size() != m) throw Error(ErrorCode::kDomainMismatch, "domain mismatch: map size differs from |E|");
    // Each (from, to) pair is queried at most once here; the cache matters
    // because both flags of a pair of hyperedges test the same moves.
    std::map<std::pair<EdgeIndex, EdgeIndex>, bool> cache;
    auto valid = [&](EdgeIndex from, EdgeIndex to) {
        auto [it, fresh] = cache.try_emplace({from, to}, false);
        if (fresh) it->second = transfer_valid(b, f, {from, to});
        return it->second;
    };
    ActivityProfile p{std::vector<bool>(m, true), std::vector<bool>(m, true)};
    for (EdgeIndex e = 0; e < m; ++e) {
        for (std::size_t q = 0; q < order.position_of(e); ++q) {
            const EdgeIndex smaller = order.at(q);
            if (valid(e, smaller)) p.internally_active[e] = false;
            if (valid(smaller, e)) p.externally_active[e] = false;
        }
    }
    return p;
}

// --- IntPolynomial ----------------------------------------------------------------

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coefficients) : coefficients_(std::move(coefficients)) {
    trim();
}

void IntPolynomial::trim() {
    while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

std::int64_t IntPolynomial::evaluate(std::int64_t x) const {
    std::int64_t acc = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void IntPolynomial::add_term(std::size_t degree, std::int64_t c) {
    if (coefficients_.size() <= degree) coefficients_.resize(degree + 1, 0);
    coefficients_[degree] += c;
    trim();
}

IntPolynomial IntPolynomial::reversed(std::size_t degree) const {
    if (this->degree() > static_cast<int>(degree)) {
        throw Error(ErrorCode::kPrecondition, "reversal degree below polynomial degree");
    }
    std::vector<std::int64_t> out(degree + 1, 0);
    for (std::size_t k = 0; k < coefficients_.size(); ++k) out[degree - k] = coefficients_[k];
    return IntPolynomial(std::move(out));
}

nlohmann::json IntPolynomial::to_json() const { return {{"coefficients", coefficients_}}; }

IntPolynomial IntPolynomial::from_json(const nlohmann::json& doc) {
    auto it = doc.find("coefficients");
    if (!doc.is_object() || it == doc.end() || !it->is_array()) {
        throw Error(ErrorCode::kMalformed, "malformed document: polynomial needs 'coefficients'");
    }
    std::vector<std::int64_t> c;
    for (const auto& x : *it) {
        if (!x.is_number_integer()) throw Error(ErrorCode::kMalformed, "malformed document: non-integer coefficient");
        c.push_back(x.get<std::int64_t>());
    }
    return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string(char variable) const {
    if (coefficients_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        const std::int64_t c = coefficients_[k];
        if (c == 0) continue;
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << '-';
        const std::int64_t a = c < 0 ? -c : c;
        if (k == 0 || a != 1) out << a;
        if (k >= 1) out << variable;
        if (k >= 2) out << '^' << k;
        first = false;
    }
    return out.str();
}

// --- Polynomials --------------------------------------------------------------------

IntPolynomial interior_polynomial(const TransferTable& table, const EdgeOrdering& order) {
    IntPolynomial p;
    for (std::size_t t = 0; t < table.size(); ++t) {
        p.add_term(activity_profile(table, t, order).internal_inactivity(), 1);
    }
    return p;
}

IntPolynomial exterior_polynomial(const TransferTable& table, const EdgeOrdering& order) {
    IntPolynomial p;
    for (std::size_t t = 0; t < table.size(); ++t) {
        p.add_term(activity_profile(table, t, order).external_inactivity(), 1);
    }
    return p;
}

IntPolynomial interior_polynomial(const BipartiteGraph& b, const EdgeOrdering& order, const EngineLimits& limits) {
    return interior_polynomial(TransferTable(b, limits), order);
}

IntPolynomial exterior_polynomial(const BipartiteGraph& b, const EdgeOrdering& order, const EngineLimits& limits) {
    return exterior_polynomial(TransferTable(b, limits), order);
}

// --- Order independence ----------------------------------------------------------------

namespace {

std::uint64_t factorial_capped(std::size_t n, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t k = 2; k <= n; ++k) {
        r *= k;
        if (r > cap) return cap + 1;
    }
    return r;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads. Each index is
// handled by exactly one thread; callers write into per-index slots.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
    const unsigned workers = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

Report verify_order_independence(const TransferTable& table, const OrderIndependenceOptions& options) {
    const BipartiteGraph& b = table.graph();
    const std::size_t m = b.hyperedge_count();
    std::vector<EdgeOrdering> orders;
    if (options.mode == OrderingMode::kAll) {
        if (m > options.max_all_edges) {
            throw Error(ErrorCode::kBudgetExceeded,
                        "budget exceeded: all-orderings mode allows at most " +
                            std::to_string(options.max_all_edges) + " hyperedges, got " + std::to_string(m));
        }
        std::vector<EdgeIndex> seq(m);
        std::iota(seq.begin(), seq.end(), EdgeIndex{0});
        orders.reserve(static_cast<std::size_t>(factorial_capped(m, 1'000'000'000)));
        do {
            orders.emplace_back(seq);
        } while (std::next_permutation(seq.begin(), seq.end()));
    } else {
        Rng rng(options.seed);
        orders.reserve(options.samples);
        for (std::size_t k = 0; k < options.samples; ++k) orders.push_back(EdgeOrdering::random(m, rng));
    }

    std::vector<IntPolynomial> interior(orders.size());
    std::vector<IntPolynomial> exterior(orders.size());
    parallel_for(orders.size(), options.jobs, [&](std::size_t i) {
        interior[i] = interior_polynomial(table, orders[i]);
        exterior[i] = exterior_polynomial(table, orders[i]);
    });

    Report report;
    if (options.mode == OrderingMode::kRandom) report.set_seed(options.seed);
    std::map<IntPolynomial, std::size_t> distinct_i;
    std::map<IntPolynomial, std::size_t> distinct_x;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        distinct_i.try_emplace(interior[i], i);
        distinct_x.try_emplace(exterior[i], i);
        auto witness = [&](const char* which, const std::vector<IntPolynomial>& polys) {
            return nlohmann::json{
                {"kind", "order-independence"},
                {"polynomial", which},
                {"hypergraph", to_json(b.source())},
                {"orders", {orders[0].to_json(b), orders[i].to_json(b)}},
                {"values", {polys[0].to_json(), polys[i].to_json()}},
            };
        };
        report.expect("single_interior", interior[i] == interior[0], [&] { return witness("interior", interior); });
        report.expect("single_exterior", exterior[i] == exterior[0], [&] { return witness("exterior", exterior); });
    }

    auto& d = report.details();
    d["mode"] = options.mode == OrderingMode::kAll ? "all" : "random";
    d["orderings"] = orders.size();
    d["hypertrees"] = table.size();
    d["distinct_interior"] = nlohmann::json::array();
    for (const auto& [p, i] : distinct_i) d["distinct_interior"].push_back(p.to_json());
    d["distinct_exterior"] = nlohmann::json::array();
    for (const auto& [p, i] : distinct_x) d["distinct_exterior"].push_back(p.to_json());
    return report;
}

Report verify_order_independence(const BipartiteGraph& b, const OrderIndependenceOptions& options,
                                 const EngineLimits& limits) {
    if (options.mode == OrderingMode::kAll && b.hyperedge_count() > options.max_all_edges) {
        throw Error(ErrorCode::kBudgetExceeded,
                    "budget exceeded: all-orderings mode allows at most " + std::to_string(options.max_all_edges) +
                        " hyperedges, got " + std::to_string(b.hyperedge_count()));
    }
    return verify_order_independence(TransferTable(b, limits), options);
}

// --- Fibers -------------------------------------------------------------------------------

std::vector<std::vector<std::size_t>> fiber_indices(const TransferTable& table, EdgeIndex e_h, EdgeIndex e_h1) {
    if (e_h == e_h1) throw Error(ErrorCode::kPrecondition, "fiber needs two distinct hyperedges");
    if (e_h >= table.edge_count() || e_h1 >= table.edge_count()) {
        throw Error(ErrorCode::kUnknownId, "unknown identifier: hyperedge outside E");
    }
    std::map<std::vector<int>, std::size_t> slot;
    std::vector<std::vector<std::size_t>> fibers;
    for (std::size_t t = 0; t < table.size(); ++t) {
        auto rest = table.hypertree(t).values;
        rest[e_h] = 0;
        rest[e_h1] = 0;
        auto [it, fresh] = slot.try_emplace(std::move(rest), fibers.size());
        if (fresh) fibers.emplace_back();
        fibers[it->second].push_back(t);
    }
    for (auto& fiber : fibers) {
        std::sort(fiber.begin(), fiber.end(), [&](std::size_t a, std::size_t b) {
            return table.hypertree(a)[e_h] < table.hypertree(b)[e_h];
        });
    }
    return fibers;
}

std::vector<Fiber> fiber_decomposition(const BipartiteGraph& b, EdgeIndex e_h, EdgeIndex e_h1,
                                       const EngineLimits& limits) {
    if (e_h == e_h1) throw Error(ErrorCode::kPrecondition, "fiber needs two distinct hyperedges");
    const TransferTable table(b, limits);
    std::vector<Fiber> out;
    for (const auto& idx : fiber_indices(table, e_h, e_h1)) {
        Fiber fiber;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const Hypertree& g = table.hypertree(idx[i]);
            if (i > 0 && g[e_h] != fiber.members.back()[e_h] + 1) {
                throw Error(ErrorCode::kInvariantViolation, "invariant violated: fiber values are not consecutive");
            }
            fiber.members.push_back(g);
        }
        out.push_back(std::move(fiber));
    }
    return out;
}

// --- Transposition replay ------------------------------------------------------------------

namespace {

struct Activities {
    ActivityProfile under_o;
    ActivityProfile under_swapped;
};

class TranspositionReplay {
public:
    TranspositionReplay(const TransferTable& table, const EdgeOrdering& order, std::size_t h)
        : table_(table), b_(table.graph()), o_(order), o2_(order.with_adjacent_swap(h - 1)), h_(h) {
        e_h_ = order.at(h - 1);
        e_h1_ = order.at(h);
        smaller_ = order.smaller_than(e_h_);
        acts_.reserve(table.size());
        for (std::size_t t = 0; t < table.size(); ++t) {
            acts_.push_back({activity_profile(table, t, o_), activity_profile(table, t, o2_)});
        }
    }

    Report run() {
        for (std::size_t t = 0; t < table_.size(); ++t) check_member(t);
        for (const auto& fiber : fiber_indices(table_, e_h_, e_h1_)) check_fiber(fiber);
        report_.expect("polynomials_equal",
                       interior_polynomial(table_, o_) == interior_polynomial(table_, o2_) &&
                           exterior_polynomial(table_, o_) == exterior_polynomial(table_, o2_),
                       [&] { return witness({}); });
        auto& d = report_.details();
        d["order"] = o_.to_json(b_);
        d["swapped_order"] = o2_.to_json(b_);
        d["h"] = h_;
        d["hypertrees"] = table_.size();
        return std::move(report_);
    }

private:
    bool ia(std::size_t t, EdgeIndex e) const { return acts_[t].under_o.internally_active[e]; }
    bool ea(std::size_t t, EdgeIndex e) const { return acts_[t].under_o.externally_active[e]; }
    bool ia2(std::size_t t, EdgeIndex e) const { return acts_[t].under_swapped.internally_active[e]; }
    bool ea2(std::size_t t, EdgeIndex e) const { return acts_[t].under_swapped.externally_active[e]; }
    std::size_t ii(std::size_t t) const { return acts_[t].under_o.internal_inactivity(); }
    std::size_t ii2(std::size_t t) const { return acts_[t].under_swapped.internal_inactivity(); }
    std::size_t ei(std::size_t t) const { return acts_[t].under_o.external_inactivity(); }
    std::size_t ei2(std::size_t t) const { return acts_[t].under_swapped.external_inactivity(); }

    // Raising e_h / lowering e_h1 is a transfer e_h1 -> e_h, and vice versa.
    bool raise_valid(std::size_t t) const { return table_.can_transfer(t, {e_h1_, e_h_}); }
    bool lower_valid(std::size_t t) const { return table_.can_transfer(t, {e_h_, e_h1_}); }

    nlohmann::json witness(std::vector<std::size_t> members, const char* case_name = nullptr) const {
        nlohmann::json doc{
            {"kind", "transposition"},
            {"hypergraph", to_json(b_.source())},
            {"order", o_.to_json(b_)},
            {"h", h_},
        };
        if (!members.empty()) {
            nlohmann::json fiber = nlohmann::json::array();
            for (std::size_t t : members) fiber.push_back(to_json(b_, table_.hypertree(t)));
            doc["fiber"] = std::move(fiber);
        }
        if (case_name) doc["case"] = case_name;
        return doc;
    }

    void check_member(std::size_t t) {
        const EdgeIndex a = e_h_;
        const EdgeIndex c = e_h1_;
        const bool f1 = raise_valid(t);
        const bool f2 = lower_valid(t);
        auto w = [&] { return witness({t}); };

        bool stable = true;
        for (EdgeIndex e = 0; e < table_.edge_count(); ++e) {
            if (e == a || e == c) continue;
            stable = stable && ia(t, e) == ia2(t, e) && ea(t, e) == ea2(t, e);
        }
        report_.expect("others_stable_under_swap", stable, w);

        report_.implication("raised_keeps_inactivity_internal", !ia(t, a), !ia2(t, a), w);
        report_.implication("raised_keeps_inactivity_external", !ea(t, a), !ea2(t, a), w);
        report_.implication("lowered_keeps_activity_internal", ia(t, c), ia2(t, c), w);
        report_.implication("lowered_keeps_activity_external", ea(t, c), ea2(t, c), w);
        report_.implication("raisable_internal", f1 && !ia(t, a), !ia2(t, c), w);
        report_.implication("raisable_external", f1 && ea(t, a), ea2(t, c), w);
        report_.implication("unraisable_internal", !f1 && !ia(t, c), !ia2(t, c), w);
        report_.implication("unraisable_external", !f1 && ea(t, a), ea2(t, a), w);
        report_.implication("lowerable_internal", f2 && ia(t, a), ia2(t, c), w);
        report_.implication("lowerable_external", f2 && !ea(t, a), !ea2(t, c), w);
        report_.implication("unlowerable_internal", !f2 && ia(t, a), ia2(t, a), w);
        report_.implication("unlowerable_external", !f2 && !ea(t, c), !ea2(t, c), w);

        const bool same_counts = ii(t) == ii2(t) && ei(t) == ei2(t);
        if (!f1 && !f2) {
            report_.expect("isolated_counts_equal", same_counts, [&] { return witness({t}, "isolated"); });
        } else if (f1 && f2) {
            report_.expect("interior_member_structure", !ia(t, c) && !ea(t, c) && !ia2(t, a) && !ea2(t, a),
                           [&] { return witness({t}, "interior"); });
            report_.expect("interior_member_exchange", ia(t, a) == ia2(t, c) && ea(t, a) == ea2(t, c),
                           [&] { return witness({t}, "interior"); });
            report_.expect("interior_member_counts_equal", same_counts, [&] { return witness({t}, "interior"); });
        }
    }

    void check_fiber(const std::vector<std::size_t>& fiber) {
        const EdgeIndex a = e_h_;
        const EdgeIndex c = e_h1_;
        const std::size_t l = fiber.size();
        auto w = [&](const char* name = nullptr) { return witness(fiber, name); };

        bool consecutive = true;
        for (std::size_t i = 1; i < l; ++i) {
            consecutive = consecutive && table_.hypertree(fiber[i])[a] == table_.hypertree(fiber[i - 1])[a] + 1;
        }
        report_.expect("fiber_consecutive", consecutive, [&] { return w(); });

        // Neighbour validity must match the position in the fiber: both
        // invalid alone, raise-only at the bottom, lower-only at the top,
        // both in between.
        bool positions = true;
        for (std::size_t i = 0; i < l; ++i) {
            positions = positions && raise_valid(fiber[i]) == (i + 1 < l) && lower_valid(fiber[i]) == (i > 0);
        }
        report_.expect("fiber_position_matches_moves", positions, [&] { return w(); });

        std::vector<std::size_t> io, io2, eo, eo2;
        for (std::size_t t : fiber) {
            io.push_back(ii(t));
            io2.push_back(ii2(t));
            eo.push_back(ei(t));
            eo2.push_back(ei2(t));
        }
        for (auto* v : {&io, &io2, &eo, &eo2}) std::sort(v->begin(), v->end());
        report_.expect("fiber_conservation", io == io2 && eo == eo2, [&] { return w(); });

        if (l < 2) return;
        const std::size_t f = fiber.front();
        const std::size_t fs = fiber.back();
        const std::uint64_t e1 = smaller_;
        const std::uint64_t e3 = e1 | (std::uint64_t{1} << a);
        const std::uint64_t e4 = e1 | (std::uint64_t{1} << c);
        auto w3 = [&] { return w("endpoints"); };

        report_.expect("endpoint_pairing",
                       std::minmax(ii(f), ii(fs)) == std::minmax(ii2(f), ii2(fs)) &&
                           std::minmax(ei(f), ei(fs)) == std::minmax(ei2(f), ei2(fs)),
                       w3);
        report_.expect("endpoint_structure", !ia(f, c) && !ea2(f, a) && !ia2(fs, a) && !ea(fs, c), w3);

        bool bottom_stable = true;
        bool top_stable = true;
        for (EdgeIndex e = 0; e < table_.edge_count(); ++e) {
            if (in_mask(e3, e)) {
                bottom_stable = bottom_stable && ia(f, e) == ia2(f, e);
                top_stable = top_stable && ea(fs, e) == ea2(fs, e);
            }
            if (in_mask(e4, e)) {
                bottom_stable = bottom_stable && ea(f, e) == ea2(f, e);
                top_stable = top_stable && ia(fs, e) == ia2(fs, e);
            }
        }
        report_.expect("bottom_endpoint_stability", bottom_stable, w3);
        report_.expect("top_endpoint_stability", top_stable, w3);

        auto rest_equal = [&](auto&& flag) {
            for (EdgeIndex e = 0; e < table_.edge_count(); ++e) {
                if (e != a && e != c && flag(f, e) != flag(fs, e)) return false;
            }
            return true;
        };

        // Internal activity: either both endpoints keep their counts, or
        // the counts trade places.
        if (!ia2(f, c)) {
            report_.vacuous("endpoint_activity_internal");
            report_.vacuous("endpoint_matrix_internal");
            report_.vacuous("endpoint_others_agree_internal");
            report_.expect("endpoints_internal_fixed", ii(f) == ii2(f) && ii(fs) == ii2(fs) && !ia(fs, a), w3);
        } else {
            report_.expect("endpoint_activity_internal", ia(f, a) && ia(fs, a) && ia2(f, c) && ia2(fs, c), w3);
            // Rows e_h, e_h1; columns (f,O), (f*,O'), (f,O'), (f*,O).
            const bool table = ia(f, a) && !ia2(fs, a) && ia2(f, a) && ia(fs, a) &&
                               !ia(f, c) && ia2(fs, c) && ia2(f, c) && ia(fs, c);
            report_.expect("endpoint_matrix_internal", table, w3);
            report_.expect("endpoint_others_agree_internal",
                           rest_equal([&](std::size_t t, EdgeIndex e) { return ia(t, e); }), w3);
            report_.expect("endpoints_internal_swapped", ii(f) == ii2(fs) && ii2(f) == ii(fs), w3);
        }

        if (!ea(f, a)) {
            report_.vacuous("endpoint_activity_external");
            report_.vacuous("endpoint_matrix_external");
            report_.vacuous("endpoint_others_agree_external");
            report_.expect("endpoints_external_fixed", ei(f) == ei2(f) && ei(fs) == ei2(fs) && !ea2(fs, c), w3);
        } else {
            report_.expect("endpoint_activity_external", ea(f, a) && ea(fs, a) && ea2(f, c) && ea2(fs, c), w3);
            // Bottom endpoint: e_h externally inactive under O' (e_h1 -> e_h
            // is valid). Top endpoint: e_h1 externally inactive under O.
            // Everything else active.
            const bool table = ea(f, a) && ea2(fs, a) && !ea2(f, a) && ea(fs, a) &&
                               ea(f, c) && ea2(fs, c) && ea2(f, c) && !ea(fs, c);
            report_.expect("endpoint_matrix_external", table, w3);
            report_.expect("endpoint_others_agree_external",
                           rest_equal([&](std::size_t t, EdgeIndex e) { return ea(t, e); }), w3);
            report_.expect("endpoints_external_swapped", ei(f) == ei2(fs) && ei2(f) == ei(fs), w3);
        }
    }

    const TransferTable& table_;
    const BipartiteGraph& b_;
    EdgeOrdering o_;
    EdgeOrdering o2_;
    std::size_t h_;
    EdgeIndex e_h_ = 0;
    EdgeIndex e_h1_ = 0;
    std::uint64_t smaller_ = 0;
    std::vector<Activities> acts_;
    Report report_;
};

}  // namespace

Report verify_transposition_proof(const TransferTable& table, const EdgeOrdering& order, std::size_t h) {
    const std::size_t m = table.edge_count();
    if (order.size() != m) throw Error(ErrorCode::kDomainMismatch, "domain mismatch: ordering size differs from |E|");
    if (h < 1 || h >= m) {
        throw Error(ErrorCode::kPrecondition,
                    "rank out of range: h must satisfy 1 <= h < " + std::to_string(m) + ", got " + std::to_string(h));
    }
    return TranspositionReplay(table, order, h).run();
}

Report verify_transposition_proof(const BipartiteGraph& b, const EdgeOrdering& order, std::size_t h,
                                  const EngineLimits& limits) {
    const std::size_t m = b.hyperedge_count();
    if (h < 1 || h >= m) {
        throw Error(ErrorCode::kPrecondition,
                    "rank out of range: h must satisfy 1 <= h < " + std::to_string(m) + ", got " + std::to_string(h));
    }
    return verify_transposition_proof(TransferTable(b, limits), order, h);
}

}  // namespace hyperpoly
