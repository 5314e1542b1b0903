#include "hyperpoly/lemmas.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hyperpoly/error.hpp"

namespace hyperpoly {

namespace {

// Every f with 0 <= f(e) <= d(e)-1 and sum f = |V|-1.
std::vector<Hypertree> candidate_maps(const BipartiteGraph& b) {
    const std::size_t m = b.hyperedge_count();
    const int target = static_cast<int>(b.vertex_count()) - 1;
    std::vector<int> cap_after(m + 1, 0);
    for (std::size_t e = m; e-- > 0;) cap_after[e] = cap_after[e + 1] + static_cast<int>(b.degree(e)) - 1;

    std::vector<Hypertree> out;
    Hypertree f{std::vector<int>(m, 0)};
    auto fill = [&](auto&& self, std::size_t e, int remaining) -> void {
        if (e == m) {
            if (remaining == 0) out.push_back(f);
            return;
        }
        if (remaining > cap_after[e]) return;
        const int top = std::min(remaining, static_cast<int>(b.degree(e)) - 1);
        for (int x = 0; x <= top; ++x) {
            f.values[e] = x;
            self(self, e + 1, remaining - x);
        }
        f.values[e] = 0;
    };
    if (target >= 0) fill(fill, 0, target);
    return out;
}

int subset_sum(const Hypertree& f, std::uint64_t bits) {
    int sum = 0;
    for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) sum += f[std::countr_zero(rest)];
    return sum;
}

bool has(std::uint64_t mask, EdgeIndex e) { return (mask >> e) & 1U; }

class LemmaSuite {
public:
    LemmaSuite(const BipartiteGraph& b, const LemmaOptions& options)
        : b_(b),
          options_(options),
          m_(b.hyperedge_count()),
          mu_(b, options.limits.exhaustive_bound),
          table_(b, options.limits) {}

    Report run() {
        tight_.reserve(table_.size());
        for (const auto& f : table_.hypertrees()) {
            std::vector<std::uint64_t> masks;
            for (auto s : tight_family(mu_, f)) masks.push_back(s.bits());
            tight_.push_back(std::move(masks));
        }
        check_mu();
        check_checkers();
        check_transfer_checkers();
        check_transitivity();
        check_tight_lattice();
        check_slack_inflow();
        check_superset();
        check_pair_shift();
        check_enumerators();
        auto& d = report_.details();
        d["hypertrees"] = table_.size();
        d["hyperedges"] = m_;
        d["vertices"] = b_.vertex_count();
        return std::move(report_);
    }

private:
    nlohmann::json witness(std::initializer_list<std::pair<const char*, nlohmann::json>> fields = {}) const {
        nlohmann::json doc{{"kind", "lemmas"}, {"hypergraph", to_json(b_.source())}, {"rng_seed", options_.seed}};
        for (const auto& [k, v] : fields) doc[k] = v;
        return doc;
    }
    nlohmann::json tree_json(const Hypertree& f) const { return to_json(b_, f); }
    const std::string& id(EdgeIndex e) const { return b_.source().hyperedge_id(e); }

    bool can(std::size_t t, EdgeIndex from, EdgeIndex to) const { return table_.can_transfer(t, {from, to}); }

    void check_mu() {
        const std::uint64_t count = std::uint64_t{1} << m_;
        for (std::uint64_t s = 0; s < count; ++s) {
            for (EdgeIndex a = 0; a < m_; ++a) {
                if (has(s, a)) continue;
                const std::uint64_t sa = s | (std::uint64_t{1} << a);
                report_.expect("mu_monotone", mu_(EdgeSubset(s)) <= mu_(EdgeSubset(sa)),
                               [&] { return witness({{"subset", s}, {"added", id(a)}}); });
                for (EdgeIndex c = a + 1; c < m_; ++c) {
                    if (has(s, c)) continue;
                    const std::uint64_t sc = s | (std::uint64_t{1} << c);
                    const std::uint64_t sac = sa | sc;
                    report_.expect("mu_submodular",
                                   mu_(EdgeSubset(sa)) + mu_(EdgeSubset(sc)) >= mu_(EdgeSubset(sac)) + mu_(EdgeSubset(s)),
                                   [&] { return witness({{"subset", s}, {"pair", {id(a), id(c)}}}); });
                }
            }
        }
        report_.expect("mu_full_rank", mu_(EdgeSubset::full(m_)) == static_cast<int>(b_.vertex_count()) - 1,
                       [&] { return witness(); });
    }

    void check_checkers() {
        const auto candidates = candidate_maps(b_);
        const std::uint64_t count = std::uint64_t{1} << m_;
        // Largest subset sum reached by any known hypertree, per subset.
        std::vector<int> best(static_cast<std::size_t>(count), -1);
        for (const auto& f : table_.hypertrees()) {
            for (std::uint64_t s = 1; s < count; ++s) best[s] = std::max(best[s], subset_sum(f, s));
        }
        std::set<Hypertree> accepted;
        for (const auto& g : candidates) {
            const auto tau = find_realizing_tree(b_, g);
            const bool by_subsets = is_hypertree_polymatroid(mu_, b_.vertex_count(), g);
            report_.expect("checker_equivalence", tau.has_value() == by_subsets, [&] {
                return witness({{"map", tree_json(g)}, {"realizable", tau.has_value()}, {"subset_condition", by_subsets}});
            });
            if (tau) {
                accepted.insert(g);
                bool sound = false;
                try {
                    sound = hypertree_from_tree(b_, *tau) == g;
                } catch (const Error&) {
                    sound = false;
                }
                report_.expect("witness_soundness", sound,
                               [&] { return witness({{"map", tree_json(g)}, {"witness", to_json(b_, *tau)}}); });
            }
            bool dominated = true;
            for (std::uint64_t s = 1; s < count && dominated; ++s) dominated = subset_sum(g, s) <= best[s];
            report_.implication("dominance_sufficiency", dominated, tau.has_value(),
                                [&] { return witness({{"map", tree_json(g)}}); });
        }
        const std::set<Hypertree> enumerated(table_.hypertrees().begin(), table_.hypertrees().end());
        report_.expect("enumeration_matches_checker", accepted == enumerated, [&] { return witness(); });
    }

    void check_transfer_checkers() {
        for (std::size_t t = 0; t < table_.size(); ++t) {
            const Hypertree& f = table_.hypertree(t);
            for (EdgeIndex from = 0; from < m_; ++from) {
                for (EdgeIndex to = 0; to < m_; ++to) {
                    if (from == to) continue;
                    const TransferMove move{from, to};
                    const bool direct = transfer_valid(b_, f, move);
                    const bool tight = transfer_valid_by_tightness(tight_masks(t), f, move);
                    auto w = [&] {
                        return witness({{"hypertree", tree_json(f)},
                                        {"move", {id(from), id(to)}},
                                        {"realization", direct},
                                        {"tightness", tight}});
                    };
                    report_.expect("transfer_checker_equivalence", direct == tight, w);
                    report_.expect("transfer_table_consistency", direct == can(t, from, to), w);
                }
            }
        }
    }

    std::vector<EdgeSubset> tight_masks(std::size_t t) const {
        std::vector<EdgeSubset> out;
        for (auto s : tight_[t]) out.emplace_back(s);
        return out;
    }

    void check_transitivity() {
        for (std::size_t t = 0; t < table_.size(); ++t) {
            for (EdgeIndex a = 0; a < m_; ++a) {
                for (EdgeIndex c = 0; c < m_; ++c) {
                    if (c == a) continue;
                    for (EdgeIndex d = 0; d < m_; ++d) {
                        if (d == a || d == c) continue;
                        report_.implication("transfer_transitivity", can(t, a, c) && can(t, c, d), can(t, a, d), [&] {
                            return witness({{"hypertree", tree_json(table_.hypertree(t))}, {"chain", {id(a), id(c), id(d)}}});
                        });
                    }
                }
            }
        }
    }

    void check_tight_lattice() {
        for (std::size_t t = 0; t < table_.size(); ++t) {
            const auto& family = tight_[t];
            for (std::size_t i = 0; i < family.size(); ++i) {
                for (std::size_t j = i + 1; j < family.size(); ++j) {
                    const bool closed = std::binary_search(family.begin(), family.end(), family[i] & family[j]) &&
                                        std::binary_search(family.begin(), family.end(), family[i] | family[j]);
                    report_.expect("tight_lattice", closed, [&] {
                        return witness({{"hypertree", tree_json(table_.hypertree(t))}, {"sets", {family[i], family[j]}}});
                    });
                }
            }
        }
    }

    void check_slack_inflow() {
        const std::uint64_t full = EdgeSubset::full(m_).bits();
        for (std::size_t t = 0; t < table_.size(); ++t) {
            const Hypertree& f = table_.hypertree(t);
            for (std::uint64_t s = 1; s < full; ++s) {
                const bool slack = subset_sum(f, s) != mu_(EdgeSubset(s));
                bool inflow = false;
                for (EdgeIndex e = 0; e < m_ && !inflow; ++e) {
                    if (!has(s, e)) inflow = (table_.receivers(t, e) & s) != 0;
                }
                report_.implication("slack_implies_inflow", slack, inflow,
                                    [&] { return witness({{"hypertree", tree_json(f)}, {"subset", s}}); });
            }
        }
    }

    // Growing a set one hyperedge at a time; the general superset case
    // follows by induction.
    void check_superset() {
        const std::uint64_t count = std::uint64_t{1} << m_;
        for (std::size_t t = 0; t < table_.size(); ++t) {
            for (EdgeIndex e = 0; e < m_; ++e) {
                const std::uint64_t recv = table_.receivers(t, e);
                const std::uint64_t send = table_.senders(t, e);
                for (std::uint64_t s = 0; s < count; ++s) {
                    for (EdgeIndex a = 0; a < m_; ++a) {
                        if (has(s, a)) continue;
                        const std::uint64_t bigger = s | (std::uint64_t{1} << a);
                        auto w = [&] {
                            return witness({{"hypertree", tree_json(table_.hypertree(t))}, {"edge", id(e)}, {"subset", s}});
                        };
                        report_.implication("receiver_superset", (recv & s) != 0, (recv & bigger) != 0, w);
                        report_.implication("sender_superset", (send & s) != 0, (send & bigger) != 0, w);
                    }
                }
            }
        }
    }

    std::vector<EdgeOrdering> stability_orders() const {
        std::vector<EdgeOrdering> orders;
        if (m_ <= options_.max_all_order_edges) {
            std::vector<EdgeIndex> seq(m_);
            std::iota(seq.begin(), seq.end(), EdgeIndex{0});
            do {
                orders.emplace_back(seq);
            } while (std::next_permutation(seq.begin(), seq.end()));
        } else {
            Rng rng(options_.seed);
            for (std::size_t k = 0; k < options_.ordering_samples; ++k) orders.push_back(EdgeOrdering::random(m_, rng));
        }
        return orders;
    }

    void check_pair_shift() {
        const auto orders = stability_orders();
        for (std::size_t t1 = 0; t1 < table_.size(); ++t1) {
            for (std::size_t t2 = 0; t2 < table_.size(); ++t2) {
                const Hypertree& f1 = table_.hypertree(t1);
                const Hypertree& f2 = table_.hypertree(t2);
                std::vector<EdgeIndex> diff;
                for (EdgeIndex e = 0; e < m_; ++e) {
                    if (f1[e] != f2[e]) diff.push_back(e);
                }
                if (diff.size() != 2) continue;
                // e1 is where f1 is smaller; the sums agree, so f1 is larger at e2.
                const EdgeIndex e1 = f1[diff[0]] < f2[diff[0]] ? diff[0] : diff[1];
                const EdgeIndex e2 = e1 == diff[0] ? diff[1] : diff[0];
                check_pair(t1, t2, e1, e2, orders);
            }
        }
    }

    void check_pair(std::size_t t1, std::size_t t2, EdgeIndex e1, EdgeIndex e2, const std::vector<EdgeOrdering>& orders) {
        auto w = [&](std::initializer_list<std::pair<const char*, nlohmann::json>> extra) {
            auto doc = witness({{"f1", tree_json(table_.hypertree(t1))},
                                {"f2", tree_json(table_.hypertree(t2))},
                                {"e1", id(e1)},
                                {"e2", id(e2)}});
            for (const auto& [k, v] : extra) doc[k] = v;
            return doc;
        };
        for (EdgeIndex e = 0; e < m_; ++e) {
            if (e == e1 || e == e2) continue;
            report_.implication("pair_shift_sender", can(t1, e2, e), can(t2, e1, e), [&] { return w({{"e", id(e)}}); });
            report_.implication("pair_shift_receiver", can(t1, e, e1), can(t2, e, e2), [&] { return w({{"e", id(e)}}); });
            for (EdgeIndex ep = 0; ep < m_; ++ep) {
                if (ep == e || ep == e1 || ep == e2) continue;
                auto wp = [&] { return w({{"e", id(e)}, {"e_prime", id(ep)}}); };
                report_.implication("pair_blocked_receiver", !can(t1, e, ep) && !can(t1, e2, ep),
                                    !can(t2, e, ep) && !can(t2, e2, ep), wp);
                report_.implication("pair_blocked_sender", !can(t1, e, e1) && !can(t1, e, ep),
                                    !can(t2, e, e1) && !can(t2, e, ep), wp);
            }
        }
        for (const auto& order : orders) {
            const std::size_t above = std::max(order.position_of(e1), order.position_of(e2));
            for (std::size_t p = above + 1; p < m_; ++p) {
                const EdgeIndex e = order.at(p);
                const std::uint64_t smaller = order.smaller_than(e);
                const bool same_internal = ((table_.receivers(t1, e) & smaller) == 0) == ((table_.receivers(t2, e) & smaller) == 0);
                const bool same_external = ((table_.senders(t1, e) & smaller) == 0) == ((table_.senders(t2, e) & smaller) == 0);
                report_.expect("activity_stability", same_internal && same_external,
                               [&] { return w({{"e", id(e)}, {"order", order.to_json(b_)}}); });
            }
        }
    }

    void check_enumerators() {
        HypertreeMemo memo(b_);
        for (const auto& seed : table_.hypertrees()) {
            const auto closure = enumerate_hypertrees_by_transfer(b_, seed, memo);
            report_.expect("enumerator_agreement", closure == table_.hypertrees(),
                           [&] { return witness({{"seed", tree_json(seed)}, {"closure_size", closure.size()}}); });
        }
    }

    const BipartiteGraph& b_;
    const LemmaOptions& options_;
    std::size_t m_;
    MuTable mu_;
    TransferTable table_;
    std::vector<std::vector<std::uint64_t>> tight_;
    Report report_;
};

}  // namespace

Report verify_lemmas(const BipartiteGraph& b, const LemmaOptions& options) {
    if (!is_connected(b)) throw Error(ErrorCode::kNotConnected, "hypergraph not connected");
    return LemmaSuite(b, options).run();
}

}  // namespace hyperpoly
