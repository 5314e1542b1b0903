// Acceptance gate: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hyperpoly/activity.hpp"
#include "hyperpoly/corpus.hpp"
#include "hyperpoly/hypergraph.hpp"
#include "hyperpoly/hypertree.hpp"
#include "hyperpoly/lemmas.hpp"
#include "hyperpoly/tutte.hpp"

using namespace hyperpoly;

namespace {

// Pinned thresholds.
constexpr double kTriangleSeconds = 1.0;
constexpr double kTutteSeconds = 10.0;
constexpr std::size_t kMinCorpusSize = 200;
constexpr std::size_t kMainCorpusSize = 500;
constexpr std::uint64_t kMainCorpusSeed = 20240601;
constexpr std::size_t kMainMaxVertices = 7;
constexpr std::size_t kMainMaxHyperedges = 6;
constexpr std::size_t kSmallCorpusSize = 500;
constexpr std::uint64_t kSmallCorpusSeed = 20240602;
constexpr std::size_t kSmallMaxVertices = 6;
constexpr std::size_t kSmallMaxHyperedges = 5;
constexpr std::size_t kReplayOrderings = 20;
constexpr std::uint64_t kReplaySeed = 7;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void line(int criterion, const char* title, const Outcome& o) {
    std::printf("criterion %d [%s] %s: %s\n", criterion, o.ok ? "PASS" : "FAIL", title, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

Hypergraph triangle() {
    return Hypergraph({"v1", "v2", "v3"}, {{"a", {"v1", "v2"}}, {"b", {"v2", "v3"}}, {"c", {"v1", "v3"}}});
}

Multigraph graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& ends) {
    std::vector<std::string> vertices;
    for (std::size_t v = 1; v <= n; ++v) vertices.push_back("v" + std::to_string(v));
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> edges;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        edges.push_back({"e" + std::to_string(i + 1), {vertices[ends[i].first], vertices[ends[i].second]}});
    }
    return Multigraph(vertices, edges);
}

Outcome criterion1() {
    const auto start = Clock::now();
    const BipartiteGraph b(triangle());
    const TransferTable table(b);
    const IntPolynomial want_i({1, 1, 1});
    const IntPolynomial want_x({1, 2});
    std::vector<EdgeIndex> seq{0, 1, 2};
    std::size_t orders = 0;
    bool ok = table.size() == 3;
    do {
        const EdgeOrdering o(seq);
        ok = ok && interior_polynomial(table, o) == want_i && exterior_polynomial(table, o) == want_x;
        // Independent route: activities straight from the transfer checker.
        IntPolynomial brute_i, brute_x;
        for (const auto& f : enumerate_hypertrees(b)) {
            const auto p = activity_profile(b, f, o);
            brute_i.add_term(p.internal_inactivity(), 1);
            brute_x.add_term(p.external_inactivity(), 1);
        }
        ok = ok && brute_i == want_i && brute_x == want_x;
        ++orders;
    } while (std::next_permutation(seq.begin(), seq.end()));
    const Report tutte = crosscheck_specialization(graph(3, {{0, 1}, {1, 2}, {0, 2}}));
    ok = ok && tutte.passed() && orders == 6;
    const double t = seconds_since(start);
    ok = ok && t < kTriangleSeconds;
    return {ok, fmt("I=1+x+x^2, X=1+2y under %zu orderings, Tutte reversal %s, %.3fs (limit %.0fs)", orders,
                    tutte.passed() ? "ok" : "FAILED", t, kTriangleSeconds)};
}

std::uint64_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

Outcome criterion2(const std::vector<Hypergraph>& corpus, const std::vector<TransferTable>& tables) {
    const auto start = Clock::now();
    std::uint64_t orderings = 0, bad = 0;
    std::size_t largest = 0;
    OrderIndependenceOptions opts;
    opts.mode = OrderingMode::kAll;
    opts.max_all_edges = kMainMaxHyperedges;
    std::string first;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Report r = verify_order_independence(tables[i], opts);
        orderings += r.details().at("orderings").get<std::uint64_t>();
        if (r.details().at("orderings").get<std::uint64_t>() != factorial(tables[i].edge_count())) ++bad;
        if (!r.passed()) {
            ++bad;
            if (first.empty()) first = r.counterexample()->dump();
        }
        largest = std::max(largest, tables[i].size());
    }
    std::size_t full_size = 0;
    for (const auto& h : corpus) {
        if (h.hyperedge_count() == kMainMaxHyperedges) ++full_size;
    }
    return {bad == 0 && corpus.size() >= kMinCorpusSize,
            fmt("%zu instances (%zu with |E|=%zu), %llu orderings, %llu counterexamples, largest |B_H|=%zu, %.1fs%s%s",
                corpus.size(), full_size, kMainMaxHyperedges,
                static_cast<unsigned long long>(orderings), static_cast<unsigned long long>(bad), largest,
                seconds_since(start), first.empty() ? "" : ", first: ", first.c_str())};
}

Outcome criterion3(const std::vector<Hypergraph>& corpus, const std::vector<TransferTable>& tables) {
    const auto start = Clock::now();
    std::uint64_t replays = 0, failed = 0, vacuous = 0, passed = 0;
    std::map<std::string, std::uint64_t> vacuous_by_check;
    bool saw_isolated = false, saw_endpoints = false;
    std::string first;
    Rng rng(kReplaySeed);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const std::size_t m = tables[i].edge_count();
        for (std::size_t k = 0; k < kReplayOrderings; ++k) {
            const EdgeOrdering o = EdgeOrdering::random(m, rng);
            for (std::size_t h = 1; h < m; ++h) {
                const Report r = verify_transposition_proof(tables[i], o, h);
                ++replays;
                for (const auto& c : r.checks()) {
                    failed += c.failed;
                    vacuous += c.vacuous;
                    passed += c.passed;
                    vacuous_by_check[c.name] += c.vacuous;
                    if (c.name == "isolated_counts_equal" && c.passed) saw_isolated = true;
                    if (c.name == "endpoint_pairing" && c.passed) saw_endpoints = true;
                }
                if (!r.passed() && first.empty()) first = r.counterexample()->dump();
            }
        }
    }
    std::string vac;
    for (const auto& [name, count] : vacuous_by_check) {
        if (count) vac += (vac.empty() ? "" : " ") + name + "=" + std::to_string(count);
    }
    return {failed == 0 && replays > 0 && saw_isolated && saw_endpoints,
            fmt("%llu replays, %llu checks passed, %llu failed, %llu vacuous, %.1fs", static_cast<unsigned long long>(replays),
                static_cast<unsigned long long>(passed), static_cast<unsigned long long>(failed),
                static_cast<unsigned long long>(vacuous), seconds_since(start)) +
                (first.empty() ? "" : ", first: " + first) + "\n    vacuous by check: " + vac};
}

struct LemmaTotals {
    std::map<std::string, CheckTally> tallies;
    std::string first;
    double seconds = 0;
};

LemmaTotals run_lemmas(const std::vector<Hypergraph>& corpus) {
    const auto start = Clock::now();
    LemmaTotals totals;
    for (const auto& h : corpus) {
        const BipartiteGraph b(h);
        const Report r = verify_lemmas(b);
        for (const auto& c : r.checks()) {
            auto& t = totals.tallies[c.name];
            t.name = c.name;
            t.passed += c.passed;
            t.failed += c.failed;
            t.vacuous += c.vacuous;
        }
        if (!r.passed() && totals.first.empty()) totals.first = r.counterexample()->dump();
    }
    totals.seconds = seconds_since(start);
    return totals;
}

Outcome lemma_criterion(const LemmaTotals& totals, const std::vector<std::string>& names) {
    bool ok = true;
    std::string detail;
    for (const auto& name : names) {
        auto it = totals.tallies.find(name);
        const CheckTally t = it == totals.tallies.end() ? CheckTally{name} : it->second;
        // A check that never fires non-vacuously has not been exercised.
        if (t.failed != 0 || t.passed == 0) ok = false;
        detail += fmt("\n    %-30s passed %llu, failed %llu, vacuous %llu", name.c_str(),
                      static_cast<unsigned long long>(t.passed), static_cast<unsigned long long>(t.failed),
                      static_cast<unsigned long long>(t.vacuous));
    }
    if (!ok && !totals.first.empty()) detail += "\n    first counterexample: " + totals.first;
    return {ok, fmt("%zu instances with |V|<=%zu, |E|<=%zu, %.1fs", kSmallCorpusSize, kSmallMaxVertices,
                    kSmallMaxHyperedges, totals.seconds) +
                    detail};
}

Outcome criterion6() {
    const auto start = Clock::now();
    const std::vector<std::pair<const char*, Multigraph>> graphs{
        {"C3", graph(3, {{0, 1}, {1, 2}, {2, 0}})},
        {"C4", graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})},
        {"C5", graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})},
        {"K4", graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})},
        {"theta", graph(5, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}})},
        {"triangle+parallel", graph(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}})},
        {"triple bond", graph(2, {{0, 1}, {0, 1}, {0, 1}})},
    };
    bool ok = true;
    std::string detail;
    for (const auto& [name, g] : graphs) {
        const Report r = crosscheck_specialization(g);
        ok = ok && r.passed();
        detail += fmt(" %s:%s", name, r.passed() ? "ok" : "FAIL");
    }
    const double t = seconds_since(start);
    ok = ok && t < kTutteSeconds;
    return {ok, fmt("%zu graphs,", graphs.size()) + detail + fmt(", %.3fs (limit %.0fs)", t, kTutteSeconds)};
}

Outcome criterion7(const std::vector<Hypergraph>& corpus, const std::vector<TransferTable>& tables) {
    const auto start = Clock::now();
    std::uint64_t seeds = 0, bad = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const BipartiteGraph& b = tables[i].graph();
        const auto& all = tables[i].hypertrees();
        HypertreeMemo memo(b);
        for (const auto& seed : all) {
            ++seeds;
            if (enumerate_hypertrees_by_transfer(b, seed, memo) != all) ++bad;
        }
        const auto o = EdgeOrdering::document_order(b.hyperedge_count());
        const auto count = static_cast<std::int64_t>(all.size());
        if (interior_polynomial(tables[i], o).evaluate(1) != count || exterior_polynomial(tables[i], o).evaluate(1) != count) {
            ++bad;
        }
    }
    return {bad == 0, fmt("%zu instances, %llu seeds, %llu disagreements, I(1)=X(1)=|B_H| checked, %.1fs", corpus.size(),
                          static_cast<unsigned long long>(seeds), static_cast<unsigned long long>(bad),
                          seconds_since(start))};
}

}  // namespace

int main() {
    line(1, "triangle under all orderings", criterion1());

    const auto corpus = generate_corpus({kMainCorpusSeed, kMainCorpusSize, kMainMaxVertices, kMainMaxHyperedges});
    std::vector<TransferTable> tables;
    tables.reserve(corpus.size());
    for (const auto& h : corpus) tables.emplace_back(BipartiteGraph(h));

    line(2, "order independence", criterion2(corpus, tables));
    line(3, "transposition replay", criterion3(corpus, tables));

    const auto small = generate_corpus({kSmallCorpusSeed, kSmallCorpusSize, kSmallMaxVertices, kSmallMaxHyperedges});
    const LemmaTotals lemmas = run_lemmas(small);
    line(4, "dual checkers", lemma_criterion(lemmas, {"checker_equivalence", "witness_soundness",
                                                      "transfer_checker_equivalence"}));
    line(5, "lemma suite",
         lemma_criterion(lemmas, {"transfer_transitivity", "tight_lattice", "slack_implies_inflow", "pair_shift_sender",
                                  "pair_shift_receiver", "pair_blocked_receiver", "pair_blocked_sender",
                                  "activity_stability"}));
    line(6, "Tutte specialization", criterion6());
    line(7, "enumerator agreement", criterion7(corpus, tables));

    std::printf("acceptance: %s\n", failures == 0 ? "PASS" : "FAIL");
    return failures == 0 ? 0 : 1;
}
