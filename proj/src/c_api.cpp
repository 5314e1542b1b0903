#include "hyperpoly/hyperpoly.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "hyperpoly/activity.hpp"
#include "hyperpoly/corpus.hpp"
#include "hyperpoly/error.hpp"
#include "hyperpoly/hypergraph.hpp"
#include "hyperpoly/hypertree.hpp"
#include "hyperpoly/lemmas.hpp"
#include "hyperpoly/tutte.hpp"

struct hp_hypergraph {
    hyperpoly::BipartiteGraph bip;
};

struct hp_graph {
    hyperpoly::Multigraph graph;
};

namespace {

using namespace hyperpoly;

thread_local std::string last_error;

hp_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::kMalformed: return HP_ERR_MALFORMED;
        case ErrorCode::kDuplicateId: return HP_ERR_DUPLICATE_ID;
        case ErrorCode::kEmptyHyperedge: return HP_ERR_EMPTY_HYPEREDGE;
        case ErrorCode::kUndeclaredVertex: return HP_ERR_UNDECLARED_VERTEX;
        case ErrorCode::kLoop: return HP_ERR_LOOP;
        case ErrorCode::kUnknownId: return HP_ERR_UNKNOWN_ID;
        case ErrorCode::kDomainMismatch: return HP_ERR_DOMAIN_MISMATCH;
        case ErrorCode::kPrecondition: return HP_ERR_PRECONDITION;
        case ErrorCode::kNotConnected: return HP_ERR_NOT_CONNECTED;
        case ErrorCode::kBudgetExceeded: return HP_ERR_BUDGET_EXCEEDED;
        case ErrorCode::kInvariantViolation: return HP_ERR_INVARIANT_VIOLATION;
    }
    return HP_ERR_INTERNAL;
}

hp_status fail(hp_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
hp_status guarded(Body&& body) noexcept {
    last_error.clear();
    try {
        return body();
    } catch (const Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(HP_ERR_MALFORMED, std::string("malformed document: ") + e.what());
    } catch (const std::bad_alloc&) {
        return fail(HP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(HP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(HP_ERR_INTERNAL, "unknown exception");
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

hp_status emit(const nlohmann::json& doc, char** out) {
    *out = dup(doc.dump());
    return HP_OK;
}

hp_status emit_report(const Report& report, char** out) {
    emit(report.to_json(), out);
    return report.passed() ? HP_OK : HP_VERIFICATION_FAILED;
}

hp_options defaults() {
    hp_options o;
    hp_options_init(&o);
    return o;
}

EngineLimits limits_of(const hp_options& o) {
    EngineLimits limits;
    limits.tree_budget = o.tree_budget;
    limits.exhaustive_bound = static_cast<std::size_t>(o.exhaustive_bound);
    return limits;
}

EdgeOrdering order_of(const BipartiteGraph& b, const hp_options& o) {
    return EdgeOrdering::parse(b, o.order ? o.order : "");
}

OrderIndependenceOptions independence_of(const hp_options& o) {
    OrderIndependenceOptions opts;
    opts.mode = o.mode == HP_MODE_RANDOM ? OrderingMode::kRandom : OrderingMode::kAll;
    opts.samples = static_cast<std::size_t>(o.samples);
    opts.seed = o.seed;
    opts.max_all_edges = static_cast<std::size_t>(o.max_all_edges);
    opts.jobs = o.jobs == 0 ? 1 : o.jobs;
    return opts;
}

LemmaOptions lemma_options_of(const hp_options& o) {
    LemmaOptions opts;
    opts.limits = limits_of(o);
    opts.seed = o.seed;
    return opts;
}

#define HP_REQUIRE(cond, what) \
    if (!(cond)) return fail(HP_ERR_INVALID_ARGUMENT, what)

Report replay_order_independence(const nlohmann::json& doc) {
    const BipartiteGraph b(hypergraph_from_json(doc.at("hypergraph")));
    const std::string which = doc.at("polynomial").get<std::string>();
    if (which != "interior" && which != "exterior") {
        throw Error(ErrorCode::kMalformed, "malformed document: unknown polynomial '" + which + "'");
    }
    const auto& orders = doc.at("orders");
    if (!orders.is_array() || orders.size() != 2) {
        throw Error(ErrorCode::kMalformed, "malformed document: 'orders' must hold two orderings");
    }
    const TransferTable table(b, EngineLimits{});
    const EdgeOrdering o0 = EdgeOrdering::from_json(b, orders[0]);
    const EdgeOrdering o1 = EdgeOrdering::from_json(b, orders[1]);
    auto eval = [&](const EdgeOrdering& o) {
        return which == "interior" ? interior_polynomial(table, o) : exterior_polynomial(table, o);
    };
    const IntPolynomial p0 = eval(o0);
    const IntPolynomial p1 = eval(o1);
    Report report;
    report.expect(which == "interior" ? "single_interior" : "single_exterior", p0 == p1, [&] {
        return nlohmann::json{{"kind", "order-independence"},
                              {"polynomial", which},
                              {"hypergraph", to_json(b.source())},
                              {"orders", {o0.to_json(b), o1.to_json(b)}},
                              {"values", {p0.to_json(), p1.to_json()}}};
    });
    report.details()["values"] = {p0.to_json(), p1.to_json()};
    return report;
}

}  // namespace

extern "C" {

void hp_options_init(hp_options* options) {
    if (!options) return;
    const EngineLimits limits;
    const OrderIndependenceOptions independence;
    options->order = nullptr;
    options->mode = HP_MODE_ALL;
    options->samples = independence.samples;
    options->seed = 0;
    options->jobs = 1;
    options->tree_budget = limits.tree_budget;
    options->exhaustive_bound = limits.exhaustive_bound;
    options->max_all_edges = independence.max_all_edges;
}

const char* hp_last_error(void) { return last_error.c_str(); }

const char* hp_status_name(hp_status status) {
    switch (status) {
        case HP_OK: return "ok";
        case HP_VERIFICATION_FAILED: return "verification failed";
        case HP_ERR_MALFORMED: return "malformed";
        case HP_ERR_DUPLICATE_ID: return "duplicate id";
        case HP_ERR_EMPTY_HYPEREDGE: return "empty hyperedge";
        case HP_ERR_UNDECLARED_VERTEX: return "undeclared vertex";
        case HP_ERR_LOOP: return "loop";
        case HP_ERR_UNKNOWN_ID: return "unknown id";
        case HP_ERR_DOMAIN_MISMATCH: return "domain mismatch";
        case HP_ERR_PRECONDITION: return "precondition";
        case HP_ERR_NOT_CONNECTED: return "not connected";
        case HP_ERR_BUDGET_EXCEEDED: return "budget exceeded";
        case HP_ERR_INVARIANT_VIOLATION: return "invariant violation";
        case HP_ERR_INVALID_ARGUMENT: return "invalid argument";
        case HP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* hp_version(void) { return "1.0.0"; }

void hp_string_free(char* text) { std::free(text); }

hp_status hp_hypergraph_parse(const char* text, hp_hypergraph** out) {
    return guarded([&] {
        HP_REQUIRE(text && out, "null argument");
        *out = nullptr;
        *out = new hp_hypergraph{BipartiteGraph(parse_hypergraph(text))};
        return HP_OK;
    });
}

void hp_hypergraph_free(hp_hypergraph* h) { delete h; }

size_t hp_hypergraph_vertex_count(const hp_hypergraph* h) { return h ? h->bip.vertex_count() : 0; }

size_t hp_hypergraph_hyperedge_count(const hp_hypergraph* h) { return h ? h->bip.hyperedge_count() : 0; }

hp_status hp_hypergraph_to_json(const hp_hypergraph* h, char** out) {
    return guarded([&] {
        HP_REQUIRE(h && out, "null argument");
        return emit(to_json(h->bip.source()), out);
    });
}

hp_status hp_hypergraph_diagnostics(const hp_hypergraph* h, char** out) {
    return guarded([&] {
        HP_REQUIRE(h && out, "null argument");
        return emit(nlohmann::json(h->bip.source().diagnostics()), out);
    });
}

hp_status hp_hypertrees(const hp_hypergraph* h, const hp_options* options, char** out) {
    return guarded([&] {
        HP_REQUIRE(h && out, "null argument");
        const hp_options o = options ? *options : defaults();
        const auto trees = enumerate_hypertrees(h->bip, limits_of(o));
        nlohmann::json list = nlohmann::json::array();
        for (const auto& f : trees) list.push_back(to_json(h->bip, f));
        return emit({{"count", trees.size()}, {"hypertrees", std::move(list)}}, out);
    });
}

hp_status hp_hypertree_check(const hp_hypergraph* h, const char* hypertree_json, int* is_hypertree_out,
                             char** witness) {
    return guarded([&] {
        HP_REQUIRE(h && hypertree_json && is_hypertree_out, "null argument");
        const Hypertree f = hypertree_from_json(h->bip, nlohmann::json::parse(hypertree_json));
        const auto tau = find_realizing_tree(h->bip, f);
        *is_hypertree_out = tau ? 1 : 0;
        if (witness) *witness = tau ? dup(to_json(h->bip, *tau).dump()) : nullptr;
        return HP_OK;
    });
}

hp_status hp_interior_polynomial(const hp_hypergraph* h, const hp_options* options, char** out) {
    return guarded([&] {
        HP_REQUIRE(h && out, "null argument");
        const hp_options o = options ? *options : defaults();
        return emit(interior_polynomial(h->bip, order_of(h->bip, o), limits_of(o)).to_json(), out);
    });
}

hp_status hp_exterior_polynomial(const hp_hypergraph* h, const hp_options* options, char** out) {
    return guarded([&] {
        HP_REQUIRE(h && out, "null argument");
        const hp_options o = options ? *options : defaults();
        return emit(exterior_polynomial(h->bip, order_of(h->bip, o), limits_of(o)).to_json(), out);
    });
}

hp_status hp_verify_order_independence(const hp_hypergraph* h, const hp_options* options, char** report) {
    return guarded([&] {
        HP_REQUIRE(h && report, "null argument");
        const hp_options o = options ? *options : defaults();
        return emit_report(verify_order_independence(h->bip, independence_of(o), limits_of(o)), report);
    });
}

hp_status hp_verify_lemmas(const hp_hypergraph* h, const hp_options* options, char** report) {
    return guarded([&] {
        HP_REQUIRE(h && report, "null argument");
        const hp_options o = options ? *options : defaults();
        return emit_report(verify_lemmas(h->bip, lemma_options_of(o)), report);
    });
}

hp_status hp_verify_transposition(const hp_hypergraph* h, const hp_options* options, size_t rank, char** report) {
    return guarded([&] {
        HP_REQUIRE(h && report, "null argument");
        const hp_options o = options ? *options : defaults();
        return emit_report(verify_transposition_proof(h->bip, order_of(h->bip, o), rank, limits_of(o)), report);
    });
}

hp_status hp_graph_parse(const char* text, hp_graph** out) {
    return guarded([&] {
        HP_REQUIRE(text && out, "null argument");
        *out = nullptr;
        *out = new hp_graph{parse_graph(text)};
        return HP_OK;
    });
}

void hp_graph_free(hp_graph* g) { delete g; }

hp_status hp_graph_to_hypergraph(const hp_graph* g, hp_hypergraph** out) {
    return guarded([&] {
        HP_REQUIRE(g && out, "null argument");
        *out = nullptr;
        *out = new hp_hypergraph{BipartiteGraph(graph_to_hypergraph(g->graph))};
        return HP_OK;
    });
}

hp_status hp_tutte_polynomial(const hp_graph* g, char** out) {
    return guarded([&] {
        HP_REQUIRE(g && out, "null argument");
        return emit(tutte_deletion_contraction(g->graph).to_json(), out);
    });
}

hp_status hp_crosscheck_tutte(const hp_graph* g, const hp_options* options, char** report) {
    return guarded([&] {
        HP_REQUIRE(g && report, "null argument");
        const hp_options o = options ? *options : defaults();
        return emit_report(crosscheck_specialization(g->graph, limits_of(o)), report);
    });
}

hp_status hp_generate_corpus(uint64_t seed, size_t count, size_t max_vertices, size_t max_hyperedges, char** out) {
    return guarded([&] {
        HP_REQUIRE(out, "null argument");
        const CorpusOptions options{seed, count, max_vertices, max_hyperedges};
        nlohmann::json instances = nlohmann::json::array();
        for (const auto& h : generate_corpus(options)) instances.push_back(to_json(h));
        return emit({{"seed", seed},
                     {"count", count},
                     {"max_vertices", max_vertices},
                     {"max_hyperedges", max_hyperedges},
                     {"instances", std::move(instances)}},
                    out);
    });
}

hp_status hp_replay(const char* counterexample, const hp_options* options, char** report) {
    return guarded([&] {
        HP_REQUIRE(counterexample && report, "null argument");
        const hp_options o = options ? *options : defaults();
        nlohmann::json doc = nlohmann::json::parse(counterexample);
        // A full failing report is accepted too; its counterexample is replayed.
        if (doc.is_object() && doc.contains("counterexample")) doc = doc.at("counterexample");
        if (!doc.is_object() || !doc.contains("kind")) {
            throw Error(ErrorCode::kMalformed, "malformed document: counterexample needs a 'kind'");
        }
        const std::string kind = doc.at("kind").get<std::string>();
        Report result;
        if (kind == "order-independence") {
            result = replay_order_independence(doc);
        } else if (kind == "transposition") {
            const BipartiteGraph b(hypergraph_from_json(doc.at("hypergraph")));
            const auto order = EdgeOrdering::from_json(b, doc.at("order"));
            result = verify_transposition_proof(b, order, doc.at("h").get<std::size_t>(), limits_of(o));
        } else if (kind == "lemmas") {
            const BipartiteGraph b(hypergraph_from_json(doc.at("hypergraph")));
            LemmaOptions opts = lemma_options_of(o);
            opts.seed = doc.value("rng_seed", o.seed);
            result = verify_lemmas(b, opts);
        } else if (kind == "tutte") {
            result = crosscheck_specialization(graph_from_json(doc.at("graph")), limits_of(o));
        } else {
            throw Error(ErrorCode::kMalformed, "malformed document: unknown counterexample kind '" + kind + "'");
        }
        result.details()["replayed"] = kind;
        return emit_report(result, report);
    });
}

}  // extern "C"
