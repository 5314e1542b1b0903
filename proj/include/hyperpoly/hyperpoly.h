#ifndef HYPERPOLY_H
#define HYPERPOLY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HYPERPOLY_BUILDING)
#    define HP_API __declspec(dllexport)
#  else
#    define HP_API __declspec(dllimport)
#  endif
#else
#  define HP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status. On an error status, hp_last_error() holds a
 * message for the calling thread until its next API call. Strings handed
 * out through char** parameters are owned by the caller and released with
 * hp_string_free. */
typedef enum hp_status {
    HP_OK = 0,
    HP_VERIFICATION_FAILED = 1, /* a report was produced and it fails */

    HP_ERR_MALFORMED = 10,
    HP_ERR_DUPLICATE_ID = 11,
    HP_ERR_EMPTY_HYPEREDGE = 12,
    HP_ERR_UNDECLARED_VERTEX = 13,
    HP_ERR_LOOP = 14,
    HP_ERR_UNKNOWN_ID = 15,
    HP_ERR_DOMAIN_MISMATCH = 16,
    HP_ERR_PRECONDITION = 17,
    HP_ERR_NOT_CONNECTED = 18,

    HP_ERR_BUDGET_EXCEEDED = 30,
    HP_ERR_INVARIANT_VIOLATION = 31,

    HP_ERR_INVALID_ARGUMENT = 40,
    HP_ERR_INTERNAL = 50
} hp_status;

typedef enum hp_mode { HP_MODE_ALL = 0, HP_MODE_RANDOM = 1 } hp_mode;

typedef struct hp_options {
    const char* order;         /* comma-separated hyperedge ids; NULL or "" = document order */
    hp_mode mode;              /* order-independence: every ordering or seeded samples */
    uint64_t samples;          /* orderings drawn in HP_MODE_RANDOM */
    uint64_t seed;
    uint32_t jobs;             /* worker threads, at least 1 */
    uint64_t tree_budget;      /* step cap for spanning-tree enumeration */
    uint64_t exhaustive_bound; /* largest |E| for subset-enumerating checks */
    uint64_t max_all_edges;    /* largest |E| accepted by HP_MODE_ALL */
} hp_options;

typedef struct hp_hypergraph hp_hypergraph;
typedef struct hp_graph hp_graph;

HP_API void hp_options_init(hp_options* options);
HP_API const char* hp_last_error(void);
HP_API const char* hp_status_name(hp_status status);
HP_API const char* hp_version(void);
HP_API void hp_string_free(char* text);

/* Hypergraph documents: {"vertices": [...], "hyperedges": [{"id", "vertices"}]}. */
HP_API hp_status hp_hypergraph_parse(const char* text, hp_hypergraph** out);
HP_API void hp_hypergraph_free(hp_hypergraph* h);
HP_API size_t hp_hypergraph_vertex_count(const hp_hypergraph* h);
HP_API size_t hp_hypergraph_hyperedge_count(const hp_hypergraph* h);
HP_API hp_status hp_hypergraph_to_json(const hp_hypergraph* h, char** out);
/* JSON array of warnings, e.g. size-1 hyperedges. */
HP_API hp_status hp_hypergraph_diagnostics(const hp_hypergraph* h, char** out);

/* {"count": N, "hypertrees": [{id: value, ...}, ...]} in lexicographic order. */
HP_API hp_status hp_hypertrees(const hp_hypergraph* h, const hp_options* options, char** out);
/* Tests a map {id: value}. On success *is_hypertree is 0 or 1; if witness is
 * non-NULL and the map is a hypertree it receives [[vertex, hyperedge], ...]. */
HP_API hp_status hp_hypertree_check(const hp_hypergraph* h, const char* hypertree_json, int* is_hypertree,
                                    char** witness);

/* {"coefficients": [c0, c1, ...]} under options->order. */
HP_API hp_status hp_interior_polynomial(const hp_hypergraph* h, const hp_options* options, char** out);
HP_API hp_status hp_exterior_polynomial(const hp_hypergraph* h, const hp_options* options, char** out);

/* Verifiers write a report and return HP_OK or HP_VERIFICATION_FAILED. */
HP_API hp_status hp_verify_order_independence(const hp_hypergraph* h, const hp_options* options, char** report);
HP_API hp_status hp_verify_lemmas(const hp_hypergraph* h, const hp_options* options, char** report);
/* rank is 1-based: positions rank and rank+1 of options->order are swapped. */
HP_API hp_status hp_verify_transposition(const hp_hypergraph* h, const hp_options* options, size_t rank,
                                         char** report);

/* Graph documents: {"vertices": [...], "edges": [{"id", "ends": [a, b]}]}. */
HP_API hp_status hp_graph_parse(const char* text, hp_graph** out);
HP_API void hp_graph_free(hp_graph* g);
HP_API hp_status hp_graph_to_hypergraph(const hp_graph* g, hp_hypergraph** out);
/* {"coeffs": [[i, j, t_ij], ...]} by deletion-contraction. */
HP_API hp_status hp_tutte_polynomial(const hp_graph* g, char** out);
HP_API hp_status hp_crosscheck_tutte(const hp_graph* g, const hp_options* options, char** report);

/* {"seed", "count", "max_vertices", "max_hyperedges", "instances": [...]}. */
HP_API hp_status hp_generate_corpus(uint64_t seed, size_t count, size_t max_vertices, size_t max_hyperedges,
                                    char** out);

/* Re-runs the check recorded in a counterexample document. Returns
 * HP_VERIFICATION_FAILED when the failure reproduces. */
HP_API hp_status hp_replay(const char* counterexample, const hp_options* options, char** report);

#ifdef __cplusplus
}
#endif

#endif
