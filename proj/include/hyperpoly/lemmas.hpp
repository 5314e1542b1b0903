#pragma once

#include <cstddef>
#include <cstdint>

#include "hyperpoly/activity.hpp"
#include "hyperpoly/hypergraph.hpp"
#include "hyperpoly/hypertree.hpp"
#include "hyperpoly/report.hpp"

namespace hyperpoly {

struct LemmaOptions {
    EngineLimits limits;
    /// Activity stability runs over every ordering up to this many
    /// hyperedges, and over `ordering_samples` seeded random orderings above.
    std::size_t max_all_order_edges = 5;
    std::size_t ordering_samples = 50;
    std::uint64_t seed = 0;
};

/// Exhaustive property checks on one connected instance:
///  - both hypertree checkers agree on every candidate map with
///    sum f = |V|-1 and 0 <= f(e) <= d(e)-1, and realizations re-validate;
///  - both transfer checkers agree on every (hypertree, move);
///  - mu is monotone and submodular with mu(E) = |V|-1;
///  - dominance by known hypertrees implies being a hypertree;
///  - transfers compose (e1->e2 and e2->e3 give e1->e3);
///  - tight sets are closed under union and intersection;
///  - a non-tight nonempty proper subset receives valence from outside;
///  - the four pair-shift implications for hypertrees differing on two
///    hyperedges, and activity stability above both of them;
///  - enlarging a set of receivers (senders) keeps one;
///  - closure under transfers from any seed reproduces B_H.
/// Throws kBudgetExceeded above limits.exhaustive_bound hyperedges.
Report verify_lemmas(const BipartiteGraph& b, const LemmaOptions& options = {});

}  // namespace hyperpoly
