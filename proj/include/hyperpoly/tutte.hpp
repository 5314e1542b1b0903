#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperpoly/activity.hpp"
#include "hyperpoly/hypergraph.hpp"
#include "hyperpoly/report.hpp"

namespace hyperpoly {

/// Bivariate polynomial sum t_ij x^i y^j with integer coefficients.
class TuttePolynomial {
public:
    std::int64_t coefficient(std::size_t i, std::size_t j) const;
    void add(std::size_t i, std::size_t j, std::int64_t c);
    void add(const TuttePolynomial& other);
    TuttePolynomial shifted(std::size_t di, std::size_t dj) const;

    /// T(1, 1): the spanning-tree count for a connected graph.
    std::int64_t at_one_one() const;
    /// T(x, 1) as a polynomial in x.
    IntPolynomial at_y_one() const;
    /// T(1, y) as a polynomial in y.
    IntPolynomial at_x_one() const;

    const std::map<std::pair<std::size_t, std::size_t>, std::int64_t>& terms() const noexcept { return terms_; }

    /// {"coeffs": [[i, j, t_ij], ...]} sorted by (i, j).
    nlohmann::json to_json() const;
    std::string to_string() const;

    friend bool operator==(const TuttePolynomial&, const TuttePolynomial&) = default;

private:
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> terms_;
};

/// Classical recurrence: T = x T(G/e) for a bridge, y T(G-e) for a loop,
/// T(G-e) + T(G/e) otherwise. Memoized on a canonical relabelling of the
/// multigraph. Throws kLoop if the input has a loop and kNotConnected if it
/// is disconnected.
TuttePolynomial tutte_deletion_contraction(const Multigraph& g);

/// Sum over spanning trees of x^(internal activity) y^(external activity),
/// an edge being active when it is the smallest in its fundamental cut
/// (tree edges) or fundamental cycle (non-tree edges). `order` lists edge
/// indices from smallest to largest.
TuttePolynomial tutte_by_activities(const Multigraph& g, const std::vector<std::size_t>& order);
TuttePolynomial tutte_by_activities(const Multigraph& g);

/// Compares I and X of the graph's hypergraph against the coefficient
/// reversals of T(x,1) in degree |V|-1 and of T(1,y) in degree |E|-|V|+1,
/// and the two Tutte routes against each other.
Report crosscheck_specialization(const Multigraph& g, const EngineLimits& limits = {});

}  // namespace hyperpoly
