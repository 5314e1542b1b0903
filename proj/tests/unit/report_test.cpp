#include <doctest.h>

#include "hyperpoly/report.hpp"

using namespace hyperpoly;

TEST_CASE("report tallies and first counterexample") {
    Report r;
    r.pass("a");
    r.implication("b", false, false, [] { return nlohmann::json{{"x", 1}}; });
    r.implication("b", true, true, [] { return nlohmann::json{{"x", 2}}; });
    CHECK(r.passed());
    r.expect("a", false, [] { return nlohmann::json{{"x", 3}}; });
    r.expect("a", false, [] { return nlohmann::json{{"x", 4}}; });
    CHECK_FALSE(r.passed());
    CHECK(r.failures() == 2);
    REQUIRE(r.counterexample().has_value());
    CHECK((*r.counterexample())["x"] == 3);
    CHECK((*r.counterexample())["check"] == "a");
    CHECK(r.find("b")->vacuous == 1);
    CHECK(r.find("b")->passed == 1);
    const auto doc = r.to_json();
    CHECK(doc["status"] == "fail");
    CHECK(doc["checks"][0]["name"] == "a");
    CHECK(doc["checks"][0]["failed"] == 2);
}

TEST_CASE("merging reports") {
    Report a, b;
    a.pass("x");
    b.pass("x");
    b.vacuous("y");
    b.set_seed(9);
    a.merge(b);
    CHECK(a.find("x")->passed == 2);
    CHECK(a.find("y")->vacuous == 1);
    CHECK(a.passed());
}
