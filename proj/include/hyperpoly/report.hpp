#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hyperpoly {

struct CheckTally {
    std::string name;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::uint64_t vacuous = 0;
};

/// Outcome of a verifier. Checks keep first-seen order. Only the first
/// failure is kept as the counterexample; later failures are counted.
class Report {
public:
    void pass(std::string_view check) { tally(check).passed++; }
    void vacuous(std::string_view check) { tally(check).vacuous++; }
    void fail(std::string_view check, nlohmann::json counterexample);

    /// Implications: a false hypothesis is a vacuous pass.
    void implication(std::string_view check, bool hypothesis, bool conclusion,
                     const std::function<nlohmann::json()>& witness);
    void expect(std::string_view check, bool ok, const std::function<nlohmann::json()>& witness);

    void merge(const Report& other);

    bool passed() const noexcept { return failures_ == 0; }
    std::uint64_t failures() const noexcept { return failures_; }
    const std::vector<CheckTally>& checks() const noexcept { return checks_; }
    const CheckTally* find(std::string_view check) const;
    const std::optional<nlohmann::json>& counterexample() const noexcept { return counterexample_; }

    void set_seed(std::uint64_t seed) { seed_ = seed; }
    nlohmann::json& details() { return details_; }
    const nlohmann::json& details() const { return details_; }

    /// {"status", "checks", "counterexample"?, "seed"?, plus any details}.
    nlohmann::json to_json() const;

private:
    CheckTally& tally(std::string_view check);

    std::vector<CheckTally> checks_;
    std::uint64_t failures_ = 0;
    std::optional<nlohmann::json> counterexample_;
    std::optional<std::uint64_t> seed_;
    nlohmann::json details_ = nlohmann::json::object();
};

}  // namespace hyperpoly
