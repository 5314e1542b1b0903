#include "hyperpoly/report.hpp"

#include <algorithm>

namespace hyperpoly {

CheckTally& Report::tally(std::string_view check) {
    auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckTally& t) { return t.name == check; });
    if (it != checks_.end()) return *it;
    checks_.push_back({std::string(check)});
    return checks_.back();
}

const CheckTally* Report::find(std::string_view check) const {
    auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckTally& t) { return t.name == check; });
    return it == checks_.end() ? nullptr : &*it;
}

void Report::fail(std::string_view check, nlohmann::json counterexample) {
    tally(check).failed++;
    if (failures_++ == 0) {
        counterexample["check"] = std::string(check);
        counterexample_ = std::move(counterexample);
    }
}

void Report::implication(std::string_view check, bool hypothesis, bool conclusion,
                         const std::function<nlohmann::json()>& witness) {
    if (!hypothesis) {
        vacuous(check);
    } else if (conclusion) {
        pass(check);
    } else {
        fail(check, witness());
    }
}

void Report::expect(std::string_view check, bool ok, const std::function<nlohmann::json()>& witness) {
    if (ok) {
        pass(check);
    } else {
        fail(check, witness());
    }
}

void Report::merge(const Report& other) {
    for (const auto& t : other.checks_) {
        auto& mine = tally(t.name);
        mine.passed += t.passed;
        mine.failed += t.failed;
        mine.vacuous += t.vacuous;
    }
    if (!counterexample_ && other.counterexample_) counterexample_ = other.counterexample_;
    failures_ += other.failures_;
}

nlohmann::json Report::to_json() const {
    nlohmann::json doc = details_;
    doc["status"] = passed() ? "pass" : "fail";
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& t : checks_) {
        checks.push_back({{"name", t.name}, {"passed", t.passed}, {"failed", t.failed}, {"vacuous", t.vacuous}});
    }
    doc["checks"] = std::move(checks);
    if (counterexample_) doc["counterexample"] = *counterexample_;
    if (seed_) doc["seed"] = *seed_;
    return doc;
}

}  // namespace hyperpoly
