#pragma once

#include <stdexcept>
#include <string>

namespace hyperpoly {

enum class ErrorCode {
    kMalformed,
    kDuplicateId,
    kEmptyHyperedge,
    kUndeclaredVertex,
    kLoop,
    kUnknownId,
    kDomainMismatch,
    kPrecondition,
    kNotConnected,
    kBudgetExceeded,
    kInvariantViolation,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hyperpoly
