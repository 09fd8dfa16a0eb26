#pragma once

#include <stdexcept>
#include <string>

namespace afg {

enum class ErrorCode {
    Config,            // invalid specification or configuration value
    Scope,             // scope references unknown identifiers or is empty
    Intervention,      // plan touches unknown or duplicated factors
    Lookup,            // unknown result/key
    Comparison,        // states not comparable (mismatched layout or time order)
    InsufficientData,  // a statistic was requested before any supporting data
    NoPlan,            // no candidate plan can be proposed
    Selection,         // plan selection over an empty candidate set
    NoKey,             // recording with no difference to key on
    Misuse,            // operation called outside its contract
    Statistics,        // too few samples for the requested statistic
    DegenerateTest,    // both samples have zero variance
    Inconsistent,      // observations admit no consistent hypothesis
    Remote,            // remote backend unreachable after retries
    Io,                // file read/write failure
    Parse,             // malformed input text
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace afg
