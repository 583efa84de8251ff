#pragma once

#include <stdexcept>
#include <string>

namespace wt {

enum class ErrorKind {
    DegenerateMatrix,
    NonConvergence,
    InvalidInterval,
    UnboundedSupport,
    QuadratureFailure,
    SlowConvergence,
    ParameterOutOfRange,
    OutsideFundamentalDomain,
    PreconditionViolated,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Validation-type errors map to CLI exit code 2, numerical ones to 1.
bool is_validation_error(ErrorKind k);

} // namespace wt
