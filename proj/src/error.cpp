#include "weyltail/error.hpp"

namespace wt {

const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::UnboundedSupport: return "UnboundedSupport";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::SlowConvergence: return "SlowConvergence";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::OutsideFundamentalDomain: return "OutsideFundamentalDomain";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    }
    return "Unknown";
}

bool is_validation_error(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidInterval:
    case ErrorKind::ParameterOutOfRange:
    case ErrorKind::OutsideFundamentalDomain:
    case ErrorKind::PreconditionViolated:
    case ErrorKind::DegenerateMatrix:
        return true;
    default:
        return false;
    }
}

} // namespace wt
