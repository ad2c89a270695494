#include "fxdiag/error.hpp"

namespace fxdiag {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::InsufficientData: return "insufficient-data";
        case ErrorKind::Degenerate: return "degenerate";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Tie: return "tie";
        case ErrorKind::InsufficientExtrema: return "insufficient-extrema";
        case ErrorKind::InsufficientScales: return "insufficient-scales";
        case ErrorKind::Infeasible: return "infeasible-moments";
        case ErrorKind::GaussianLimit: return "gaussian-limit";
        case ErrorKind::Configuration: return "configuration";
        case ErrorKind::Numeric: return "numeric";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Configuration: return 2;
        case ErrorKind::Numeric: return 3;
        default: return 1;
    }
}

}  // namespace fxdiag
