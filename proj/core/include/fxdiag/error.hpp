#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fxdiag {

enum class ErrorKind {
    InvalidInput,       // malformed or out-of-contract data
    InsufficientData,   // sample too short for the estimator
    Degenerate,         // zero variance / zero spacing
    Domain,             // argument outside the mathematical domain
    Tie,                // adjacent equal values break the continuity assumption
    InsufficientExtrema,
    InsufficientScales,
    Infeasible,         // moments outside the NIG-attainable region
    GaussianLimit,      // NIG fit degenerates to the normal law
    Configuration,
    Numeric,            // quadrature or arithmetic failure
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit code for an error surfacing at the CLI: 1 data, 2 configuration, 3 numeric.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace fxdiag
