#pragma once

#include <stdexcept>
#include <string>

namespace lrinv {

enum class ErrorKind {
    Domain,        // time outside a schedule's domain, bad index
    Positivity,    // non-positive mass or non-normalizable state
    Regime,        // complex frequencies, unstable or non-definite invariant
    Degenerate,    // closed-form path not applicable
    Conditioning,  // Q too ill-conditioned
    Numerical,     // integrator failure, truncation leakage
    Config         // malformed configuration
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace lrinv
