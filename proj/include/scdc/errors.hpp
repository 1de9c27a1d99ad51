#pragma once

#include <stdexcept>
#include <string>

namespace scdc {

// Parameter out of its documented domain, or mismatched interface widths.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed serialized input (self-delimiting prefix, config file, codeword file).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Declared step/enumeration budget exceeded.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoPrimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// certify() measured a success rate below its validity threshold.
struct CertifyError : std::runtime_error {
    CertifyError(const std::string& msg, double rate)
        : std::runtime_error(msg), measured_rate(rate) {}
    double measured_rate;
};

}  // namespace scdc
