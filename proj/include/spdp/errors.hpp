#pragma once

#include <stdexcept>
#include <string>

namespace spdp {

// Thrown when an operation would materialize more data than its cap allows.
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

// A certificate failed its own verification. Signals an implementation bug,
// never a legal state.
struct CertificateError : std::runtime_error {
    explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

// Certificate rows/columns could not be located in the target matrix.
struct CertificateMismatch : CertificateError {
    explicit CertificateMismatch(const std::string& what) : CertificateError(what) {}
};

// A block-local linear map was singular.
struct InvalidTransform : std::domain_error {
    explicit InvalidTransform(const std::string& what) : std::domain_error(what) {}
};

// A statistic was requested over an empty record set.
struct UndefinedScore : std::runtime_error {
    explicit UndefinedScore(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spdp
