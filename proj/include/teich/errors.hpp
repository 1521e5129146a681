#pragma once

#include <stdexcept>
#include <string>

namespace teich {

/// Failure classes. Each maps onto one CLI exit code.
enum class ErrorKind {
    InvalidInput,  ///< malformed data or configuration (exit 2)
    Hypothesis,    ///< inputs do not fill / matrix not primitive (exit 3)
    Convergence,   ///< numerical iteration did not converge (exit 4)
    Certificate    ///< a certified identity or inequality failed (exit 5)
};

inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidInput: return 2;
    case ErrorKind::Hypothesis: return 3;
    case ErrorKind::Convergence: return 4;
    case ErrorKind::Certificate: return 5;
    }
    return 1;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

struct NotFilling : Error {
    explicit NotFilling(const std::string& what) : Error(ErrorKind::Hypothesis, "not filling: " + what) {}
};

struct NotPrimitive : Error {
    explicit NotPrimitive(const std::string& what) : Error(ErrorKind::Hypothesis, "not primitive: " + what) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(ErrorKind::Convergence, "no convergence: " + what) {}
};

struct RayMismatch : Error {
    explicit RayMismatch(const std::string& what) : Error(ErrorKind::Certificate, "ray mismatch: " + what) {}
};

struct WalshMismatch : Error {
    explicit WalshMismatch(const std::string& what) : Error(ErrorKind::Certificate, "Walsh mismatch: " + what) {}
};

struct CertificationViolation : Error {
    explicit CertificationViolation(const std::string& what)
        : Error(ErrorKind::Certificate, "certification violation: " + what) {}
};

} // namespace teich
