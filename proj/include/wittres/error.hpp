#pragma once

#include <stdexcept>
#include <string>

namespace wittres {

// Every failure the library can produce is one of these typed errors.
// Code never silently substitutes a wrong value: anything that cannot be
// computed exactly in the requested ring throws.
enum class errc {
    type_mismatch,            // operands live over different coefficient rings
    not_invertible,           // inverse requested of a non-unit
    not_quasi_homogeneous,    // Euler relation fails for the given weights
    not_isolated,             // Jacobian ideal has infinite staircase
    integrality_violation,    // a division that must be exact over Z is not
    denominator_not_invertible, // a forced denominator is divisible by p
    precision_loss,           // truncation order too small to hold any result
    inverse_system_violation, // restriction compatibility broken
    internal_inconsistency,   // a structural invariant failed; indicates a bug
    unsupported,              // operation not defined for this ring or input
    parse_error,              // polynomial expression syntax error
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::type_mismatch: return "TypeMismatch";
    case errc::not_invertible: return "NotInvertible";
    case errc::not_quasi_homogeneous: return "NotQuasiHomogeneous";
    case errc::not_isolated: return "NotIsolated";
    case errc::integrality_violation: return "IntegralityViolation";
    case errc::denominator_not_invertible: return "DenominatorNotInvertible";
    case errc::precision_loss: return "PrecisionLoss";
    case errc::inverse_system_violation: return "InverseSystemViolation";
    case errc::internal_inconsistency: return "InternalInconsistency";
    case errc::unsupported: return "Unsupported";
    case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

// Invariant check for conditions that are theorems, not input validation.
inline void require_internal(bool ok, const std::string& what) {
    if (!ok) fail(errc::internal_inconsistency, what);
}

} // namespace wittres
