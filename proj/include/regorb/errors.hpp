#pragma once

#include <stdexcept>
#include <string>

namespace regorb {

enum class ErrorKind {
    NonPrimeModulus,
    ReduciblePolynomial,
    ZeroPolynomial,
    NotInvertible,
    SingularGenerator,
    FieldMismatch,
    ParseError,
    CapExceeded,
    SpaceCapExceeded,
    DivisibilityViolation,
    InconsistentMenuEntry,
    ExcludedCase,
    ExcludedPair,
    ExcludedType,
    OutOfRange,
    DefiningCharacteristic,
    MissingEvidence,
    NeverFails,
    InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SingularGenerator: return "SingularGenerator";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::SpaceCapExceeded: return "SpaceCapExceeded";
    case ErrorKind::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorKind::InconsistentMenuEntry: return "InconsistentMenuEntry";
    case ErrorKind::ExcludedCase: return "ExcludedCase";
    case ErrorKind::ExcludedPair: return "ExcludedPair";
    case ErrorKind::ExcludedType: return "ExcludedType";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DefiningCharacteristic: return "DefiningCharacteristic";
    case ErrorKind::MissingEvidence: return "MissingEvidence";
    case ErrorKind::NeverFails: return "NeverFails";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/**
 * @brief Process exit code for an error kind.
 *
 * Input problems map to 10-19, resource caps to 20-29 and mathematical
 * precondition failures to 30-39. Code 2 is reserved for runs whose only
 * outcome is an inconclusive certificate.
 */
inline int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError: return 10;
    case ErrorKind::FieldMismatch: return 11;
    case ErrorKind::SingularGenerator: return 12;
    case ErrorKind::NonPrimeModulus: return 13;
    case ErrorKind::ReduciblePolynomial: return 14;
    case ErrorKind::InvalidArgument: return 15;
    case ErrorKind::CapExceeded: return 20;
    case ErrorKind::SpaceCapExceeded: return 21;
    case ErrorKind::ZeroPolynomial: return 30;
    case ErrorKind::NotInvertible: return 31;
    case ErrorKind::DivisibilityViolation: return 32;
    case ErrorKind::InconsistentMenuEntry: return 33;
    case ErrorKind::ExcludedCase: return 34;
    case ErrorKind::ExcludedPair: return 35;
    case ErrorKind::ExcludedType: return 36;
    case ErrorKind::OutOfRange: return 37;
    case ErrorKind::DefiningCharacteristic: return 38;
    case ErrorKind::MissingEvidence: return 39;
    case ErrorKind::NeverFails: return 39;
    }
    return 1;
}

} // namespace regorb
