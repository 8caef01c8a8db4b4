#pragma once

#include <stdexcept>
#include <string>

namespace flagcodes {

// Error codes cover every failure the library reports. CLI exit codes are
// derived from these: IoError maps to 2, everything else to 1.
enum class Errc {
    NonPrimeCharacteristic,
    ReducibleModulus,
    DegreeMismatch,
    ShapeMismatch,
    SingularMatrix,
    DependentBasis,
    DegreeTooLarge,
    AmbientMismatch,
    TypeMismatch,
    NotFullFlag,
    TooLarge,
    ParameterOutOfRange,
    ParameterMismatch,
    NotAGroup,
    EmptyDistance,
    EmptyCode,
    CapacityExceeded,
    RetryLimitExceeded,
    LengthMismatch,
    RunTooLong,
    InconsistentInput,
    FieldMismatch,
    DivisionByZero,
    ParseError,
    IoError,
    Internal,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case Errc::ReducibleModulus: return "ReducibleModulus";
        case Errc::DegreeMismatch: return "DegreeMismatch";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::SingularMatrix: return "SingularMatrix";
        case Errc::DependentBasis: return "DependentBasis";
        case Errc::DegreeTooLarge: return "DegreeTooLarge";
        case Errc::AmbientMismatch: return "AmbientMismatch";
        case Errc::TypeMismatch: return "TypeMismatch";
        case Errc::NotFullFlag: return "NotFullFlag";
        case Errc::TooLarge: return "TooLarge";
        case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
        case Errc::ParameterMismatch: return "ParameterMismatch";
        case Errc::NotAGroup: return "NotAGroup";
        case Errc::EmptyDistance: return "EmptyDistance";
        case Errc::EmptyCode: return "EmptyCode";
        case Errc::CapacityExceeded: return "CapacityExceeded";
        case Errc::RetryLimitExceeded: return "RetryLimitExceeded";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::RunTooLong: return "RunTooLong";
        case Errc::InconsistentInput: return "InconsistentInput";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::ParseError: return "ParseError";
        case Errc::IoError: return "IoError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace flagcodes
