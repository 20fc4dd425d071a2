#pragma once

#include <stdexcept>
#include <string>

namespace uhatlab {

// Every failure mode of the library maps to one of these kinds, so tests
// can assert on the precise condition instead of matching message text.
enum class ErrorKind {
    TypeMismatch,
    UnresolvedReference,
    NegativeExponent,
    UnknownLetter,
    AlphabetTooSmall,
    InvalidDepth,
    UnknownOracle,
    NonTotalTable,
    CarrierMismatch,
    NonSeparableScorePresent,
    InitializationLacksPosition,
    EnumerationBudgetExceeded,
    ZeroGapDegenerate,
    NonBinaryScore,
    MissingPositionInInit,
    NotColumnOnlyForm,
    NonBinaryValues,
    PositionOutOfRange,
    UnknownMonPred,
    EmptyWord,
    ModeFormulaMismatch,
    FreeVariable,
    BudgetExceeded,
    CycleDetected,
    ArityViolation,
    NonInjectiveEncoding,
    SyntaxError,
    StaticCheckError,
    CarrierUnavailable,
    Internal,
};

const char* error_kind_name(ErrorKind k);

class UhatError : public std::runtime_error {
public:
    UhatError(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw UhatError(kind, msg);
}

} // namespace uhatlab
