#ifndef SPANFORGE_ERRORS_HPP
#define SPANFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spanforge {

enum class ErrorCode {
    NotComposable,
    FeetMismatch,
    NotPaired,
    NoFPullback,
    NotSpanTight,
    BudgetExceeded,
    CapExceeded,
    HomSetTooLarge,
    ApexExceedsCap,
    NotAPartialOrder,
    NotAGroup,
    NotAFunctor,
    PreconditionFailed,
    DanglingReference,
    ParseError,
    InvalidInput,
};

const char* error_code_name(ErrorCode code);

/// Thrown by operations whose preconditions fail or whose search budget is
/// exhausted. Validation of raw category/functor descriptions does not throw;
/// it returns a ValidationReport instead.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace spanforge

#endif
