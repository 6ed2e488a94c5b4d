#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bqsos {

enum class ErrorCode {
    NotSquarefree,
    EqualGenerators,
    OutOfRange,
    FieldMismatch,
    NotRepresentable,
    NotIntegral,
    NotFullRank,
    NotClosedWithinBudget,
    SquareN,
    BadCongruence,
    NotTotallyNonnegative,
    CapTooSmall,
    FamilyNotApplicable,
    BudgetExceeded,
    SyntaxError,
    ForeignRadical,
    CacheMismatch,
    Overflow,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Parse/semantic failure in an element expression; position is a 0-based offset into the source.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t position, const std::string& what)
        : Error(code, what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace bqsos
