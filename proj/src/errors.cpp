#include "bqsos/errors.hpp"

namespace bqsos {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquarefree: return "NotSquarefree";
        case ErrorCode::EqualGenerators: return "EqualGenerators";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::NotIntegral: return "NotIntegral";
        case ErrorCode::NotFullRank: return "NotFullRank";
        case ErrorCode::NotClosedWithinBudget: return "NotClosedWithinBudget";
        case ErrorCode::SquareN: return "SquareN";
        case ErrorCode::BadCongruence: return "BadCongruence";
        case ErrorCode::NotTotallyNonnegative: return "NotTotallyNonnegative";
        case ErrorCode::CapTooSmall: return "CapTooSmall";
        case ErrorCode::FamilyNotApplicable: return "FamilyNotApplicable";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::ForeignRadical: return "ForeignRadical";
        case ErrorCode::CacheMismatch: return "CacheMismatch";
        case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

}  // namespace bqsos
