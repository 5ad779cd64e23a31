#include "mazemate/errors.hpp"

namespace mazemate {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Syntax: return "SYNTAX";
        case ErrorCode::Schema: return "SCHEMA";
        case ErrorCode::Limit: return "LIMIT";
        case ErrorCode::Unsolvable: return "UNSOLVABLE";
        case ErrorCode::StaleSession: return "STALE_SESSION";
        case ErrorCode::NotFound: return "NOT_FOUND";
        case ErrorCode::Precondition: return "PRECONDITION";
        case ErrorCode::PatchFailure: return "PATCH_FAILURE";
        case ErrorCode::LlmUnavailable: return "LLM_UNAVAILABLE";
    }
    return "UNKNOWN";
}

namespace {

std::string with_position(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    return message + " at line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : Error(ErrorCode::Syntax, with_position(message, line, column)), line_(line), column_(column) {}

}  // namespace mazemate
