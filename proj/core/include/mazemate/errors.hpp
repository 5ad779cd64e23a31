#pragma once

#include <stdexcept>
#include <string>

namespace mazemate {

// Machine-readable error classes. The gateway maps each one onto an API code.
enum class ErrorCode {
    Syntax,
    Schema,
    Limit,
    Unsolvable,
    StaleSession,
    NotFound,
    Precondition,
    PatchFailure,
    LlmUnavailable,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, int line = 0, int column = 0);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& message) : Error(ErrorCode::Schema, message) {}
};

class LimitError : public Error {
public:
    explicit LimitError(const std::string& message) : Error(ErrorCode::Limit, message) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& message)
        : Error(ErrorCode::Precondition, message) {}
};

class PatchFailure : public Error {
public:
    explicit PatchFailure(const std::string& message) : Error(ErrorCode::PatchFailure, message) {}
};

class StaleSessionError : public Error {
public:
    explicit StaleSessionError(const std::string& message)
        : Error(ErrorCode::StaleSession, message) {}
};

class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& message) : Error(ErrorCode::NotFound, message) {}
};

}  // namespace mazemate
