#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gatagger {

enum class ErrorCode {
    invalid_argument,
    parse,
    capacity,
};

/// Exception type thrown by the core library. The C API maps `code()` onto
/// its status values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with a 1-based source location (column 0 when the error
/// concerns the whole line).
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorCode::parse, format(line, column, message)),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(std::size_t line, std::size_t column,
                              const std::string& message) {
        std::string out = "line " + std::to_string(line);
        if (column != 0) out += ", column " + std::to_string(column);
        return out + ": " + message;
    }

    std::size_t line_;
    std::size_t column_;
};

[[noreturn]] inline void throw_invalid(const std::string& message) {
    throw Error(ErrorCode::invalid_argument, message);
}

} // namespace gatagger
