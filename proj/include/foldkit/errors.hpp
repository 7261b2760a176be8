#pragma once

#include <stdexcept>
#include <string>

namespace foldkit {

// Base for all toolkit errors so callers can catch one type at the CLI edge.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed surface syntax (programs, CSV, schema sidecars). Carries 1-based
// line/column where known; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
    }
    std::size_t line_;
    std::size_t column_;
};

// Schema invariant violations: duplicate columns, non-binary labels,
// name collisions, bad bin edges.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& what) : Error(what) {}
};

// File or process I/O failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace foldkit
