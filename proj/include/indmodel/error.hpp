#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace indmodel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic left the int64 range.
class OverflowError : public Error {
public:
    using Error::Error;
};

class ArityError : public Error {
public:
    using Error::Error;
};

/// A base set materialized to nothing at the working cap.
class EmptyBaseError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A constructor has no recipe for the requested (base, structure, arity).
class RefusedError : public Error {
public:
    using Error::Error;
};

/// Model / relation document does not match its schema.
///
/// `field` is a JSON pointer to the offending value ("" for the root);
/// `line` and `column` are 1-based and 0 when unknown.
class SchemaError : public Error {
public:
    SchemaError(std::string field, std::string message, std::size_t line = 0,
                std::size_t column = 0, std::string source = "")
        : Error(compose(source, field, message, line, column)), field_(std::move(field)),
          message_(std::move(message)), line_(line), column_(column), source_(std::move(source)) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

    /// Same diagnostic, attributed to a file.
    SchemaError in_file(const std::string& source) const {
        return SchemaError(field_, message_, line_, column_, source);
    }

private:
    static std::string compose(const std::string& source, const std::string& field,
                               const std::string& message, std::size_t line, std::size_t column) {
        std::string out = source.empty() ? "schema error" : source + ": schema error";
        if (line != 0) {
            out += " at line " + std::to_string(line) + ", column " + std::to_string(column);
        }
        if (!field.empty()) {
            out += " in field '" + field + "'";
        }
        return out + ": " + message;
    }

    std::string field_;
    std::string message_;
    std::size_t line_;
    std::size_t column_;
    std::string source_;
};

}  // namespace indmodel
