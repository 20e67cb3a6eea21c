#pragma once

#include <stdexcept>
#include <string>

namespace rwtc {

// Root of all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violation of a value invariant at construction time (Pos < 1, bad decimal
// literal, init heap above max heap, ...).
class ValueError : public Error {
public:
    explicit ValueError(const std::string& msg) : Error(msg) {}
};

// A raw string could not be lifted to its base type.
class LiftError : public Error {
public:
    LiftError(std::string raw, std::string expected, std::string reason)
        : Error("cannot lift \"" + raw + "\" to " + expected + ": " + reason),
          raw_value(std::move(raw)),
          expected_tipe(std::move(expected)),
          reason(std::move(reason)) {}

    std::string raw_value;
    std::string expected_tipe;
    std::string reason;
};

// Syntax error in constraint-expression source, with byte offset.
class ExprParseError : public Error {
public:
    ExprParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}

    std::size_t position;
};

// Ill-typed constraint expression; message names the offending node.
class ExprTypeError : public Error {
public:
    explicit ExprTypeError(const std::string& msg) : Error(msg) {}
};

// Reference to a field or environment parameter that is not declared.
class UnknownRefError : public ExprTypeError {
public:
    explicit UnknownRefError(const std::string& msg) : ExprTypeError(msg) {}
};

// Runtime evaluation failure of a type-checked expression.
class EvalError : public Error {
public:
    enum class Kind { DivByZero, UnwrapNone, UnresolvedFieldRef, BadOperand };

    EvalError(Kind k, const std::string& msg) : Error(msg), kind(k) {}

    Kind kind;
};

// Malformed manifest, duplicate field, dangling reference, ... at schema load.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg) : Error(msg) {}
};

// Unknown field name passed to a schema lookup.
class UnknownFieldError : public SchemaError {
public:
    explicit UnknownFieldError(const std::string& name)
        : SchemaError("unknown field: " + name) {}
};

// Malformed site file or environment descriptor.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// I/O failure (missing file, unreadable path).
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace rwtc
