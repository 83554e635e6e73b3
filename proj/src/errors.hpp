#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commutclass {

/// Thrown when an argument violates an operation's contract. The message
/// names the offending field or parameter.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ParseErrorKind {
    Syntax,
    UnknownIdentifier,
    WrongArity,
};

/// Malformed expression text. Carries the byte offset of the failure.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
          kind_(kind),
          offset_(offset) {}

    ParseErrorKind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

private:
    ParseErrorKind kind_;
    std::size_t offset_;
};

/// Expression evaluation produced a non-finite value. Identifies the node
/// by its byte offset in the original text.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (node at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace commutclass
