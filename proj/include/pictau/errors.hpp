#pragma once

#include <stdexcept>
#include <string>

namespace pictau {

/// Malformed input: bad JSON, wrong schema, unparsable rational.
class ParseError : public std::runtime_error
{
    public:
        explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Input that parses but violates a mathematical precondition
/// (duplicate lines, c_1 mismatch, unbounded polytope, ...).
class SemanticError : public std::invalid_argument
{
    public:
        explicit SemanticError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested a numeric answer in a regime where only symbolic data exists
/// (positive-dimensional Pic^0).
class SymbolicOnlyError : public SemanticError
{
    public:
        explicit SymbolicOnlyError(const std::string& what) : SemanticError(what) {}
};

/// A computed invariant failed its own verification. Always a bug or a
/// violated modelling assumption, never a user error.
class InternalError : public std::logic_error
{
    public:
        explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}   // namespace pictau
