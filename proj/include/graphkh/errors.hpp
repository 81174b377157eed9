#pragma once

#include <stdexcept>
#include <string>

namespace graphkh {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension/shape mismatch in a linear-algebra operation.
struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error(what) {}
};

/// A Reidemeister move was requested at a site where its precondition fails.
struct MoveError : Error {
    explicit MoveError(const std::string& what) : Error(what) {}
};

/// Input exceeds a configured resource cap (vertex counts, state enumeration).
struct CapacityError : Error {
    explicit CapacityError(const std::string& what) : Error(what) {}
};

/// Malformed input text (graph files, move specs). Carries a 1-based line number
/// when the source is a line-oriented file; 0 means "not line addressable".
struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// An internal consistency check failed (for example a differential whose
/// square is nonzero). Indicates a bug, not bad user input.
struct IntegrityError : Error {
    explicit IntegrityError(const std::string& what) : Error(what) {}
};

}  // namespace graphkh
