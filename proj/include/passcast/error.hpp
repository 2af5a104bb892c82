#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace passcast {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AngleUndefined : public Error {
public:
    AngleUndefined() : Error("angle undefined: coincident points") {}
};

class EmptyGroup : public Error {
public:
    EmptyGroup() : Error("minimum distance over an empty group") {}
};

/// Syntax error in log or state text. `line` is 1-based; `offset` is the
/// byte offset inside that line where scanning failed.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t offset, const std::string& what)
        : Error("line " + std::to_string(line) + ", byte " + std::to_string(offset) + ": " + what),
          line_(line), offset_(offset) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t line_;
    std::size_t offset_;
};

/// A syntactically valid show frame that violates Snapshot invariants.
class MalformedFrame : public Error {
public:
    MalformedFrame(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": malformed frame: " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidArchitecture : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    EmptyDataset() : Error("dataset is empty") {}
};

class ModelFormatError : public Error {
public:
    using Error::Error;
};

class DatasetFormatError : public Error {
public:
    using Error::Error;
};

class UnknownPlayer : public Error {
public:
    using Error::Error;
};

}  // namespace passcast
