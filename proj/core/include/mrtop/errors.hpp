#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrtop {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (non-positive
/// attribute, k larger than the input, unsorted intervals, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The input violates the general-position assumption: duplicate
/// x-intercepts or concurrent sweep events at the same list position.
class GeneralPositionError : public Error {
public:
    GeneralPositionError(const std::string& what, std::vector<std::string> line_ids)
        : Error(what), line_ids_(std::move(line_ids)) {}

    const std::vector<std::string>& line_ids() const noexcept { return line_ids_; }

private:
    std::vector<std::string> line_ids_;
};

/// A query line was produced with a different tau than the index.
class TauMismatchError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Failure while reading a persisted index.
class IndexFormatError : public Error {
public:
    enum class Kind { bad_magic, version_mismatch, truncated, invariant_violation };

    IndexFormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Failure while parsing a CSV relation. Rows are 1-based.
class IngestError : public Error {
public:
    IngestError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

}  // namespace mrtop
