#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kplot {

/// Bad user-supplied input (files, parameters, sample contents).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A CSV cell that could not be read as a finite decimal number.
class CsvParseError : public InputError {
public:
    CsvParseError(std::size_t row, std::size_t column, const std::string& what)
        : InputError("row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what),
          row_(row),
          column_(column) {}

    /// 1-based line number in the file.
    std::size_t row() const noexcept { return row_; }
    /// 1-based column number.
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// A numerical procedure produced an inconsistent or invalid result.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kplot
