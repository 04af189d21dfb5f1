#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace konus {

/// Malformed or invalid input data. Carries an optional source location.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}

    InputError(const std::string& what, std::string source, std::size_t row, std::size_t col)
        : std::runtime_error(source + ":" + std::to_string(row) + ":" + std::to_string(col) + ": " + what),
          source_(std::move(source)),
          row_(row),
          col_(col) {}

    const std::string& source() const noexcept { return source_; }
    std::optional<std::size_t> row() const noexcept { return row_; }
    std::optional<std::size_t> col() const noexcept { return col_; }

private:
    std::string source_;
    std::optional<std::size_t> row_;
    std::optional<std::size_t> col_;
};

/// Raised by exhaustive test oracles when the enumeration exceeds its budget.
class OracleTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace konus
