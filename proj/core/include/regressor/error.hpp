#pragma once

#include <cstddef>
#include <exception>
#include <string>

namespace regressor {

/// Base class of every error raised by the library. The message can be
/// prefixed with context (e.g. the dataset path) as the error propagates.
class Error : public std::exception {
 public:
  explicit Error(std::string message) : message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }

  void add_context(const std::string& context) {
    message_ = context + ": " + message_;
  }

 private:
  std::string message_;
};

/// Malformed arguments or data (length mismatch, non-finite values, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Term count or allocation size would exceed what can be represented.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A design-matrix cell overflowed to a non-finite value.
class ConditioningError : public Error {
 public:
  ConditioningError(std::size_t row, std::size_t column, std::size_t variable);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t variable() const noexcept { return variable_; }

 private:
  std::size_t row_;
  std::size_t column_;
  std::size_t variable_;
};

/// QR found a numerically dependent column.
class RankDeficiencyError : public Error {
 public:
  explicit RankDeficiencyError(std::size_t column);

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// The normal-equations matrix could not be inverted.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A statistic (R², correlation) is undefined for constant input.
class UndefinedStatisticError : public Error {
 public:
  using Error::Error;
};

class UnsupportedExportError : public Error {
 public:
  using Error::Error;
};

/// CSV content violates the input contract. Row and column are 1-based;
/// zero means "not applicable".
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t row = 0, std::size_t column = 0);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class EmptySelectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace regressor
