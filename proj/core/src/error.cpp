#include "regressor/error.hpp"

namespace regressor {

ConditioningError::ConditioningError(std::size_t row, std::size_t column,
                                     std::size_t variable)
    : Error("non-finite design matrix entry at row " + std::to_string(row) +
            ", column " + std::to_string(column) + " (variable " +
            std::to_string(variable) + " overflowed)"),
      row_(row),
      column_(column),
      variable_(variable) {}

RankDeficiencyError::RankDeficiencyError(std::size_t column)
    : Error("design matrix is rank deficient: column " +
            std::to_string(column) +
            " is numerically dependent on the preceding columns"),
      column_(column) {}

ParseError::ParseError(std::string message, std::size_t row,
                       std::size_t column)
    : Error(std::move(message)), row_(row), column_(column) {}

}  // namespace regressor
