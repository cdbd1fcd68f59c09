#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "regressor/matrix.hpp"

namespace regressor {

/// A parsed regression table: the response in the first CSV column and the
/// independent variables in the rest.
struct Dataset {
  std::vector<double> y;
  Matrix x;                        ///< rows × variables
  std::vector<std::string> names;  ///< one label per variable
  std::string response_name = "Y";
  std::string source;

  std::size_t rows() const noexcept { return y.size(); }
  std::size_t variables() const noexcept { return x.cols(); }
};

/// Checks the Dataset invariants (≥1 row, ≥1 variable, finite values,
/// consistent shapes). Throws InvalidInputError.
void validate(const Dataset& data);

}  // namespace regressor

namespace regressor::ingest {

/// Reads a comma-separated, dot-decimal file whose first column is the
/// response. A first row containing any non-numeric cell is taken as the
/// header; otherwise variables are named X1…Xv. LF and CRLF line endings are
/// accepted, blank lines are skipped, and quoting is not supported.
///
/// Errors (ParseError) carry the 1-based file line and column:
///   - an empty cell: "empty value at row R, column C"
///   - a non-numeric or non-finite cell outside the header
///   - a row whose cell count differs from the first row
///   - fewer than two columns, or no data rows
Dataset parse_csv(const std::filesystem::path& path);

/// parse_csv on in-memory text; `source` is recorded in the dataset.
Dataset parse_csv_text(std::string_view text, std::string source = "<memory>");

/// Header row plus one line per sample, values at round-trip precision.
void write_csv(const Dataset& data, std::ostream& out);

/// Pearson product-moment correlation. Throws InvalidInputError for
/// mismatched or too-short input and UndefinedStatisticError when either
/// vector is constant.
double correlation(std::span<const double> a, std::span<const double> b);

/// Keep variables with |r| strictly above the threshold.
struct ThresholdRule {
  double threshold = 0.4;
};
/// Keep the k variables with the largest |r| (ties resolved by column order).
struct TopKRule {
  std::size_t k = 1;
};
using SelectionRule = std::variant<ThresholdRule, TopKRule>;

/// Column subset of `data` chosen by |corr(X_k, Y)|, in the original order.
/// Constant variables are never selected. Throws EmptySelectionError if
/// nothing survives and UndefinedStatisticError if Y is constant.
Dataset select_variables(const Dataset& data, const SelectionRule& rule);

}  // namespace regressor::ingest
