#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regressor/basis.hpp"
#include "regressor/ingest.hpp"
#include "regressor/linalg.hpp"

namespace regressor::model {

/// A fitted model: ŷ = Σ_c β_c · ∏_k x_k^{e_k(c)}. Immutable after fit.
struct RegressionModel {
  basis::BasisSpec spec;
  linalg::CoefficientVector coefficients;
  std::vector<std::string> variable_names;

  /// Expansion of one sample dotted with the coefficients.
  double predict(std::span<const double> x) const;
};

struct BinaryErrors {
  std::size_t errors = 0;
  std::size_t total = 0;

  bool operator==(const BinaryErrors&) const = default;
};

struct FitReport {
  double r_squared = 0.0;
  std::vector<double> predictions;
  std::vector<double> residuals;
  /// Absent when the model has too many variables for single-letter cells.
  std::optional<std::string> formula;
  unsigned degree_requested = 0;
  unsigned degree_used = 0;
  bool degree_capped = false;
  /// Design-matrix columns skipped as numerically dependent (DropDependent only).
  std::vector<std::size_t> dropped_columns;
  std::optional<BinaryErrors> binary_errors;
};

struct FitOptions {
  linalg::RankPolicy rank_policy = linalg::RankPolicy::Reject;
};

struct FitResult {
  RegressionModel model;
  FitReport report;
};

/// Caps the degree to the row count, builds the design matrix, solves by QR
/// and fills in the report. Errors are rethrown with the dataset source
/// prepended to the message.
FitResult fit(const Dataset& data, unsigned requested_degree, basis::Mode mode,
              const FitOptions& options = {});

/// 1 − SS_res/SS_tot with SS_tot centred on mean(y). Not clamped: a badly
/// conditioned fit can report a negative value. Throws
/// UndefinedStatisticError for constant y.
double r_squared(std::span<const double> predictions, std::span<const double> y);

/// y − ŷ element-wise.
std::vector<double> residuals(std::span<const double> predictions, std::span<const double> y);

/// Spreadsheet formula over row 2, with variable k in column letter k+1
/// (column A holds the response):
///
///     = 42.36 + -152.76*B2 + -15.21*C2 + 57.43*B2*C2
///
/// Coefficients are printed at round-trip precision; exponents above 1 are
/// written as `B2^3`. More than 25 variables throws UnsupportedExportError.
std::string export_formula(const RegressionModel& model);

enum class ThresholdRule {
  /// Predict 1 when |ŷ| > threshold.
  Absolute,
  /// Predict 1 when ŷ > threshold.
  Signed,
};

/// Mismatches between thresholded predictions and 0/1 labels.
BinaryErrors classify_binary(std::span<const double> predictions,
                             std::span<const double> labels, double threshold = 0.5,
                             ThresholdRule rule = ThresholdRule::Absolute);

}  // namespace regressor::model
