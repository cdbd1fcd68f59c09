#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "regressor/basis.hpp"
#include "regressor/ingest.hpp"
#include "regressor/model.hpp"

namespace regressor::cli {

struct RunConfig {
  unsigned degree = 1;
  std::filesystem::path input_path;
  basis::Mode mode = basis::Mode::Combinatorial;
  /// Defaults to the input file's directory.
  std::optional<std::filesystem::path> out_dir;
  std::optional<ingest::SelectionRule> select;
  /// Threshold for the binary-classification line of the report.
  std::optional<double> binary;
  model::ThresholdRule binary_rule = model::ThresholdRule::Absolute;
  /// Also solve the normal equations and report the coefficient deviation.
  bool oracle_check = false;
};

struct OutputPaths {
  std::filesystem::path model;
  std::filesystem::path residuals;
};

OutputPaths output_paths(const RunConfig& config);

/// Fits the input and writes `<stem>_model.txt` and `<stem>_residuals.csv`.
/// Both files are written only after the fit has fully succeeded. Prints R²
/// to `out` and diagnostics to `err`; returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace regressor::cli
