#include "regressor/model.hpp"

#include <cmath>
#include <numeric>

#include "regressor/error.hpp"
#include "regressor/text.hpp"

namespace regressor::model {
namespace {

constexpr std::size_t kMaxExportVariables = 25;

void require_same_length(std::span<const double> a, std::span<const double> b,
                         const char* what) {
  if (a.size() != b.size()) {
    throw InvalidInputError(std::string(what) + ": length mismatch (" +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                            ")");
  }
}

}  // namespace

double RegressionModel::predict(std::span<const double> x) const {
  if (x.size() != spec.variables) {
    throw InvalidInputError("predict: expected " + std::to_string(spec.variables) +
                            " values, got " + std::to_string(x.size()));
  }
  const auto row = basis::expand_row(x, spec);
  if (row.size() != coefficients.size()) {
    throw InvalidInputError("model coefficient count does not match its basis");
  }
  // Same summation order as DesignMatrix::multiply.
  double sum = 0.0;
  for (std::size_t c = 0; c < row.size(); ++c) sum += row[c] * coefficients[c];
  return sum;
}

FitResult fit(const Dataset& data, unsigned requested_degree, basis::Mode mode,
              const FitOptions& options) {
  try {
    validate(data);
    const basis::BasisSpec requested{requested_degree, data.variables(), mode};
    const basis::DegreeCap cap = basis::cap_degree(requested, data.rows());
    const basis::BasisSpec spec{cap.degree, data.variables(), mode};

    const DesignMatrix m = basis::build_design_matrix(data.x, spec);
    auto solution = linalg::solve_least_squares(m, data.y, options.rank_policy);

    FitResult result;
    result.model = {spec, std::move(solution.coefficients), data.names};

    FitReport& report = result.report;
    report.degree_requested = requested_degree;
    report.degree_used = spec.effective_degree();
    report.degree_capped = cap.capped;
    report.dropped_columns = std::move(solution.dropped_columns);
    report.predictions = m.multiply(result.model.coefficients);
    report.residuals = residuals(report.predictions, data.y);
    report.r_squared = r_squared(report.predictions, data.y);
    if (data.variables() <= kMaxExportVariables) {
      report.formula = export_formula(result.model);
    }
    return result;
  } catch (Error& e) {
    if (!data.source.empty()) e.add_context(data.source);
    throw;
  }
}

double r_squared(std::span<const double> predictions, std::span<const double> y) {
  require_same_length(predictions, y, "r_squared");
  if (y.size() < 2) throw InvalidInputError("r_squared needs at least two samples");
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y[i] - predictions[i];
    const double d = y[i] - mean;
    ss_res += e * e;
    ss_tot += d * d;
  }
  if (ss_tot == 0.0) {
    throw UndefinedStatisticError("R² is undefined for a constant response");
  }
  return 1.0 - ss_res / ss_tot;
}

std::vector<double> residuals(std::span<const double> predictions, std::span<const double> y) {
  require_same_length(predictions, y, "residuals");
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - predictions[i];
  return out;
}

std::string export_formula(const RegressionModel& model) {
  const std::size_t v = model.spec.variables;
  if (v > kMaxExportVariables) {
    throw UnsupportedExportError("formula export supports at most 25 variables (got " +
                                 std::to_string(v) + ")");
  }
  const std::size_t terms = basis::term_count(model.spec);
  if (model.coefficients.size() != terms) {
    throw InvalidInputError("model coefficient count does not match its basis");
  }

  std::string out = "=";
  for (std::size_t c = 0; c < terms; ++c) {
    out += c == 0 ? " " : " + ";
    out += format_real(model.coefficients[c]);
    const auto exps = basis::term_exponents(model.spec, c);
    for (std::size_t k = 0; k < v; ++k) {
      if (exps[k] == 0) continue;
      out += '*';
      out += static_cast<char>('B' + k);
      out += '2';
      if (exps[k] > 1) out += '^' + std::to_string(exps[k]);
    }
  }
  return out;
}

BinaryErrors classify_binary(std::span<const double> predictions,
                             std::span<const double> labels, double threshold,
                             ThresholdRule rule) {
  require_same_length(predictions, labels, "classify_binary");
  BinaryErrors out{0, labels.size()};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0.0 && labels[i] != 1.0) {
      throw InvalidInputError("label at index " + std::to_string(i) + " is not 0 or 1");
    }
    const double score = rule == ThresholdRule::Absolute ? std::abs(predictions[i])
                                                         : predictions[i];
    const double predicted = score > threshold ? 1.0 : 0.0;
    if (predicted != labels[i]) ++out.errors;
  }
  return out;
}

}  // namespace regressor::model
