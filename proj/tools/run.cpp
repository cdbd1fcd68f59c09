#include "run.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "regressor/error.hpp"
#include "regressor/linalg.hpp"
#include "regressor/text.hpp"

namespace regressor::cli {
namespace {

struct OracleResult {
  std::optional<double> max_abs_deviation;
  std::optional<double> relative_deviation;
  std::string failure;
};

OracleResult run_oracle(const Dataset& data, const model::RegressionModel& fitted) {
  OracleResult out;
  try {
    const DesignMatrix m = basis::build_design_matrix(data.x, fitted.spec);
    const auto normal = linalg::solve_normal_equations(m, data.y);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < normal.size(); ++i) {
      max_abs = std::max(max_abs, std::abs(normal[i] - fitted.coefficients[i]));
    }
    out.max_abs_deviation = max_abs;
    out.relative_deviation = linalg::relative_difference(normal, fitted.coefficients);
  } catch (const Error& e) {
    out.failure = e.what();
  }
  return out;
}

std::string model_report(const RunConfig& config, const Dataset& data,
                         const model::FitResult& result,
                         const std::optional<OracleResult>& oracle) {
  const auto& spec = result.model.spec;
  const auto& report = result.report;
  std::ostringstream out;
  out << "source: " << config.input_path.filename().string() << '\n';
  out << "mode: " << basis::to_string(spec.mode) << '\n';
  out << "degree: " << report.degree_used << '\n';
  if (report.degree_capped) {
    out << "warning: requested degree " << report.degree_requested << " reduced to "
        << report.degree_used << " so that the term count does not exceed " << data.rows()
        << " rows\n";
  }
  out << "rows: " << data.rows() << '\n';
  out << "variables:";
  for (std::size_t k = 0; k < data.names.size(); ++k) {
    out << (k == 0 ? " " : ", ") << data.names[k];
  }
  out << '\n';
  out << "terms: " << result.model.coefficients.size() << '\n';
  out << "R2: " << format_fixed(report.r_squared, 4) << '\n';
  out << "R2 (full precision): " << format_real(report.r_squared) << '\n';
  out << "formula: "
      << (report.formula ? *report.formula : "unavailable (more than 25 variables)") << '\n';
  out << "coefficients:\n";
  for (std::size_t c = 0; c < result.model.coefficients.size(); ++c) {
    out << "  " << basis::term_label(spec, c, data.names) << ": "
        << format_real(result.model.coefficients[c]) << '\n';
  }
  if (report.binary_errors) {
    out << "binary classification: " << report.binary_errors->errors << " errors in "
        << report.binary_errors->total << " rows (predict 1 when "
        << (config.binary_rule == model::ThresholdRule::Absolute ? "|prediction|"
                                                                 : "prediction")
        << " > " << format_real(*config.binary) << ")\n";
  }
  if (oracle) {
    if (oracle->max_abs_deviation) {
      out << "normal equations: max coefficient deviation "
          << format_real(*oracle->max_abs_deviation) << " (relative "
          << format_real(*oracle->relative_deviation) << ")\n";
    } else {
      out << "normal equations: failed (" << oracle->failure << ")\n";
    }
  }
  return out.str();
}

std::string residuals_csv(const std::vector<double>& residuals) {
  std::string out = "residual\n";
  for (double r : residuals) {
    out += format_real(r);
    out += '\n';
  }
  return out;
}

std::filesystem::path temp_path(const std::filesystem::path& target) {
  auto tmp = target;
  tmp += ".tmp";
  return tmp;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw InvalidInputError("cannot write '" + path.string() + "'");
}

}  // namespace

OutputPaths output_paths(const RunConfig& config) {
  const auto dir = config.out_dir ? *config.out_dir : config.input_path.parent_path();
  const std::string stem = config.input_path.stem().string();
  return {dir / (stem + "_model.txt"), dir / (stem + "_residuals.csv")};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const OutputPaths paths = output_paths(config);
  try {
    if (config.input_path.empty()) throw InvalidInputError("no input file given");

    Dataset data = ingest::parse_csv(config.input_path);
    if (config.select) data = ingest::select_variables(data, *config.select);

    auto result = model::fit(data, config.degree, config.mode);
    if (config.binary) {
      result.report.binary_errors = model::classify_binary(
          result.report.predictions, data.y, *config.binary, config.binary_rule);
    }
    std::optional<OracleResult> oracle;
    if (config.oracle_check) oracle = run_oracle(data, result.model);

    const std::string model_text = model_report(config, data, result, oracle);
    const std::string residual_text = residuals_csv(result.report.residuals);

    if (!paths.model.parent_path().empty()) {
      std::filesystem::create_directories(paths.model.parent_path());
    }
    write_text(temp_path(paths.residuals), residual_text);
    write_text(temp_path(paths.model), model_text);
    std::filesystem::rename(temp_path(paths.residuals), paths.residuals);
    std::filesystem::rename(temp_path(paths.model), paths.model);

    if (result.report.degree_capped) {
      err << "regressor: warning: degree " << config.degree << " reduced to "
          << result.report.degree_used << " for " << data.rows() << " rows\n";
    }
    out << "R2: " << format_fixed(result.report.r_squared, 4) << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::error_code ignored;
    std::filesystem::remove(temp_path(paths.residuals), ignored);
    std::filesystem::remove(temp_path(paths.model), ignored);
    err << "regressor: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace regressor::cli
