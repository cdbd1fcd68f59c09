#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  regressor::cli::RunConfig config;
  std::string mode = "comb";
  std::string out_dir;
  std::optional<double> select_threshold;
  std::optional<std::size_t> select_top;
  bool binary_signed = false;

  CLI::App app{"Combinatorial polynomial regression over a CSV file.\n"
               "The first CSV column is the response; the rest are variables."};
  app.add_option("degree", config.degree, "Polynomial degree (reduced if the data is too small)")
      ->required();
  app.add_option("csv", config.input_path, "Input CSV (comma-separated, dot decimals)")
      ->required();
  app.add_option("--mode", mode, "Basis: comb (tensor product), poly (no cross terms), linear")
      ->check(CLI::IsMember({"comb", "poly", "linear"}))
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "Directory for the output files (default: input's)");
  auto* threshold_opt = app.add_option(
      "--select-threshold", select_threshold,
      "Keep only variables with |corr(X, Y)| above this value");
  auto* top_opt = app.add_option("--select-top", select_top,
                                 "Keep only the K variables most correlated with Y");
  threshold_opt->excludes(top_opt);
  app.add_option("--binary", config.binary,
                 "Report classification errors for 0/1 responses at this threshold");
  app.add_flag("--binary-signed", binary_signed,
               "Threshold the signed prediction instead of its absolute value");
  app.add_flag("--oracle-check", config.oracle_check,
               "Cross-check the QR coefficients against the normal equations");

  CLI11_PARSE(app, argc, argv);

  config.mode = regressor::basis::parse_mode(mode);
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (select_threshold) config.select = regressor::ingest::ThresholdRule{*select_threshold};
  if (select_top) config.select = regressor::ingest::TopKRule{*select_top};
  if (binary_signed) config.binary_rule = regressor::model::ThresholdRule::Signed;

  return regressor::cli::run(config, std::cout, std::cerr);
}
