// Regenerates the compound-interest study (linear vs. pure-polynomial vs.
// combinatorial fits, extrapolation divergence) and times the two QR layouts.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "regressor/experiment.hpp"
#include "regressor/linalg.hpp"
#include "regressor/text.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("REGRESSOR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "regressor-experiment: ignoring invalid REGRESSOR_SEED '" << env << "'\n";
    }
  }
  return regressor::experiment::CompoundInterestConfig{}.seed;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace regressor;
  experiment::CompoundInterestConfig config;
  config.seed = default_seed();
  std::string out_dir = ".";
  std::vector<unsigned> comb_degrees{0, 1, 2, 3, 30};
  std::vector<unsigned> poly_degrees{2, 10, 50};
  std::vector<unsigned> divergence_degrees{1, 3, 30};
  double extrapolation = 0.1;
  double divergence_noise = 0.01;
  std::size_t qr_rows = 5000;
  std::size_t qr_cols = 625;
  std::size_t qr_reps = 1;

  CLI::App app{"Compound-interest regression study and QR layout benchmark"};
  app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  app.add_option("--samples", config.samples, "Number of (i, t) samples")->capture_default_str();
  app.add_option("--seed", config.seed, "RNG seed (default: $REGRESSOR_SEED or built-in)");
  app.add_option("--capital", config.capital, "Initial capital C")->capture_default_str();
  app.add_option("--interest-lo", config.interest.lo)->capture_default_str();
  app.add_option("--interest-hi", config.interest.hi)->capture_default_str();
  app.add_option("--period-lo", config.period.lo)->capture_default_str();
  app.add_option("--period-hi", config.period.hi)->capture_default_str();
  app.add_option("--comb-degrees", comb_degrees)->delimiter(',')->capture_default_str();
  app.add_option("--poly-degrees", poly_degrees)->delimiter(',')->capture_default_str();
  app.add_option("--divergence-degrees", divergence_degrees)
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--noise", config.noise, "Half-width of uniform noise added to A")
      ->capture_default_str();
  app.add_option("--divergence-noise", divergence_noise,
                 "Noise half-width for the divergence fits (exact data barely diverges)")
      ->capture_default_str();
  app.add_option("--extrapolation", extrapolation,
                 "Fraction of the training box probed beyond each end")
      ->capture_default_str();
  app.add_option("--qr-rows", qr_rows)->capture_default_str();
  app.add_option("--qr-cols", qr_cols, "0 skips the QR layout benchmark")->capture_default_str();
  app.add_option("--qr-reps", qr_reps)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    const Dataset data = experiment::generate_compound_interest(config);

    experiment::ComparisonOptions options;
    options.out_dir = out_dir;
    options.seed = config.seed;
    std::vector<experiment::ComparisonRow> rows;
    auto append = [&](std::vector<unsigned> degrees, basis::Mode mode) {
      auto part = experiment::run_comparison(data, degrees, {mode}, options);
      rows.insert(rows.end(), part.begin(), part.end());
    };
    append({1}, basis::Mode::Linear);
    append(poly_degrees, basis::Mode::PurePolynomial);
    append(comb_degrees, basis::Mode::Combinatorial);

    const std::string seed_line = "# seed=" + std::to_string(config.seed) + "\n";
    const std::string table = experiment::format_comparison(rows);
    std::ofstream(std::filesystem::path(out_dir) / "comparison.csv") << seed_line << table;
    std::cout << table;

    auto noisy_config = config;
    noisy_config.noise = divergence_noise;
    const Dataset noisy = experiment::generate_compound_interest(noisy_config);
    for (unsigned degree : divergence_degrees) {
      const auto fitted = model::fit(noisy, degree, basis::Mode::Combinatorial,
                                     {linalg::RankPolicy::DropDependent});
      const auto report = experiment::divergence_probe(fitted.model, noisy, extrapolation);
      std::ofstream(std::filesystem::path(out_dir) /
                    ("divergence_" + std::to_string(degree) + ".csv"))
          << seed_line << experiment::format_divergence(report, data.names);
      std::cout << "divergence comb d=" << fitted.report.degree_used
                << ": max|y| inside " << format_real(report.max_inside) << ", outside "
                << format_real(report.max_outside) << ", ratio "
                << format_real(report.growth_ratio) << '\n';
    }

    if (qr_cols > 0) {
      const auto timing = linalg::benchmark_qr_layouts(qr_rows, qr_cols, qr_reps, config.seed);
      const std::string text = linalg::format_timing(timing);
      std::ofstream(std::filesystem::path(out_dir) / "qr_layouts.csv") << text;
      std::cout << text << "speedup (row/column): " << format_real(timing.ratio())
                << ", coefficient difference: "
                << format_real(timing.max_relative_difference) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "regressor-experiment: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
