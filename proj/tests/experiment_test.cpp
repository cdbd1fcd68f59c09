#include "regressor/experiment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "regressor/basis.hpp"
#include "regressor/error.hpp"

namespace regressor::experiment {
namespace {

using basis::Mode;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("regressor_experiment_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string first_line(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

TEST(CompoundInterest, Amount) {
  EXPECT_EQ(compound_amount(1.0, 0.1, 2.0), 1.2100000000000002);
  EXPECT_EQ(compound_amount(1.0, 0.0, 17.0), 1.0);
  EXPECT_EQ(compound_amount(3.0, 0.25, 0.0), 3.0);
}

TEST(CompoundInterest, GeneratorShapeAndRanges) {
  const auto data = generate_compound_interest({});
  EXPECT_EQ(data.rows(), 1000u);
  EXPECT_EQ(data.names, (std::vector<std::string>{"i", "t"}));
  EXPECT_EQ(data.response_name, "A");
  for (std::size_t r = 0; r < data.rows(); ++r) {
    EXPECT_GE(data.x(r, 0), 0.0);
    EXPECT_LT(data.x(r, 0), 0.25);
    EXPECT_GE(data.x(r, 1), 0.0);
    EXPECT_LT(data.x(r, 1), 30.0);
    EXPECT_EQ(data.y[r], compound_amount(1.0, data.x(r, 0), data.x(r, 1)));
  }
}

TEST(CompoundInterest, SeededReproducibility) {
  CompoundInterestConfig config;
  config.noise = 0.01;
  const auto a = generate_compound_interest(config);
  const auto b = generate_compound_interest(config);
  EXPECT_EQ(a.y, b.y);
  EXPECT_TRUE(std::ranges::equal(a.x.values(), b.x.values()));
  config.seed += 1;
  EXPECT_NE(generate_compound_interest(config).y, a.y);
}

TEST(CompoundInterest, NoiseIsBounded) {
  CompoundInterestConfig config;
  config.noise = 0.01;
  const auto data = generate_compound_interest(config);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    EXPECT_LE(std::abs(data.y[r] - compound_amount(1.0, data.x(r, 0), data.x(r, 1))),
              0.01 + 1e-15);
  }
}

TEST(Comparison, OrderingAndTermCounts) {
  CompoundInterestConfig config;
  config.samples = 200;
  const auto data = generate_compound_interest(config);
  const auto rows =
      run_comparison(data, {0, 1, 2}, {Mode::Combinatorial, Mode::PurePolynomial});
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const auto& row = rows[n];
    EXPECT_EQ(row.mode, n < 3 ? Mode::Combinatorial : Mode::PurePolynomial);
    EXPECT_EQ(row.degree_requested, n % 3);
    ASSERT_TRUE(row.ok()) << row.status;
    EXPECT_EQ(row.terms, basis::term_count({row.degree_used, 2, row.mode}));
  }
  EXPECT_NEAR(rows[0].r_squared, 0.0, 1e-12);
  EXPECT_LT(rows[0].r_squared, rows[1].r_squared);
  EXPECT_LT(rows[1].r_squared, rows[2].r_squared);
}

TEST(Comparison, SquareSystemIsExact) {
  CompoundInterestConfig config;
  config.samples = 16;
  const auto rows = run_comparison(generate_compound_interest(config), {3, 4},
                                   {Mode::Combinatorial});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].terms, 16u);
  EXPECT_NEAR(rows[0].r_squared, 1.0, 1e-6);
  EXPECT_EQ(rows[1].degree_used, 3u);
  EXPECT_EQ(rows[1].status.rfind("ok:capped", 0), 0u) << rows[1].status;
}

TEST(Comparison, FailuresBecomeRows) {
  Dataset data;
  data.names = {"a", "b"};
  data.x = Matrix(3, 2);
  data.y = {1, 1, 1};  // constant response: R² undefined
  for (std::size_t r = 0; r < 3; ++r) {
    data.x(r, 0) = static_cast<double>(r);
    data.x(r, 1) = static_cast<double>(r * r);
  }
  const auto rows = run_comparison(data, {1}, {Mode::Linear});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].ok());
  EXPECT_TRUE(std::isnan(rows[0].r_squared));
  EXPECT_NE(format_comparison(rows).find(",nan,error: "), std::string::npos);
}

TEST(Comparison, WritesFilesWithSeedComment) {
  CompoundInterestConfig config;
  config.samples = 100;
  const auto dir = scratch_dir("files");
  ComparisonOptions options;
  options.out_dir = dir;
  options.seed = config.seed;
  options.grid_points = 5;
  run_comparison(generate_compound_interest(config), {1, 2},
                 {Mode::Combinatorial, Mode::Linear}, options);
  for (const char* name : {"comparison.csv", "fit_comb_1.csv", "fit_comb_2.csv",
                           "fit_linear_1.csv", "fit_linear_2.csv"}) {
    ASSERT_TRUE(fs::exists(dir / name)) << name;
    EXPECT_EQ(first_line(dir / name), "# seed=20200715") << name;
  }
  std::ifstream grid(dir / "fit_comb_1.csv");
  std::size_t lines = 0;
  for (std::string line; std::getline(grid, line);) ++lines;
  EXPECT_EQ(lines, 2u + 25u);  // seed comment, header, 5x5 grid
  fs::remove_all(dir);
}

TEST(Comparison, FormatHeader) {
  EXPECT_EQ(format_comparison({}), "mode,degree,terms,r2,status\n");
}

TEST(Divergence, HighDegreeGrowsBeyondTrainingBox) {
  CompoundInterestConfig config;
  config.noise = 0.01;
  const auto data = generate_compound_interest(config);
  const auto result = model::fit(data, 30, Mode::Combinatorial,
                                 {linalg::RankPolicy::DropDependent});
  const auto report = divergence_probe(result.model, data);
  EXPECT_GT(report.growth_ratio, 10.0);
}

TEST(Divergence, LinearModelStaysAffine) {
  const auto data = generate_compound_interest({});
  const auto result = model::fit(data, 1, Mode::Linear);
  const auto report = divergence_probe(result.model, data, 0.1, 101);
  ASSERT_GT(report.samples.size(), 101u);
  // Equal spacing inside the box: second differences vanish.
  std::vector<double> inside;
  for (const auto& s : report.samples)
    if (s.inside) inside.push_back(s.prediction);
  for (std::size_t n = 2; n < inside.size(); ++n) {
    EXPECT_NEAR(inside[n] - 2 * inside[n - 1] + inside[n - 2], 0.0, 1e-10);
  }
  EXPECT_LT(report.growth_ratio, 1.5);
}

TEST(Divergence, ConstantModelHasUnitRatio) {
  const auto data = generate_compound_interest({});
  const auto result = model::fit(data, 0, Mode::Combinatorial);
  const auto report = divergence_probe(result.model, data);
  EXPECT_DOUBLE_EQ(report.growth_ratio, 1.0);
  EXPECT_DOUBLE_EQ(report.growth_per_unit, 0.0);
}

TEST(Divergence, SamplesSpanBothSidesOfTheBox) {
  const auto data = generate_compound_interest({});
  const auto result = model::fit(data, 2, Mode::Combinatorial);
  const auto report = divergence_probe(result.model, data, 0.1, 11);
  EXPECT_EQ(report.samples.front().position, -0.1);
  EXPECT_EQ(report.samples.back().position, 1.1);
  EXPECT_FALSE(report.samples.front().inside);
  const auto csv = format_divergence(report, data.names);
  EXPECT_EQ(csv.rfind("position,i,t,prediction,inside\n", 0), 0u);
}

TEST(Divergence, RejectsBadArguments) {
  const auto data = generate_compound_interest({});
  const auto result = model::fit(data, 1, Mode::Combinatorial);
  EXPECT_THROW(divergence_probe(result.model, data, 0.0), InvalidInputError);
  EXPECT_THROW(divergence_probe(result.model, data, 0.1, 1), InvalidInputError);
}

}  // namespace
}  // namespace regressor::experiment
