#include "regressor/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "regressor/error.hpp"
#include "regressor/random.hpp"
#include "regressor/text.hpp"

namespace regressor::experiment {
namespace {

std::string mode_key(basis::Mode mode) {
  switch (mode) {
    case basis::Mode::Combinatorial:
      return "comb";
    case basis::Mode::PurePolynomial:
      return "poly";
    case basis::Mode::Linear:
      return "linear";
  }
  return "unknown";
}

void write_file(const std::filesystem::path& path, const std::string& header,
                const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write '" + path.string() + "'");
  out << header << body;
}

Range column_range(const Matrix& x, std::size_t k) {
  Range r{x(0, k), x(0, k)};
  for (std::size_t i = 1; i < x.rows(); ++i) {
    r.lo = std::min(r.lo, x(i, k));
    r.hi = std::max(r.hi, x(i, k));
  }
  return r;
}

std::string prediction_grid(const model::RegressionModel& model, const Dataset& data,
                            std::size_t grid_points) {
  std::ostringstream out;
  for (const auto& name : data.names) out << name << ',';
  out << "predicted\n";
  auto emit = [&](std::span<const double> x) {
    for (double v : x) out << format_real(v) << ',';
    out << format_real(model.predict(x)) << '\n';
  };
  const std::size_t v = data.variables();
  if (v <= 2 && grid_points >= 2) {
    std::vector<Range> ranges;
    for (std::size_t k = 0; k < v; ++k) ranges.push_back(column_range(data.x, k));
    const std::size_t outer = v == 2 ? grid_points : 1;
    std::vector<double> x(v);
    for (std::size_t a = 0; a < grid_points; ++a) {
      for (std::size_t b = 0; b < outer; ++b) {
        const double fa = static_cast<double>(a) / static_cast<double>(grid_points - 1);
        x[0] = ranges[0].lo + fa * (ranges[0].hi - ranges[0].lo);
        if (v == 2) {
          const double fb = static_cast<double>(b) / static_cast<double>(grid_points - 1);
          x[1] = ranges[1].lo + fb * (ranges[1].hi - ranges[1].lo);
        }
        emit(x);
      }
    }
  } else {
    for (std::size_t r = 0; r < data.rows(); ++r) emit(data.x.row(r));
  }
  return out.str();
}

}  // namespace

double compound_amount(double capital, double interest, double period) {
  return capital * std::pow(1.0 + interest, period);
}

Dataset generate_compound_interest(const CompoundInterestConfig& config) {
  if (config.samples < 2) throw InvalidInputError("compound interest needs >= 2 samples");
  if (!(config.interest.hi > config.interest.lo) || !(config.period.hi > config.period.lo)) {
    throw InvalidInputError("compound interest ranges must be non-degenerate");
  }
  if (!(config.noise >= 0.0)) throw InvalidInputError("noise must be non-negative");
  std::mt19937_64 rng(config.seed);
  Dataset data;
  data.names = {"i", "t"};
  data.response_name = "A";
  data.source = "compound-interest(seed=" + std::to_string(config.seed) + ")";
  data.x = Matrix(config.samples, 2);
  data.y.resize(config.samples);
  for (std::size_t r = 0; r < config.samples; ++r) {
    const double i = uniform(rng, config.interest.lo, config.interest.hi);
    const double t = uniform(rng, config.period.lo, config.period.hi);
    data.x(r, 0) = i;
    data.x(r, 1) = t;
    data.y[r] = compound_amount(config.capital, i, t);
    if (config.noise > 0.0) data.y[r] += uniform(rng, -config.noise, config.noise);
  }
  return data;
}

std::vector<ComparisonRow> run_comparison(const Dataset& data,
                                          const std::vector<unsigned>& degrees,
                                          const std::vector<basis::Mode>& modes,
                                          const ComparisonOptions& options) {
  const std::string seed_line = "# seed=" + std::to_string(options.seed) + "\n";
  std::vector<ComparisonRow> rows;
  for (const basis::Mode mode : modes) {
    for (const unsigned degree : degrees) {
      ComparisonRow row;
      row.mode = mode;
      row.degree_requested = degree;
      try {
        const auto result =
            model::fit(data, degree, mode, {linalg::RankPolicy::DropDependent});
        row.degree_used = result.report.degree_used;
        row.terms = result.model.coefficients.size();
        row.r_squared = result.report.r_squared;
        row.status = "ok";
        if (result.report.degree_capped) row.status += ":capped";
        if (!result.report.dropped_columns.empty()) {
          row.status += ":dropped=" + std::to_string(result.report.dropped_columns.size());
        }
        if (options.out_dir) {
          const auto name = "fit_" + mode_key(mode) + "_" + std::to_string(degree) + ".csv";
          write_file(*options.out_dir / name, seed_line,
                     prediction_grid(result.model, data, options.grid_points));
        }
      } catch (const Error& e) {
        row.degree_used = degree;
        row.terms = 0;
        row.r_squared = std::nan("");
        row.status = std::string("error: ") + e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  if (options.out_dir) {
    write_file(*options.out_dir / "comparison.csv", seed_line, format_comparison(rows));
  }
  return rows;
}

std::string format_comparison(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "mode,degree,terms,r2,status\n";
  for (const auto& row : rows) {
    std::string status = row.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << mode_key(row.mode) << ',' << row.degree_used << ',' << row.terms << ','
        << (row.ok() ? format_real(row.r_squared) : std::string("nan")) << ',' << status
        << '\n';
  }
  return out.str();
}

DivergenceReport divergence_probe(const model::RegressionModel& model,
                                  const Dataset& training, double extrapolation,
                                  std::size_t steps) {
  validate(training);
  if (training.variables() != model.spec.variables) {
    throw InvalidInputError("divergence probe: model and dataset variable counts differ");
  }
  if (!(extrapolation > 0.0) || steps < 2) {
    throw InvalidInputError("divergence probe needs extrapolation > 0 and steps >= 2");
  }
  const std::size_t v = training.variables();
  std::vector<Range> ranges;
  for (std::size_t k = 0; k < v; ++k) ranges.push_back(column_range(training.x, k));

  const double step = 1.0 / static_cast<double>(steps - 1);
  const auto extra_steps =
      static_cast<std::size_t>(std::ceil(extrapolation / step - 1e-9));

  DivergenceReport report;
  std::vector<double> x(v);
  auto sample = [&](double position) {
    for (std::size_t k = 0; k < v; ++k) {
      x[k] = ranges[k].lo + position * (ranges[k].hi - ranges[k].lo);
    }
    DivergenceSample s;
    s.position = position;
    s.x = x;
    s.prediction = model.predict(x);
    s.inside = position >= 0.0 && position <= 1.0;
    const double magnitude = std::abs(s.prediction);
    if (s.inside) {
      report.max_inside = std::max(report.max_inside, magnitude);
    } else {
      report.max_outside = std::max(report.max_outside, magnitude);
    }
    report.samples.push_back(std::move(s));
  };

  for (std::size_t n = extra_steps; n > 0; --n) {
    sample(-std::min(extrapolation, static_cast<double>(n) * step));
  }
  for (std::size_t n = 0; n < steps; ++n) sample(static_cast<double>(n) * step);
  for (std::size_t n = 1; n <= extra_steps; ++n) {
    sample(1.0 + std::min(extrapolation, static_cast<double>(n) * step));
  }

  report.growth_ratio =
      report.max_inside > 0.0 ? report.max_outside / report.max_inside : 0.0;
  report.growth_per_unit = (report.growth_ratio - 1.0) / extrapolation;
  return report;
}

std::string format_divergence(const DivergenceReport& report,
                              const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "position";
  for (const auto& name : names) out << ',' << name;
  out << ",prediction,inside\n";
  for (const auto& s : report.samples) {
    out << format_real(s.position);
    for (double v : s.x) out << ',' << format_real(v);
    out << ',' << format_real(s.prediction) << ',' << (s.inside ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace regressor::experiment
