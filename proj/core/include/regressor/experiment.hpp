#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "regressor/basis.hpp"
#include "regressor/ingest.hpp"
#include "regressor/model.hpp"

namespace regressor::experiment {

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

/// A = C·(1+i)^t sampled uniformly over (i, t).
struct CompoundInterestConfig {
  double capital = 1.0;
  Range interest{0.0, 0.25};
  Range period{0.0, 30.0};
  std::size_t samples = 1000;
  std::uint64_t seed = 20200715;
  /// Half-width of uniform noise added to A; 0 gives the exact formula.
  double noise = 0.0;
};

double compound_amount(double capital, double interest, double period);

/// Dataset with variables (i, t) and response A. Bit-reproducible for a
/// given seed.
Dataset generate_compound_interest(const CompoundInterestConfig& config);

struct ComparisonRow {
  basis::Mode mode = basis::Mode::Combinatorial;
  unsigned degree_requested = 0;
  unsigned degree_used = 0;
  std::size_t terms = 0;
  double r_squared = 0.0;
  /// "ok", "ok:capped", "ok:dropped=N", or "error: <message>".
  std::string status;

  bool ok() const { return status.rfind("ok", 0) == 0; }
};

struct ComparisonOptions {
  /// Where to write comparison.csv and fit_<mode>_<d>.csv; nothing is written
  /// when unset.
  std::optional<std::filesystem::path> out_dir;
  /// Grid points per axis for the prediction grids (two-variable data).
  std::size_t grid_points = 41;
  /// Recorded in the header comment of every emitted file.
  std::uint64_t seed = 0;
};

/// Fits every (mode, degree) pair with degree capping and dependent-column
/// dropping. A failing fit becomes an error row; the run continues. Rows are
/// ordered mode-major in the order given.
std::vector<ComparisonRow> run_comparison(const Dataset& data,
                                          const std::vector<unsigned>& degrees,
                                          const std::vector<basis::Mode>& modes,
                                          const ComparisonOptions& options = {});

/// `mode,degree,terms,r2,status` CSV body (no seed comment).
std::string format_comparison(const std::vector<ComparisonRow>& rows);

struct DivergenceSample {
  double position = 0.0;  ///< 0..1 spans the training box diagonal
  std::vector<double> x;
  double prediction = 0.0;
  bool inside = true;
};

struct DivergenceReport {
  std::vector<DivergenceSample> samples;
  double max_inside = 0.0;   ///< max |ŷ| within the training box
  double max_outside = 0.0;  ///< max |ŷ| beyond it
  /// max_outside / max_inside.
  double growth_ratio = 0.0;
  /// (growth_ratio − 1) per unit of extrapolated position.
  double growth_per_unit = 0.0;
};

/// Evaluates `model` along the diagonal of the per-variable bounding box of
/// `training`, extended by `extrapolation` (fraction of the box) past both
/// ends. `steps` samples cover the in-box segment.
DivergenceReport divergence_probe(const model::RegressionModel& model,
                                  const Dataset& training, double extrapolation = 0.1,
                                  std::size_t steps = 200);

/// `position,<names...>,prediction,inside` CSV body.
std::string format_divergence(const DivergenceReport& report,
                              const std::vector<std::string>& names);

}  // namespace regressor::experiment
