#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "regressor/matrix.hpp"

namespace regressor::linalg {

/// β's ordered by design-matrix column index.
using CoefficientVector = std::vector<double>;

enum class RankPolicy {
  /// Throw RankDeficiencyError when a diagonal entry of R falls below
  /// max(rows, cols)·ε·max|diag R|.
  Reject,
  /// Skip columns whose remaining norm after orthogonalisation falls below
  /// max(rows, cols)·ε·‖original column‖; their coefficient is zero.
  DropDependent,
};

/// Householder QR of a design matrix, computed over column-contiguous storage
/// so every inner loop walks adjacent memory. Reflector vectors are packed
/// below the diagonal; R is above it with its diagonal held separately.
class QrFactors {
 public:
  static QrFactors factor(const DesignMatrix& m, RankPolicy policy = RankPolicy::Reject);

  std::size_t rows() const noexcept { return packed_.rows(); }
  std::size_t cols() const noexcept { return packed_.cols(); }
  std::size_t rank() const noexcept { return kept_.size(); }

  /// Column indices skipped under RankPolicy::DropDependent, ascending.
  const std::vector<std::size_t>& dropped_columns() const noexcept { return dropped_; }

  /// Diagonal of R, one entry per input column (zero for dropped columns).
  std::span<const double> r_diagonal() const noexcept { return rdiag_; }

  /// Upper-triangular factor restricted to kept columns (rank × rank).
  Matrix r() const;

  /// Qᵀ·y (length rows).
  std::vector<double> apply_qt(std::span<const double> y) const;
  /// Q·z (length rows).
  std::vector<double> apply_q(std::span<const double> z) const;

  /// Least-squares coefficients minimising ‖M·β − y‖₂.
  CoefficientVector solve(std::span<const double> y) const;

  /// Q·R over the kept columns; reproduces the input for full-rank matrices.
  DesignMatrix reconstruct() const;

 private:
  DesignMatrix packed_;
  std::vector<double> rdiag_;
  std::vector<std::size_t> kept_;
  std::vector<std::size_t> dropped_;
};

struct LeastSquaresSolution {
  CoefficientVector coefficients;
  std::vector<std::size_t> dropped_columns;
};

/// Least squares via column-iteration Householder QR.
CoefficientVector solve_qr(const DesignMatrix& m, std::span<const double> y);

LeastSquaresSolution solve_least_squares(const DesignMatrix& m, std::span<const double> y,
                                         RankPolicy policy);

/// The same Householder algorithm run over row-major storage, i.e. with the
/// inner loops striding across rows as the original Jama code does. Kept as
/// the baseline for layout benchmarks; its results are bit-identical to
/// solve_qr on the same input.
CoefficientVector solve_qr_row_iteration(const Matrix& m, std::span<const double> y);

/// (MᵀM)⁻¹·Mᵀy by Gaussian elimination with partial pivoting. Loses accuracy
/// as cond(M)² grows; intended as a cross-check on small, well-scaled data.
/// Throws SingularMatrixError when a pivot is exactly zero.
CoefficientVector solve_normal_equations(const DesignMatrix& m, std::span<const double> y);

struct LayoutTiming {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t repetitions = 0;
  double row_iteration_seconds = 0.0;     ///< best of `repetitions`
  double column_iteration_seconds = 0.0;  ///< best of `repetitions`
  double max_relative_difference = 0.0;   ///< between the two coefficient vectors

  double ratio() const {
    return column_iteration_seconds > 0.0 ? row_iteration_seconds / column_iteration_seconds
                                          : 0.0;
  }
};

/// Times row- and column-iteration QR solves on the same seeded random
/// rows × cols system. Each repetition re-copies the input; the copy is not
/// timed.
LayoutTiming benchmark_qr_layouts(std::size_t rows, std::size_t cols,
                                  std::size_t repetitions, std::uint64_t seed = 42);

/// `variant,rows,cols,seconds` lines, header first.
std::string format_timing(const LayoutTiming& timing);

/// max_i |a_i − b_i| / max(max_i |b_i|, tiny).
double relative_difference(std::span<const double> a, std::span<const double> b);

}  // namespace regressor::linalg
