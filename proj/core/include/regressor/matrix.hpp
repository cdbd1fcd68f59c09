#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace regressor {

/// Dense row-major matrix. Used for the independent-variable table, where one
/// row is one sample.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::vector<double> column(std::size_t c) const;

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Dense matrix whose columns are contiguous in memory: the storage of Mᵀ.
/// Every basis column of a design matrix is a single adjacent block, which is
/// what the column-iteration QR walks over.
class DesignMatrix {
 public:
  DesignMatrix() = default;
  DesignMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static DesignMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DesignMatrix from_matrix(const Matrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return values_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[c * rows_ + r]; }

  std::span<double> column(std::size_t c) { return {values_.data() + c * rows_, rows_}; }
  std::span<const double> column(std::size_t c) const {
    return {values_.data() + c * rows_, rows_};
  }

  /// Column-major storage.
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// M·b, summing columns in index order.
  std::vector<double> multiply(std::span<const double> coefficients) const;

  Matrix to_row_major() const;

  bool operator==(const DesignMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

}  // namespace regressor
