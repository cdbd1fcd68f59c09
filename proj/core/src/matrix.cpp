#include "regressor/matrix.hpp"

#include "regressor/error.hpp"

namespace regressor {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw InvalidInputError("matrix storage size does not match its shape");
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  Matrix m(rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw InvalidInputError("ragged matrix literal");
    std::size_t c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

DesignMatrix::DesignMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

DesignMatrix DesignMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  return from_matrix(Matrix::from_rows(rows));
}

DesignMatrix DesignMatrix::from_matrix(const Matrix& m) {
  DesignMatrix d(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) d(r, c) = m(r, c);
  return d;
}

std::vector<double> DesignMatrix::multiply(std::span<const double> coefficients) const {
  if (coefficients.size() != cols_) {
    throw InvalidInputError("coefficient count " + std::to_string(coefficients.size()) +
                            " does not match design matrix width " +
                            std::to_string(cols_));
  }
  std::vector<double> out(rows_, 0.0);
  for (std::size_t c = 0; c < cols_; ++c) {
    const auto col = column(c);
    for (std::size_t r = 0; r < rows_; ++r) out[r] += col[r] * coefficients[c];
  }
  return out;
}

Matrix DesignMatrix::to_row_major() const {
  Matrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
  return m;
}

}  // namespace regressor
