#include "regressor/linalg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "regressor/error.hpp"
#include "regressor/random.hpp"

namespace regressor::linalg {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Column-contiguous view: element (i, j) at data[j * rows + i].
template <class T>
struct ColumnStorage {
  T* data;
  std::size_t rows;
  std::size_t cols;
  T& operator()(std::size_t i, std::size_t j) const { return data[j * rows + i]; }
};
template <class T>
ColumnStorage(T*, std::size_t, std::size_t) -> ColumnStorage<T>;

// Row-contiguous view: element (i, j) at data[i * cols + j].
template <class T>
struct RowStorage {
  T* data;
  std::size_t rows;
  std::size_t cols;
  T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};
template <class T>
RowStorage(T*, std::size_t, std::size_t) -> RowStorage<T>;

struct Factorization {
  std::vector<double> rdiag;
  std::vector<std::size_t> kept;     // kept[t] has its pivot at row t
  std::vector<std::size_t> dropped;
};

// Householder QR in place, following the Jama reflector construction. The
// loop nest is the same for every storage; only the stride of the innermost
// index i differs.
template <class Storage>
Factorization householder(const Storage& qr, RankPolicy policy) {
  const std::size_t m = qr.rows;
  const std::size_t n = qr.cols;
  Factorization f;
  f.rdiag.assign(n, 0.0);
  f.kept.reserve(n);

  std::vector<double> column_norm;
  if (policy == RankPolicy::DropDependent) {
    column_norm.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      double nrm = 0.0;
      for (std::size_t i = 0; i < m; ++i) nrm = std::hypot(nrm, qr(i, k));
      column_norm[k] = nrm;
    }
  }
  const double drop_tol = static_cast<double>(std::max(m, n)) * kEps;

  std::size_t p = 0;  // pivot row of the next kept column
  for (std::size_t k = 0; k < n; ++k) {
    double nrm = 0.0;
    for (std::size_t i = p; i < m; ++i) nrm = std::hypot(nrm, qr(i, k));

    if (policy == RankPolicy::DropDependent &&
        (p >= m || nrm <= drop_tol * column_norm[k])) {
      f.dropped.push_back(k);
      continue;
    }

    if (nrm != 0.0) {
      if (qr(p, k) < 0) nrm = -nrm;
      for (std::size_t i = p; i < m; ++i) qr(i, k) /= nrm;
      qr(p, k) += 1.0;

      for (std::size_t j = k + 1; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = p; i < m; ++i) s += qr(i, k) * qr(i, j);
        s = -s / qr(p, k);
        for (std::size_t i = p; i < m; ++i) qr(i, j) += s * qr(i, k);
      }
    }
    f.rdiag[k] = -nrm;
    f.kept.push_back(k);
    ++p;
  }

  if (policy == RankPolicy::Reject) {
    double max_diag = 0.0;
    for (double d : f.rdiag) max_diag = std::max(max_diag, std::abs(d));
    const double tol = static_cast<double>(std::max(m, n)) * kEps * max_diag;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = std::abs(f.rdiag[k]);
      if (d == 0.0 || d < tol) throw RankDeficiencyError(k);
    }
  }
  return f;
}

// Overwrites y with Qᵀy.
template <class Storage>
void apply_reflectors_transposed(const Storage& qr, const Factorization& f,
                                 std::span<double> y) {
  const std::size_t m = qr.rows;
  for (std::size_t t = 0; t < f.kept.size(); ++t) {
    const std::size_t k = f.kept[t];
    if (f.rdiag[k] == 0.0) continue;
    double s = 0.0;
    for (std::size_t i = t; i < m; ++i) s += qr(i, k) * y[i];
    s = -s / qr(t, k);
    for (std::size_t i = t; i < m; ++i) y[i] += s * qr(i, k);
  }
}

template <class Storage>
CoefficientVector back_substitute(const Storage& qr, const Factorization& f,
                                  std::span<double> qty) {
  CoefficientVector beta(qr.cols, 0.0);
  const std::size_t rank = f.kept.size();
  for (std::size_t t = rank; t-- > 0;) {
    const std::size_t k = f.kept[t];
    const double value = qty[t] / f.rdiag[k];
    beta[k] = value;
    for (std::size_t s = 0; s < t; ++s) qty[s] -= value * qr(s, k);
  }
  return beta;
}

void check_system(std::size_t rows, std::size_t cols, std::span<const double> values,
                  std::span<const double> y) {
  if (cols == 0) throw InvalidInputError("design matrix has no columns");
  if (rows < cols) {
    throw InvalidInputError("least squares needs rows >= columns (got " +
                            std::to_string(rows) + " x " + std::to_string(cols) + ")");
  }
  if (y.size() != rows) {
    throw InvalidInputError("response length " + std::to_string(y.size()) +
                            " does not match " + std::to_string(rows) + " rows");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(values.begin(), values.end(), finite)) {
    throw InvalidInputError("design matrix contains non-finite values");
  }
  if (!std::all_of(y.begin(), y.end(), finite)) {
    throw InvalidInputError("response contains non-finite values");
  }
}

}  // namespace

QrFactors QrFactors::factor(const DesignMatrix& m, RankPolicy policy) {
  check_system(m.rows(), m.cols(), m.values(), std::vector<double>(m.rows()));
  QrFactors out;
  out.packed_ = m;
  const ColumnStorage storage{out.packed_.values().data(), m.rows(), m.cols()};
  Factorization f = householder(storage, policy);
  out.rdiag_ = std::move(f.rdiag);
  out.kept_ = std::move(f.kept);
  out.dropped_ = std::move(f.dropped);
  return out;
}

Matrix QrFactors::r() const {
  const std::size_t rank = kept_.size();
  Matrix out(rank, rank);
  for (std::size_t a = 0; a < rank; ++a) {
    out(a, a) = rdiag_[kept_[a]];
    for (std::size_t b = a + 1; b < rank; ++b) out(a, b) = packed_(a, kept_[b]);
  }
  return out;
}

std::vector<double> QrFactors::apply_qt(std::span<const double> y) const {
  if (y.size() != rows()) throw InvalidInputError("apply_qt: length mismatch");
  std::vector<double> out(y.begin(), y.end());
  const ColumnStorage storage{packed_.values().data(), rows(), cols()};
  apply_reflectors_transposed(storage, {rdiag_, kept_, dropped_}, out);
  return out;
}

std::vector<double> QrFactors::apply_q(std::span<const double> z) const {
  if (z.size() != rows()) throw InvalidInputError("apply_q: length mismatch");
  std::vector<double> out(z.begin(), z.end());
  const std::size_t m = rows();
  // Q = H_0·H_1·…·H_{r-1}; apply in reverse.
  for (std::size_t t = kept_.size(); t-- > 0;) {
    const std::size_t k = kept_[t];
    if (rdiag_[k] == 0.0) continue;
    const auto v = packed_.column(k);
    double s = 0.0;
    for (std::size_t i = t; i < m; ++i) s += v[i] * out[i];
    s = -s / v[t];
    for (std::size_t i = t; i < m; ++i) out[i] += s * v[i];
  }
  return out;
}

CoefficientVector QrFactors::solve(std::span<const double> y) const {
  check_system(rows(), cols(), {}, y);
  std::vector<double> qty(y.begin(), y.end());
  const ColumnStorage storage{packed_.values().data(), rows(), cols()};
  const Factorization f{rdiag_, kept_, dropped_};
  apply_reflectors_transposed(storage, f, qty);
  return back_substitute(storage, f, qty);
}

DesignMatrix QrFactors::reconstruct() const {
  const std::size_t m = rows();
  const std::size_t rank = kept_.size();
  DesignMatrix out(m, cols());
  std::vector<double> column(m);
  for (std::size_t b = 0; b < rank; ++b) {
    std::fill(column.begin(), column.end(), 0.0);
    for (std::size_t a = 0; a < b; ++a) column[a] = packed_(a, kept_[b]);
    column[b] = rdiag_[kept_[b]];
    const auto q_column = apply_q(column);
    std::copy(q_column.begin(), q_column.end(), out.column(kept_[b]).begin());
  }
  return out;
}

CoefficientVector solve_qr(const DesignMatrix& m, std::span<const double> y) {
  return solve_least_squares(m, y, RankPolicy::Reject).coefficients;
}

LeastSquaresSolution solve_least_squares(const DesignMatrix& m, std::span<const double> y,
                                         RankPolicy policy) {
  check_system(m.rows(), m.cols(), m.values(), y);
  const QrFactors qr = QrFactors::factor(m, policy);
  return {qr.solve(y), qr.dropped_columns()};
}

CoefficientVector solve_qr_row_iteration(const Matrix& m, std::span<const double> y) {
  check_system(m.rows(), m.cols(), m.values(), y);
  Matrix packed = m;
  const RowStorage storage{packed.values().data(), m.rows(), m.cols()};
  const Factorization f = householder(storage, RankPolicy::Reject);
  std::vector<double> qty(y.begin(), y.end());
  apply_reflectors_transposed(storage, f, qty);
  return back_substitute(storage, f, qty);
}

CoefficientVector solve_normal_equations(const DesignMatrix& m, std::span<const double> y) {
  check_system(m.rows(), m.cols(), m.values(), y);
  const std::size_t n = m.cols();
  const std::size_t rows = m.rows();

  // Augmented [MᵀM | Mᵀy], row-major.
  Matrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci = m.column(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto cj = m.column(j);
      double s = 0.0;
      for (std::size_t r = 0; r < rows; ++r) s += ci[r] * cj[r];
      a(i, j) = s;
      a(j, i) = s;
    }
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += ci[r] * y[r];
    a(i, n) = s;
  }

  // Only an exactly vanishing pivot is reported; near-singular systems return
  // whatever the elimination produces, which is the accuracy loss this path
  // exists to exhibit.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
    if (a(pivot, k) == 0.0 || !std::isfinite(a(pivot, k))) {
      throw SingularMatrixError("normal equations matrix is singular at column " +
                                std::to_string(k));
    }
    if (pivot != k)
      for (std::size_t j = k; j <= n; ++j) std::swap(a(k, j), a(pivot, j));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j <= n; ++j) a(i, j) -= factor * a(k, j);
    }
  }

  CoefficientVector beta(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = a(k, n);
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * beta[j];
    beta[k] = s / a(k, k);
  }
  if (!std::all_of(beta.begin(), beta.end(), [](double b) { return std::isfinite(b); })) {
    throw SingularMatrixError("normal equations produced non-finite coefficients");
  }
  return beta;
}

double relative_difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInputError("relative_difference: length mismatch");
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / std::max(scale, std::numeric_limits<double>::min());
}

LayoutTiming benchmark_qr_layouts(std::size_t rows, std::size_t cols,
                                  std::size_t repetitions, std::uint64_t seed) {
  if (cols < 1 || rows < cols) {
    throw InvalidInputError("benchmark needs rows >= cols >= 1");
  }
  repetitions = std::max<std::size_t>(repetitions, 1);

  std::mt19937_64 rng(seed);
  DesignMatrix column_major(rows, cols);
  for (double& v : column_major.values()) v = uniform(rng, -1.0, 1.0);
  std::vector<double> y(rows);
  for (double& v : y) v = uniform(rng, -1.0, 1.0);
  const Matrix row_major = column_major.to_row_major();

  using clock = std::chrono::steady_clock;
  auto seconds_since = [](clock::time_point start) {
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  LayoutTiming timing;
  timing.rows = rows;
  timing.cols = cols;
  timing.repetitions = repetitions;
  timing.row_iteration_seconds = std::numeric_limits<double>::infinity();
  timing.column_iteration_seconds = std::numeric_limits<double>::infinity();

  CoefficientVector by_rows;
  CoefficientVector by_columns;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    {
      Matrix work = row_major;
      const auto start = clock::now();
      const RowStorage storage{work.values().data(), rows, cols};
      const Factorization f = householder(storage, RankPolicy::Reject);
      std::vector<double> qty = y;
      apply_reflectors_transposed(storage, f, qty);
      by_rows = back_substitute(storage, f, qty);
      timing.row_iteration_seconds = std::min(timing.row_iteration_seconds, seconds_since(start));
    }
    {
      DesignMatrix work = column_major;
      const auto start = clock::now();
      const ColumnStorage storage{work.values().data(), rows, cols};
      const Factorization f = householder(storage, RankPolicy::Reject);
      std::vector<double> qty = y;
      apply_reflectors_transposed(storage, f, qty);
      by_columns = back_substitute(storage, f, qty);
      timing.column_iteration_seconds =
          std::min(timing.column_iteration_seconds, seconds_since(start));
    }
  }
  timing.max_relative_difference = relative_difference(by_rows, by_columns);
  return timing;
}

std::string format_timing(const LayoutTiming& timing) {
  std::ostringstream out;
  out.precision(6);
  out << "variant,rows,cols,seconds\n";
  out << "row_iteration," << timing.rows << ',' << timing.cols << ','
      << timing.row_iteration_seconds << '\n';
  out << "column_iteration," << timing.rows << ',' << timing.cols << ','
      << timing.column_iteration_seconds << '\n';
  return out.str();
}

}  // namespace regressor::linalg
