#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "regressor/matrix.hpp"

namespace regressor::basis {

enum class Mode {
  /// Full tensor-product basis: every ∏ x_k^{e_k} with e_k ∈ [0, degree].
  Combinatorial,
  /// Intercept plus per-variable powers 1..degree, no cross terms.
  PurePolynomial,
  /// PurePolynomial at degree 1, whatever degree is requested.
  Linear,
};

std::string_view to_string(Mode mode);
/// Accepts the CLI spellings ("comb", "poly", "linear") and the full names.
Mode parse_mode(std::string_view text);

struct BasisSpec {
  unsigned degree = 0;
  std::size_t variables = 1;
  Mode mode = Mode::Combinatorial;

  /// The degree the basis is actually built with (1 for Linear).
  unsigned effective_degree() const noexcept {
    return mode == Mode::Linear ? 1u : degree;
  }

  bool operator==(const BasisSpec&) const = default;
};

/// Number of basis columns n_t, including the intercept. Throws CapacityError
/// instead of wrapping when the count does not fit in std::size_t.
std::size_t term_count(const BasisSpec& spec);

/// Exponent of variable `variable` in combinatorial column `column`: the
/// variable-th base-(degree+1) digit of the column index.
unsigned exponent(std::size_t column, std::size_t variable, unsigned degree);

/// Number of base-(degree+1) digits of `column`, i.e. the number of leading
/// variables that can carry a nonzero exponent. Zero for column 0. Every
/// variable at or past the limit has exponent zero.
std::size_t digit_limit(std::size_t column, unsigned degree);

/// Exponent tuple (one entry per variable) of any column in any mode.
std::vector<unsigned> term_exponents(const BasisSpec& spec, std::size_t column);

struct DegreeCap {
  unsigned degree = 0;
  bool capped = false;
};

/// Largest d ≤ requested with (d+1)^variables ≤ rows. A tie (square system)
/// is accepted.
DegreeCap cap_degree(unsigned requested, std::size_t variables, std::size_t rows);

/// Mode-aware capping: combinatorial as above, pure-polynomial uses
/// 1 + variables·d ≤ rows. Linear cannot be reduced and throws CapacityError
/// when 1 + variables > rows.
DegreeCap cap_degree(const BasisSpec& requested, std::size_t rows);

/// Design matrix with entry (r, c) = ∏_k X(r,k)^e_k(c). Column 0 is the
/// intercept. Throws ConditioningError on a non-finite product and
/// InvalidInputError on non-finite inputs or a width mismatch.
DesignMatrix build_design_matrix(const Matrix& x, const BasisSpec& spec);

/// One design-matrix row for a single sample, bit-identical to the matching
/// row of build_design_matrix.
std::vector<double> expand_row(std::span<const double> x, const BasisSpec& spec);

/// Human-readable term label, e.g. "1", "a", "a^2*b".
std::string term_label(const BasisSpec& spec, std::size_t column,
                       const std::vector<std::string>& names);

}  // namespace regressor::basis
