#include "regressor/basis.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "regressor/error.hpp"

namespace regressor::basis {
namespace {

constexpr std::size_t kSizeMax = std::numeric_limits<std::size_t>::max();

std::optional<std::size_t> checked_mul(std::size_t a, std::size_t b) {
  std::size_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

std::optional<std::size_t> checked_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    auto next = checked_mul(out, base);
    if (!next) return std::nullopt;
    out = *next;
  }
  return out;
}

// One factor x_variable^power of a basis term.
struct Factor {
  std::size_t variable;
  unsigned power;
};

// Factor lists for every column, flattened. Combinatorial columns list every
// variable below digit_limit(j), zero exponents included, mirroring the
// truncated product loop; multiplying by x^0 = 1.0 is exact, so this equals
// the full v-factor product bit for bit.
class TermTable {
 public:
  explicit TermTable(const BasisSpec& spec) : spec_(spec), terms_(term_count(spec)) {
    const unsigned degree = spec.effective_degree();
    offsets_.reserve(terms_ + 1);
    offsets_.push_back(0);
    for (std::size_t j = 0; j < terms_; ++j) {
      if (j > 0) {
        if (spec.mode == Mode::Combinatorial) {
          const std::size_t base = std::size_t{degree} + 1;
          std::size_t rest = j;
          for (std::size_t k = 0; rest > 0; ++k) {
            factors_.push_back({k, static_cast<unsigned>(rest % base)});
            rest /= base;
          }
        } else {
          const std::size_t variable = (j - 1) / degree;
          const auto power = static_cast<unsigned>((j - 1) % degree + 1);
          factors_.push_back({variable, power});
        }
      }
      offsets_.push_back(factors_.size());
    }
  }

  std::size_t terms() const noexcept { return terms_; }

  // Fills `out` (stride apart) with the expansion of one sample. Returns the
  // first (column, variable) whose product is non-finite, if any.
  struct Overflow {
    std::size_t column;
    std::size_t variable;
  };
  std::optional<Overflow> expand(std::span<const double> x, double* out,
                                 std::size_t stride,
                                 std::vector<double>& powers) const {
    const unsigned degree = spec_.effective_degree();
    const std::size_t width = std::size_t{degree} + 1;
    powers.resize(x.size() * width);
    for (std::size_t k = 0; k < x.size(); ++k) {
      powers[k * width] = 1.0;
      for (unsigned e = 1; e <= degree; ++e) {
        powers[k * width + e] = std::pow(x[k], static_cast<double>(e));
      }
    }
    out[0] = 1.0;
    for (std::size_t j = 1; j < terms_; ++j) {
      double product = 1.0;
      for (std::size_t f = offsets_[j]; f < offsets_[j + 1]; ++f) {
        const Factor& factor = factors_[f];
        product *= powers[factor.variable * width + factor.power];
        if (!std::isfinite(product)) return Overflow{j, factor.variable};
      }
      out[j * stride] = product;
    }
    return std::nullopt;
  }

 private:
  BasisSpec spec_;
  std::size_t terms_;
  std::vector<std::size_t> offsets_;
  std::vector<Factor> factors_;
};

void check_spec(const BasisSpec& spec) {
  if (spec.variables < 1) throw InvalidInputError("basis needs at least one variable");
}

void check_sample(std::span<const double> x, std::size_t row) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k])) {
      throw InvalidInputError("non-finite value at row " + std::to_string(row) +
                              ", variable " + std::to_string(k));
    }
  }
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Combinatorial:
      return "combinatorial";
    case Mode::PurePolynomial:
      return "polynomial";
    case Mode::Linear:
      return "linear";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  if (text == "comb" || text == "combinatorial") return Mode::Combinatorial;
  if (text == "poly" || text == "polynomial") return Mode::PurePolynomial;
  if (text == "linear") return Mode::Linear;
  throw InvalidInputError("unknown basis mode '" + std::string(text) +
                          "' (expected comb, poly or linear)");
}

std::size_t term_count(const BasisSpec& spec) {
  check_spec(spec);
  const unsigned degree = spec.effective_degree();
  std::optional<std::size_t> count;
  if (spec.mode == Mode::Combinatorial) {
    count = checked_pow(std::size_t{degree} + 1, spec.variables);
  } else {
    count = checked_mul(spec.variables, degree);
    if (count && *count == kSizeMax) count.reset();
    if (count) count = *count + 1;
  }
  if (!count) {
    throw CapacityError("term count for degree " + std::to_string(degree) + " with " +
                        std::to_string(spec.variables) +
                        " variables exceeds the addressable range");
  }
  return *count;
}

unsigned exponent(std::size_t column, std::size_t variable, unsigned degree) {
  const std::size_t base = std::size_t{degree} + 1;
  for (std::size_t u = 0; u < variable && column > 0; ++u) column /= base;
  return static_cast<unsigned>(column % base);
}

std::size_t digit_limit(std::size_t column, unsigned degree) {
  const std::size_t base = std::size_t{degree} + 1;
  if (base == 1) {
    if (column != 0) throw InvalidInputError("degree 0 basis has only column 0");
    return 0;
  }
  std::size_t digits = 0;
  for (; column > 0; column /= base) ++digits;
  return digits;
}

std::vector<unsigned> term_exponents(const BasisSpec& spec, std::size_t column) {
  const std::size_t terms = term_count(spec);
  if (column >= terms) {
    throw InvalidInputError("column " + std::to_string(column) + " out of range for " +
                            std::to_string(terms) + " terms");
  }
  std::vector<unsigned> out(spec.variables, 0);
  if (column == 0) return out;
  const unsigned degree = spec.effective_degree();
  if (spec.mode == Mode::Combinatorial) {
    for (std::size_t u = 0; u < spec.variables; ++u) out[u] = exponent(column, u, degree);
  } else {
    out[(column - 1) / degree] = static_cast<unsigned>((column - 1) % degree + 1);
  }
  return out;
}

DegreeCap cap_degree(unsigned requested, std::size_t variables, std::size_t rows) {
  if (rows < 1) throw InvalidInputError("cannot fit a model to zero rows");
  if (variables < 1) throw InvalidInputError("cannot fit a model without variables");
  DegreeCap cap{requested, false};
  while (true) {
    const auto terms = checked_pow(std::size_t{cap.degree} + 1, variables);
    if (terms && *terms <= rows) break;
    // (0+1)^v = 1 ≤ rows always holds here.
    --cap.degree;
    cap.capped = true;
  }
  return cap;
}

DegreeCap cap_degree(const BasisSpec& requested, std::size_t rows) {
  switch (requested.mode) {
    case Mode::Combinatorial:
      return cap_degree(requested.degree, requested.variables, rows);
    case Mode::PurePolynomial: {
      if (rows < 1) throw InvalidInputError("cannot fit a model to zero rows");
      check_spec(requested);
      const std::size_t max_degree = (rows - 1) / requested.variables;
      if (requested.degree <= max_degree) return {requested.degree, false};
      return {static_cast<unsigned>(max_degree), true};
    }
    case Mode::Linear: {
      const std::size_t terms = term_count(requested);
      if (terms > rows) {
        throw CapacityError("linear model needs " + std::to_string(terms) +
                            " rows but the dataset has " + std::to_string(rows));
      }
      return {requested.degree, false};
    }
  }
  return {requested.degree, false};
}

DesignMatrix build_design_matrix(const Matrix& x, const BasisSpec& spec) {
  check_spec(spec);
  if (x.cols() != spec.variables) {
    throw InvalidInputError("data has " + std::to_string(x.cols()) +
                            " variables but the basis expects " +
                            std::to_string(spec.variables));
  }
  const TermTable table(spec);
  const std::size_t terms = table.terms();
  if (!checked_mul(terms, std::max<std::size_t>(x.rows(), 1))) {
    throw CapacityError("design matrix size exceeds the addressable range");
  }
  DesignMatrix m(x.rows(), terms);
  std::vector<double> powers;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    check_sample(x.row(r), r);
    if (auto overflow = table.expand(x.row(r), &m(r, 0), x.rows(), powers)) {
      throw ConditioningError(r, overflow->column, overflow->variable);
    }
  }
  return m;
}

std::vector<double> expand_row(std::span<const double> x, const BasisSpec& spec) {
  check_spec(spec);
  if (x.size() != spec.variables) {
    throw InvalidInputError("sample has " + std::to_string(x.size()) +
                            " values but the basis expects " +
                            std::to_string(spec.variables));
  }
  check_sample(x, 0);
  const TermTable table(spec);
  std::vector<double> out(table.terms());
  std::vector<double> powers;
  if (auto overflow = table.expand(x, out.data(), 1, powers)) {
    throw ConditioningError(0, overflow->column, overflow->variable);
  }
  return out;
}

std::string term_label(const BasisSpec& spec, std::size_t column,
                       const std::vector<std::string>& names) {
  const auto exps = term_exponents(spec, column);
  std::string out;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += k < names.size() ? names[k] : "X" + std::to_string(k + 1);
    if (exps[k] > 1) out += '^' + std::to_string(exps[k]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace regressor::basis
