#include "regressor/basis.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <set>

#include "regressor/error.hpp"
#include "support/oracles.hpp"

namespace regressor::basis {
namespace {

TEST(Exponent, ZeroColumnHasAllZeroDigits) {
  for (unsigned d = 0; d < 5; ++d)
    for (std::size_t u = 0; u < 6; ++u) EXPECT_EQ(exponent(0, u, d), 0u);
}

TEST(Exponent, FirstDegreeCrossTerm) {
  // Column 3 of the d=1, v=2 basis is x1*x2.
  EXPECT_EQ(exponent(3, 0, 1), 1u);
  EXPECT_EQ(exponent(3, 1, 1), 1u);
}

TEST(Exponent, BaseThreeDigits) {
  // 5 = 2 + 1*3 -> x1^2 * x2.
  EXPECT_EQ(exponent(5, 0, 2), 2u);
  EXPECT_EQ(exponent(5, 1, 2), 1u);
}

TEST(Exponent, MatchesOdometerAndIsBijective) {
  for (unsigned d = 0; d <= 4; ++d) {
    for (std::size_t v = 1; v <= 4; ++v) {
      const auto expected = oracle::odometer_exponents(d, v);
      std::set<std::vector<unsigned>> seen;
      for (std::size_t j = 0; j < expected.size(); ++j) {
        std::vector<unsigned> got(v);
        std::size_t rebuilt = 0;
        std::size_t place = 1;
        for (std::size_t u = 0; u < v; ++u) {
          got[u] = exponent(j, u, d);
          rebuilt += got[u] * place;
          place *= d + 1;
        }
        ASSERT_EQ(got, expected[j]) << "d=" << d << " v=" << v << " j=" << j;
        EXPECT_EQ(rebuilt, j);
        EXPECT_TRUE(seen.insert(got).second);
      }
    }
  }
}

TEST(DigitLimit, HigherVariablesHaveZeroExponent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const unsigned d = 1 + static_cast<unsigned>(rng() % 6);
    const std::size_t v = 1 + rng() % 6;
    const auto terms = term_count({d, v, Mode::Combinatorial});
    const std::size_t j = 1 + rng() % (terms - 1);
    const std::size_t limit = digit_limit(j, d);
    EXPECT_GE(limit, 1u);
    EXPECT_NE(exponent(j, limit - 1, d), 0u);
    for (std::size_t u = limit; u < v; ++u) EXPECT_EQ(exponent(j, u, d), 0u);
  }
}

TEST(DigitLimit, ExactPowersOfTheBase) {
  // log(j)/log(d+1) on exact powers is where a floating-point limit can
  // round down; the integer digit count must not.
  for (unsigned d = 1; d <= 9; ++d) {
    std::size_t power = 1;
    for (std::size_t digits = 1; digits <= 12; ++digits) {
      EXPECT_EQ(digit_limit(power, d), digits) << "d=" << d << " j=" << power;
      if (power > 1) EXPECT_EQ(digit_limit(power - 1, d), digits - 1);
      power *= d + 1;
    }
  }
  EXPECT_EQ(digit_limit(0, 3), 0u);
  EXPECT_EQ(digit_limit(0, 0), 0u);
}

TEST(TermCount, PerMode) {
  EXPECT_EQ(term_count({1, 2, Mode::Combinatorial}), 4u);
  EXPECT_EQ(term_count({0, 5, Mode::Combinatorial}), 1u);
  EXPECT_EQ(term_count({1, 26, Mode::Combinatorial}), 67108864u);
  EXPECT_GT(term_count({1, 26, Mode::Combinatorial}), 3048u);
  EXPECT_EQ(term_count({3, 4, Mode::PurePolynomial}), 13u);
  EXPECT_EQ(term_count({7, 4, Mode::Linear}), 5u);
  EXPECT_EQ(term_count({1, 4, Mode::PurePolynomial}), term_count({9, 4, Mode::Linear}));
}

TEST(TermCount, OverflowIsACapacityError) {
  EXPECT_THROW(term_count({1, 64, Mode::Combinatorial}), CapacityError);
  EXPECT_THROW(term_count({1000, 10, Mode::Combinatorial}), CapacityError);
  EXPECT_NO_THROW(term_count({1, 63, Mode::Combinatorial}));
}

TEST(TermCount, RejectsZeroVariables) {
  EXPECT_THROW(term_count({1, 0, Mode::Combinatorial}), InvalidInputError);
}

TEST(CapDegree, RowCountConstraint) {
  const auto thirteen = cap_degree(3, 13, 299);
  EXPECT_EQ(thirteen.degree, 0u);
  EXPECT_TRUE(thirteen.capped);

  const auto four = cap_degree(3, 4, 299);
  EXPECT_EQ(four.degree, 3u);
  EXPECT_FALSE(four.capped);

  const auto single = cap_degree(5, 1, 1000);
  EXPECT_EQ(single.degree, 5u);
  EXPECT_FALSE(single.capped);
}

TEST(CapDegree, SquareSystemIsAllowed) {
  EXPECT_EQ(cap_degree(3, 2, 16).degree, 3u);
  EXPECT_EQ(cap_degree(3, 2, 15).degree, 2u);
}

TEST(CapDegree, ResultIsLargestFeasibleDegree) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const unsigned requested = static_cast<unsigned>(rng() % 40);
    const std::size_t v = 1 + rng() % 5;
    const std::size_t rows = 1 + rng() % 5000;
    const auto cap = cap_degree(requested, v, rows);
    auto fits = [&](unsigned d) {
      double terms = std::pow(d + 1.0, static_cast<double>(v));
      return terms <= static_cast<double>(rows);
    };
    EXPECT_TRUE(fits(cap.degree));
    EXPECT_LE(cap.degree, requested);
    EXPECT_EQ(cap.capped, cap.degree != requested);
    if (cap.degree < requested) EXPECT_FALSE(fits(cap.degree + 1));
  }
}

TEST(CapDegree, InvalidInputs) {
  EXPECT_THROW(cap_degree(2, 3, 0), InvalidInputError);
  EXPECT_THROW(cap_degree(2, 0, 10), InvalidInputError);
}

TEST(CapDegree, ModeAware) {
  const auto poly = cap_degree(BasisSpec{50, 2, Mode::PurePolynomial}, 21);
  EXPECT_EQ(poly.degree, 10u);
  EXPECT_TRUE(poly.capped);
  EXPECT_FALSE(cap_degree(BasisSpec{1, 3, Mode::Linear}, 4).capped);
  EXPECT_THROW(cap_degree(BasisSpec{1, 3, Mode::Linear}, 3), CapacityError);
}

TEST(DesignMatrix, FirstDegreeCombinatorialRow) {
  const auto m = build_design_matrix(Matrix::from_rows({{2, 3}}), {1, 2, Mode::Combinatorial});
  ASSERT_EQ(m.cols(), 4u);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(0, 1), 2.0);
  EXPECT_EQ(m(0, 2), 3.0);
  EXPECT_EQ(m(0, 3), 6.0);
}

TEST(DesignMatrix, DegreeZeroIsInterceptOnly) {
  const auto m = build_design_matrix(Matrix::from_rows({{2, 3}, {-1, 7}, {0, 0}}),
                                     {0, 2, Mode::Combinatorial});
  ASSERT_EQ(m.cols(), 1u);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(m(r, 0), 1.0);
}

TEST(DesignMatrix, PurePolynomialRow) {
  const auto m = build_design_matrix(Matrix::from_rows({{2, 3}}), {2, 2, Mode::PurePolynomial});
  const std::vector<double> expected{1, 2, 4, 3, 9};
  ASSERT_EQ(m.cols(), expected.size());
  for (std::size_t c = 0; c < expected.size(); ++c) EXPECT_EQ(m(0, c), expected[c]);
}

TEST(DesignMatrix, ColumnsAreContiguous) {
  const auto m = build_design_matrix(Matrix::from_rows({{2, 3}, {4, 5}}),
                                     {1, 2, Mode::Combinatorial});
  const auto values = m.values();
  // Column 3 (x1*x2) occupies values[6..7].
  EXPECT_EQ(values[6], 6.0);
  EXPECT_EQ(values[7], 20.0);
}

TEST(DesignMatrix, TruncatedProductIsBitExact) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned d = static_cast<unsigned>(rng() % 4);
    const std::size_t v = 1 + rng() % 4;
    std::vector<double> x(v);
    for (double& xi : x) xi = regressor::uniform(rng, -3.0, 3.0);
    const auto row = expand_row(x, {d, v, Mode::Combinatorial});
    const auto tuples = oracle::odometer_exponents(d, v);
    ASSERT_EQ(row.size(), tuples.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double expected = oracle::full_product(x, tuples[j]);
      EXPECT_EQ(std::memcmp(&row[j], &expected, sizeof(double)), 0)
          << "d=" << d << " v=" << v << " j=" << j;
    }
  }
}

TEST(DesignMatrix, ExpandRowMatchesMatrixRows) {
  std::mt19937_64 rng(3);
  Matrix x(20, 3);
  for (double& v : x.values()) v = regressor::uniform(rng, -2.0, 2.0);
  for (Mode mode : {Mode::Combinatorial, Mode::PurePolynomial, Mode::Linear}) {
    const BasisSpec spec{2, 3, mode};
    const auto m = build_design_matrix(x, spec);
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const auto row = expand_row(x.row(r), spec);
      for (std::size_t c = 0; c < m.cols(); ++c) EXPECT_EQ(row[c], m(r, c));
    }
  }
}

TEST(DesignMatrix, LinearModeIsClassicalDesign) {
  const auto x = Matrix::from_rows({{2, 3, 5}, {-1, 0.5, 4}});
  const auto m = build_design_matrix(x, {4, 3, Mode::Linear});
  ASSERT_EQ(m.cols(), 4u);
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_EQ(m(r, 0), 1.0);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(m(r, k + 1), x(r, k));
  }
}

TEST(DesignMatrix, OverflowNamesTheCell) {
  const auto x = Matrix::from_rows({{1.0, 2.0}, {1e200, 2.0}});
  try {
    build_design_matrix(x, {2, 2, Mode::Combinatorial});
    FAIL() << "expected ConditioningError";
  } catch (const ConditioningError& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.column(), 2u);  // x1^2
    EXPECT_EQ(e.variable(), 0u);
  }
}

TEST(DesignMatrix, RejectsNonFiniteInputAndWidthMismatch) {
  EXPECT_THROW(build_design_matrix(Matrix::from_rows({{NAN, 1.0}}), {1, 2}), InvalidInputError);
  EXPECT_THROW(build_design_matrix(Matrix::from_rows({{1.0, 2.0, 3.0}}), {1, 2}),
               InvalidInputError);
}

TEST(Properties, CombinatorialBasisNestsInDegree) {
  for (std::size_t v = 1; v <= 3; ++v) {
    for (unsigned d = 0; d < 4; ++d) {
      std::set<std::vector<unsigned>> larger;
      const BasisSpec next{d + 1, v, Mode::Combinatorial};
      for (std::size_t j = 0; j < term_count(next); ++j) larger.insert(term_exponents(next, j));
      const BasisSpec spec{d, v, Mode::Combinatorial};
      for (std::size_t j = 0; j < term_count(spec); ++j)
        EXPECT_TRUE(larger.count(term_exponents(spec, j)));
    }
  }
}

TEST(Properties, PurePolynomialIsSubsetOfCombinatorial) {
  for (std::size_t v = 1; v <= 3; ++v) {
    for (unsigned d = 1; d <= 4; ++d) {
      std::set<std::vector<unsigned>> comb;
      const BasisSpec full{d, v, Mode::Combinatorial};
      for (std::size_t j = 0; j < term_count(full); ++j) comb.insert(term_exponents(full, j));
      const BasisSpec poly{d, v, Mode::PurePolynomial};
      for (std::size_t j = 0; j < term_count(poly); ++j) {
        const auto exps = term_exponents(poly, j);
        EXPECT_LE(std::count_if(exps.begin(), exps.end(), [](unsigned e) { return e != 0; }), 1);
        EXPECT_TRUE(comb.count(exps));
      }
    }
  }
}

TEST(TermLabel, Readable) {
  const std::vector<std::string> names{"i", "t"};
  const BasisSpec spec{2, 2, Mode::Combinatorial};
  EXPECT_EQ(term_label(spec, 0, names), "1");
  EXPECT_EQ(term_label(spec, 1, names), "i");
  EXPECT_EQ(term_label(spec, 5, names), "i^2*t");
  EXPECT_EQ(term_label({2, 2, Mode::PurePolynomial}, 4, names), "t^2");
}

TEST(ModeNames, ParseAndPrint) {
  EXPECT_EQ(parse_mode("comb"), Mode::Combinatorial);
  EXPECT_EQ(parse_mode("poly"), Mode::PurePolynomial);
  EXPECT_EQ(parse_mode("linear"), Mode::Linear);
  EXPECT_THROW(parse_mode("cubic"), InvalidInputError);
  EXPECT_EQ(to_string(Mode::Combinatorial), "combinatorial");
}

}  // namespace
}  // namespace regressor::basis
