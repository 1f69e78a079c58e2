#include <gtest/gtest.h>

#include "../support.hpp"
#include "juggling/combinatorics.hpp"
#include "juggling/errors.hpp"
#include "juggling/jugglers.hpp"

using namespace juggling;
using namespace juggling::jugglers;

TEST(Arrays, EnumerationCountsAndOrder) {
  const auto six = enumerate_arrays(2, 2, 2);
  std::vector<std::string> labels;
  for (const auto& a : six) labels.push_back(a.to_string());
  EXPECT_EQ(labels, (std::vector<std::string>{"00/11", "10/10", "10/01", "01/10", "01/01", "11/00"}));
  EXPECT_EQ(enumerate_arrays(2, 3, 0).size(), 1u);
  EXPECT_EQ(enumerate_arrays(2, 3, 6).size(), 1u);
  for (int l = 0; l <= 6; ++l) EXPECT_EQ(enumerate_arrays(3, 2, l).size(), binomial(6, l));
  EXPECT_THROW(enumerate_arrays(2, 2, 5), InvalidArgument);
}

TEST(Arrays, DropRow) {
  EXPECT_EQ(drop_row(BallArray::parse("00/11")).to_string(), "00/00");
  EXPECT_EQ(drop_row(BallArray::parse("10/00")).to_string(), "00/10");
  EXPECT_EQ(drop_row(BallArray::parse("11/00")).to_string(), "00/11");
}

TEST(Transitions, Examples) {
  const auto bottom = BallArray::parse("00/11");
  for (const auto& b : enumerate_arrays(2, 2, 2)) EXPECT_EQ(juggler_transition_prob<Rational>(bottom, b), Rational(1, 6));
  const auto top = BallArray::parse("11/00");
  EXPECT_EQ(juggler_transition_prob<Rational>(top, BallArray::parse("00/11")), 1);
  EXPECT_EQ(juggler_transition_prob<Rational>(top, BallArray::parse("10/01")), 0);
  EXPECT_THROW(juggler_transition_prob<Rational>(top, BallArray::parse("100/000")), InvalidArgument);
}

TEST(Transitions, RowsSumToOne) {
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 3; ++c) {
      for (int l = 0; l <= r * c; ++l) {
        const auto P = build_chain<Rational>(r, c, l);
        for (std::size_t i = 0; i < P.size(); ++i) {
          Rational sum = 0;
          for (const auto& [j, v] : P.row(i)) sum += v;
          EXPECT_EQ(sum, 1);
        }
      }
    }
  }
}

TEST(Weights, Examples) {
  EXPECT_EQ(juggler_stationary_weight(BallArray::parse("00/11")), 12u);
  EXPECT_EQ(juggler_stationary_weight(BallArray::parse("10/01")), 6u);
  EXPECT_EQ(juggler_stationary_weight(BallArray::parse("11/00")), 2u);
  EXPECT_EQ(juggler_stationary_weight(BallArray::empty(3, 2)), 1u);
  EXPECT_EQ(count_arc_enrichments(BallArray::empty(3, 2)), 1u);
  EXPECT_EQ(count_arc_enrichments(BallArray::parse("01/01")), 6u);
}

TEST(Weights, FormulaMatchesDenseSolveAndArcs) {
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 3; ++c) {
      for (int l = 0; l <= r * c; ++l) {
        const auto P = build_chain<Rational>(r, c, l);
        EXPECT_EQ(stationary_formula<Rational>(r, c, l).weights, oracle::dense_stationary(P));
        for (const auto& a : enumerate_arrays(r, c, l)) EXPECT_EQ(count_arc_enrichments(a), juggler_stationary_weight(a));
      }
    }
  }
}

TEST(Weights, FloatBackend) {
  const auto exact = stationary_formula<Rational>(3, 2, 3);
  const auto fl = stationary_formula<double>(3, 2, 3);
  for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_NEAR(fl.weights[i], exact.weights[i].get_d(), 1e-14);
}
