#include <gtest/gtest.h>

#include <random>

#include "thueq/thueq.hpp"

using namespace thueq;

namespace {
const QuarticForm kPaper(1, -4, -1, 4, 1);
}

TEST(Form, ParsesFiveIntegers) {
  QuarticForm F = parse_form("1 -4 -1 4 1");
  EXPECT_EQ(F.str(), "1 -4 -1 4 1");
  EXPECT_EQ(parse_form("+1 0 0 0 -2").str(), "1 0 0 0 -2");
}

TEST(Form, RejectsMalformedInput) {
  EXPECT_THROW(parse_form("1 2 3 4"), ParseError);
  EXPECT_THROW(parse_form("1 2 3 4 5 6"), ParseError);
  EXPECT_THROW(parse_form("1 2 x 4 5"), ParseError);
  EXPECT_THROW(parse_form("0 0 0 0 0"), ParseError);
}

TEST(Form, DiscriminantMatchesOracle) {
  // sympy.discriminant
  EXPECT_EQ(kPaper.disc(), 10512);
  EXPECT_EQ(QuarticForm(1, 0, 0, 0, -2).disc(), -2048);
  EXPECT_EQ(QuarticForm(1, 0, 0, 0, 1).disc(), 256);
  EXPECT_EQ(QuarticForm(1, 1, 1, 1, 1).disc(), 125);
  EXPECT_EQ(QuarticForm(1, 0, -4, 0, 2).disc(), 2048);
  EXPECT_EQ(QuarticForm(1, 0, 0, 1, -1).disc(), -283);
}

TEST(Form, EvaluatesHomogeneously) {
  EXPECT_EQ(kPaper(8, 7), 1);
  EXPECT_EQ(kPaper(-7, 8), 1);
  EXPECT_EQ(kPaper(1, 0), 1);
  EXPECT_EQ(QuarticForm(1, 0, 0, 0, -2)(1, 1), -1);
}

TEST(Form, TranslationByY) {
  QuarticForm G = gl2_transform(kPaper, GL2Action{1, 1, 0, 1});
  EXPECT_EQ(G.str(), "1 0 -7 -6 1");
  EXPECT_EQ(G.disc(), kPaper.disc());
}

TEST(Form, DiscriminantInvariantUnderRandomUnimodular) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    long a = static_cast<long>(rng() % 7) - 3, b = static_cast<long>(rng() % 7) - 3;
    // (1 a; 0 1)(1 0; b 1) has determinant 1
    GL2Action T = GL2Action{1, a, 0, 1} * GL2Action{1, 0, b, 1};
    QuarticForm G = gl2_transform(kPaper, T);
    EXPECT_EQ(G.disc(), kPaper.disc());
    EXPECT_EQ(G(T.inverse().apply(8, 7).first, T.inverse().apply(8, 7).second), 1);
  }
}

TEST(Form, RejectsNonUnimodular) {
  EXPECT_THROW(gl2_transform(kPaper, GL2Action{2, 0, 0, 1}), ContractError);
}

TEST(Form, Irreducibility) {
  EXPECT_TRUE(is_irreducible(kPaper));
  EXPECT_TRUE(is_irreducible(QuarticForm(1, 0, 0, 0, -2)));
  EXPECT_TRUE(is_irreducible(QuarticForm(1, 0, 0, 0, 1)));
  EXPECT_FALSE(is_irreducible(QuarticForm(1, 0, 0, 0, -4)));   // (x^2-2)(x^2+2)
  EXPECT_FALSE(is_irreducible(QuarticForm(1, 0, 0, 0, 4)));    // Sophie Germain
  EXPECT_FALSE(is_irreducible(QuarticForm(1, 0, -5, 0, 4)));   // linear factors
  EXPECT_FALSE(is_irreducible(QuarticForm(0, 1, 0, 0, 1)));    // y divides
  EXPECT_FALSE(is_irreducible(QuarticForm(1, 0, 0, 0, 0)));
}

TEST(Form, MonicizeAtSolution) {
  MonicizeResult m = monicize(kPaper, 8, 7);
  EXPECT_EQ(m.form[0], 1);
  EXPECT_EQ(m.form.disc(), kPaper.disc());
  EXPECT_EQ(m.transform.det(), 1);
  EXPECT_THROW(monicize(kPaper, 2, 1), ContractError);
  EXPECT_THROW(monicize(kPaper, 2, 4), ContractError);
}

TEST(Form, CanonicalSign) {
  mpz_class x = 3, y = -2;
  canonicalize(x, y);
  EXPECT_EQ(x, -3);
  EXPECT_EQ(y, 2);
  x = -1;
  y = 0;
  canonicalize(x, y);
  EXPECT_EQ(x, 1);
}
