#include <gtest/gtest.h>

#include <chrono>

#include "corpus.hpp"
#include "thueq/thueq.hpp"

using namespace thueq;

namespace {
const QuarticForm kPaper(1, -4, -1, 4, 1);

std::vector<std::pair<long, long>> pairs(const std::vector<Solution>& s) {
  std::vector<std::pair<long, long>> out;
  for (const auto& v : s) out.emplace_back(v.x.get_si(), v.y.get_si());
  return out;
}
}  // namespace

TEST(Search, FixedY) {
  using P = std::vector<std::pair<long, long>>;
  auto y1 = pairs(solve_fixed_y(kPaper, 1));
  EXPECT_EQ(y1, (P{{-1, 1}, {0, 1}, {1, 1}, {4, 1}}));
  EXPECT_EQ(pairs(solve_fixed_y(kPaper, 7)), (P{{8, 7}}));
  EXPECT_EQ(pairs(solve_fixed_y(kPaper, 0)), (P{{1, 0}}));
}

TEST(Search, PaperFormHasEightSolutions) {
  using P = std::vector<std::pair<long, long>>;
  P want{{1, 0}, {-1, 1}, {0, 1}, {1, 1}, {4, 1}, {-1, 4}, {8, 7}, {-7, 8}};
  EXPECT_EQ(pairs(enumerate_solutions(kPaper, 10)), want);
  EXPECT_EQ(pairs(enumerate_solutions(kPaper, 10000, Rhs::Plus)), want);
}

TEST(Search, NegativeRightHandSideHasNoSolutions) {
  EXPECT_TRUE(enumerate_solutions(kPaper, 10000, Rhs::Minus).empty());
}

TEST(Search, SumOfFourthPowers) {
  using P = std::vector<std::pair<long, long>>;
  EXPECT_EQ(pairs(enumerate_solutions(QuarticForm(1, 0, 0, 0, 1), 1000)), (P{{1, 0}, {0, 1}}));
}

TEST(Search, ValuesRecorded) {
  for (const auto& s : enumerate_solutions(QuarticForm(1, 0, 0, 0, -2), 100)) {
    EXPECT_EQ(QuarticForm(1, 0, 0, 0, -2)(s.x, s.y), s.value);
    EXPECT_EQ(gcd(s.x, s.y), 1);
  }
}

TEST(Search, CapMonotone) {
  for (const auto& F : corpus::forms(4)) {
    auto small = enumerate_solutions(F, 50), big = enumerate_solutions(F, 400);
    ASSERT_LE(small.size(), big.size());
    for (size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i], big[i]);
    for (size_t i = small.size(); i < big.size(); ++i) EXPECT_GT(big[i].y, 50);
  }
}

TEST(Search, MatchesBruteForce) {
  for (const auto& F : corpus::forms(4)) {
    std::vector<std::pair<long, long>> brute;
    for (long y = 0; y <= 30; ++y)
      for (long x = -200; x <= 200; ++x) {
        if (y == 0 && x <= 0) continue;
        if (gcd(mpz_class(x), mpz_class(y)) != 1) continue;
        mpz_class v = F(x, y);
        if (v == 1 || v == -1) brute.emplace_back(x, y);
      }
    auto got = pairs(enumerate_solutions(F, 30));
    std::vector<std::pair<long, long>> in_box;
    for (auto& p : got)
      if (p.first >= -200 && p.first <= 200) in_box.push_back(p);
    EXPECT_EQ(in_box, brute) << F.str();
  }
}

TEST(Search, RejectsNegativeCap) { EXPECT_THROW(enumerate_solutions(kPaper, -1), ContractError); }

TEST(Search, TenThousandSweepIsFast) {
  auto t0 = std::chrono::steady_clock::now();
  enumerate_solutions(kPaper, 10000);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);
}
