#include <gtest/gtest.h>

#include "corpus.hpp"
#include "thueq/thueq.hpp"

using namespace thueq;

namespace {
const QuarticForm kPaper(1, -4, -1, 4, 1);

// mpmath.polyroots at 50 digits
const char* kPaperRoots[4] = {"-0.874960085729272331482626676615585423086",
                              "-0.2510600473886776278182131766478905737736",
                              "1.142909278160395037955180335109713056143",
                              "3.983110854957554921345659518153762940716"};

bool within(const Ball& b, const char* oracle, int digits) {
  Ball o = Ball::from_string(oracle, b.prec());
  Real tol = Real::from_double(std::pow(10.0, -digits), 64);
  return abs(b - o).mid() < tol;
}
}  // namespace

TEST(Roots, PaperFormRootsMatchOracle) {
  RootSystem rs = find_roots(kPaper, 256);
  EXPECT_EQ(rs.r, 4);
  EXPECT_EQ(rs.s, 0);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(within(rs.roots[i].re, kPaperRoots[i], 35)) << i;
}

TEST(Roots, MahlerMeasureMatchesOracle) {
  EXPECT_TRUE(within(find_roots(kPaper, 256).mahler, "4.552334352072373032561122324583207229167", 35));
  EXPECT_TRUE(within(find_roots(QuarticForm(1, 0, 0, 0, -2), 256).mahler, "2", 35));
  EXPECT_TRUE(within(find_roots(QuarticForm(1, 0, 0, 0, 1), 256).mahler, "1", 35));
  EXPECT_TRUE(within(find_roots(QuarticForm(1, 0, -4, 0, 2), 256).mahler,
                     "3.41421356237309504880168872420969807857", 35));
  EXPECT_TRUE(within(find_roots(QuarticForm(1, 0, 0, 1, -1), 256).mahler,
                     "1.380277569097614115673301691822731877817", 35));
}

TEST(Roots, SignaturesAndOrdering) {
  RootSystem a = find_roots(QuarticForm(1, 0, 0, 0, -2));
  EXPECT_EQ(a.r, 2);
  EXPECT_EQ(a.s, 1);
  EXPECT_TRUE(a.roots[0].re.mid() < a.roots[1].re.mid());
  EXPECT_TRUE(a.roots[2].im.mid().sign() > 0);
  EXPECT_EQ(a.conj_index(2), 3);
  RootSystem b = find_roots(QuarticForm(1, 0, 0, 0, 1));
  EXPECT_EQ(b.r, 0);
  EXPECT_EQ(b.s, 2);
}

TEST(Roots, ClusteredRootsCertify) {
  // equivalent to the paper form; two roots within 0.27
  RootSystem rs = find_roots(QuarticForm(1, 22, 161, 488, 529));
  EXPECT_EQ(rs.r, 4);
  EXPECT_EQ(rs.prec, kDefaultBits);
}

TEST(Roots, RejectsDegenerate) {
  EXPECT_THROW(find_roots(QuarticForm(1, 0, -2, 0, 1)), ContractError);  // (x^2-1)^2
  EXPECT_THROW(find_roots(QuarticForm(0, 1, 0, 0, 1)), ContractError);
}

TEST(Roots, DiscriminantFromRootsContainsExact) {
  for (const auto& F : corpus::forms(10)) {
    RootSystem rs = find_roots(F);
    const mpfr_prec_t p = rs.prec;
    CBall prod(Ball::from_int(1, p));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        CBall d = rs.roots[i] - rs.roots[j];
        prod = prod * d * d;
      }
    Ball a0 = Ball::from_z(F[0], p);
    Ball a6 = a0 * a0 * a0 * a0 * a0 * a0;
    Ball diff = prod.re * a6 - Ball::from_z(F.disc(), p);
    EXPECT_TRUE(diff.contains_zero()) << F.str();
    EXPECT_TRUE((prod.im * a6).contains_zero()) << F.str();
  }
}

TEST(Roots, MahlerLowerBoundAndSeparation) {
  for (const auto& F : corpus::forms(10)) {
    RootSystem rs = find_roots(F);
    EXPECT_TRUE(mahler_measure(rs, F).holds) << F.str();
    EXPECT_TRUE(possibly_le(separation_bound(rs.mahler), min_root_separation(rs))) << F.str();
  }
  // separation bound for the paper form, mpmath
  EXPECT_TRUE(within(separation_bound(find_roots(kPaper, 256).mahler),
                     "0.0002868654187322606288326277611711407722032", 38));
}

TEST(Roots, FprimeBoundsOnMonicForms) {
  auto fc = fprime_bounds_check(find_roots(kPaper), kPaper);
  for (const auto& c : fc) EXPECT_TRUE(c.holds);
  RootSystem loose = find_roots(kPaper);
  loose.roots[0].re = Ball(loose.roots[0].re.mid(), Real::from_double(1e-3, 64));
  EXPECT_THROW(fprime_bounds_check(loose, kPaper), NumericalError);
}

TEST(Roots, DistanceBound) {
  RootSystem rs = find_roots(kPaper);
  EXPECT_TRUE(min_root_distance_bound(rs, kPaper, 8, 7).holds);
  EXPECT_TRUE(min_root_distance_bound(rs, kPaper, -7, 8).holds);
  EXPECT_THROW(min_root_distance_bound(rs, kPaper, 1, 0), ContractError);
}

TEST(Roots, RelatedRoot) {
  RootSystem rs = find_roots(kPaper);
  EXPECT_EQ(classify_related(rs, kPaper, 8, 7), 2);  // 8/7 near 1.1429
  EXPECT_EQ(classify_related(rs, kPaper, 1, 0), 0);
  QuarticForm G(1, 0, 0, 0, -2);
  EXPECT_EQ(classify_related(find_roots(G), G, 1, 1), 1);  // 2^(1/4)
}

TEST(Roots, RelatedRootStableUnderPrecisionDoubling) {
  for (const auto& F : corpus::forms(5)) {
    RootSystem lo = find_roots(F, 128), hi = find_roots(F, 256);
    for (long x = -6; x <= 6; ++x)
      for (long y = 1; y <= 6; ++y)
        EXPECT_EQ(classify_related(lo, F, x, y), classify_related(hi, F, x, y)) << F.str();
  }
}

TEST(Roots, EnvironmentPrecision) {
  setenv("THUEQ_PRECISION_BITS", "200", 1);
  EXPECT_EQ(env_precision(), 200);
  setenv("THUEQ_PRECISION_BITS", "7", 1);
  EXPECT_THROW(env_precision(), ParseError);
  unsetenv("THUEQ_PRECISION_BITS");
  EXPECT_EQ(env_precision(), kDefaultBits);
}
