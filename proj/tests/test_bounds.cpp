#include <gtest/gtest.h>

#include "thueq/thueq.hpp"

using namespace thueq;

namespace {
constexpr mpfr_prec_t kP = 256;

bool digits_match(const Ball& b, const char* oracle, int digits) {
  Ball o = Ball::from_string(oracle, kP);
  Ball rel = abs(b - o) / abs(o);
  return rel.mid().to_double() < std::pow(10.0, -digits);
}

PhiVector phi_with_norm(double n) {
  PhiVector p;
  for (auto& c : p.c) c = Ball::from_int(0, kP);
  p.c[0] = Ball::from_double(n, kP);
  p.norm = Ball::from_double(n, kP);
  return p;
}

Vec4 vec(double a, double b, double c, double d) {
  return {Ball::from_double(a, kP), Ball::from_double(b, kP), Ball::from_double(c, kP), Ball::from_double(d, kP)};
}
}  // namespace

TEST(Bounds, MatveevConstantsMatchOracle) {
  // mpmath at 40 digits, product evaluation
  MatveevConstants k = matveev_constants(3, 2, 24, Ball::from_int(10, kP));
  EXPECT_TRUE(digits_match(k.C, "1604856791.166165946498028057833709642572", 30));
  EXPECT_TRUE(digits_match(k.C0, "33.33975155974550976127380326275812491791", 30));
  EXPECT_TRUE(digits_match(k.W0, "8.315949578739907201954922357013856819089", 30));
  MatveevConstants k4 = matveev_constants(4, 1, 24, Ball::from_int(10, kP));
  EXPECT_TRUE(digits_match(k4.C, "41793145603.28557152338614733941952194197", 30));
  EXPECT_TRUE(digits_match(k4.C0, "39.45046833304723350706572544401123252406", 30));
}

TEST(Bounds, MatveevBoundIsLinearInEachHeight) {
  MatveevInput in{3, 24, 2, {Ball::from_int(1, kP), Ball::from_int(2, kP), Ball::from_int(3, kP)}, Ball::from_int(10, kP)};
  MatveevBound base = matveev_lower_bound(in);
  EXPECT_TRUE(digits_match(base.value, "-1537744650421579.834681355881972065229083", 30));
  for (int j = 0; j < 3; ++j) {
    MatveevInput d = in;
    d.A[j] = d.A[j] * Ball::from_int(2, kP);
    MatveevBound b = matveev_lower_bound(d);
    EXPECT_TRUE(b.value.mid() == (base.value * Ball::from_int(2, kP)).mid()) << j;
  }
  MatveevInput big = in;
  big.B = Ball::from_int(1000, kP);
  EXPECT_TRUE(matveev_lower_bound(big).value.mid() < base.value.mid());
}

TEST(Bounds, MatveevEdgeCases) {
  MatveevInput in{3, 24, 2, {Ball::from_int(1, kP), Ball::from_int(0, kP), Ball::from_int(1, kP)}, Ball::from_int(10, kP)};
  MatveevBound b = matveev_lower_bound(in);
  EXPECT_TRUE(b.degenerate);
  EXPECT_TRUE(b.value.mid().is_zero());
  in.A.pop_back();
  EXPECT_THROW(matveev_lower_bound(in), ContractError);
  MatveevInput one{1, 1, 1, {Ball::from_int(1, kP)}, Ball::from_int(1, kP)};
  EXPECT_TRUE(matveev_lower_bound(one).value.mid().is_finite());
  EXPECT_THROW(matveev_constants(3, 3, 24, Ball::from_int(10, kP)), ContractError);
}

TEST(Bounds, CountTables) {
  auto t = count_tables({0, 2});
  EXPECT_EQ(std::make_tuple(t.U, t.N1, t.N2, t.A), std::make_tuple(6, 5, 0, 1));
  t = count_tables({2, 1});
  EXPECT_EQ(std::make_tuple(t.U, t.N1, t.N2, t.A), std::make_tuple(14, 9, 4, 1));
  t = count_tables({4, 0});
  EXPECT_EQ(std::make_tuple(t.U, t.N1, t.N2, t.A), std::make_tuple(26, 12, 8, 6));
  EXPECT_THROW(count_tables({1, 1}), ContractError);
}

TEST(Bounds, CubeGapBranches) {
  Ball M = Ball::from_double(4.5, kP);
  Ball M2 = M * M;
  EXPECT_TRUE(cube_gap_check(M2, M2 * M2, M).holds);   // equality
  EXPECT_FALSE(cube_gap_check(M2, M2 * M, M).holds);   // M^3 < M^4
}

TEST(Bounds, ExpGapBranches) {
  auto tri = [](double a, double c) { return std::array<PhiVector, 3>{phi_with_norm(a), phi_with_norm((a + c) / 2), phi_with_norm(c)}; };
  // 0.00014 e^20 ~ 6.8e4 > 10
  EXPECT_FALSE(exp_gap_check({phi_with_norm(120), phi_with_norm(60), phi_with_norm(10)}, {4, 0}).holds);
  // 0.00014 e^10 ~ 3.08 < 10
  EXPECT_TRUE(exp_gap_check({phi_with_norm(60), phi_with_norm(30), phi_with_norm(10)}, {4, 0}).holds);
  EXPECT_TRUE(exp_gap_check(tri(0, 0.00015), {4, 0}).holds);
  EXPECT_FALSE(exp_gap_check(tri(0, 0.00013), {4, 0}).holds);
  // Vol = 4: threshold exp(r1/6)
  Ball vol = Ball::from_int(4, kP);
  EXPECT_TRUE(exp_gap_check(tri(6, 2.8), {2, 1}, vol).holds);   // e = 2.718
  EXPECT_FALSE(exp_gap_check(tri(6, 2.7), {2, 1}, vol).holds);
  EXPECT_THROW(exp_gap_check(tri(6, 2.8), {2, 1}), ContractError);
  EXPECT_FALSE(exp_gap_check(tri(6, 2.8), {0, 2}).applicable);
}

TEST(Bounds, ComplexRootBound) {
  QuarticForm F(1, 0, 0, 0, 1);
  RootSystem rs = find_roots(F, kP);
  EXPECT_TRUE(digits_match(complex_root_ybound(rs, F, 0), "5.863977985834645118471585508587250558994", 30));
  for (const auto& s : enumerate_solutions(F, rs, 1000))
    EXPECT_TRUE(Ball::from_z(s.y, kP).mid() <= complex_root_ybound(rs, F, 0).mid());
  QuarticForm P(1, -4, -1, 4, 1);
  EXPECT_THROW(complex_root_ybound(find_roots(P), P, 0), ContractError);
}

TEST(Bounds, AreaSandwich) {
  PhiVector a, b, c;
  a.c = vec(0, 0, 0, 0);
  b.c = vec(1, 0, 0, 0);
  c.c = vec(0.5, std::sqrt(3.0) / 2, 0, 0);
  a.norm = norm2(a.c);
  b.norm = norm2(b.c);
  c.norm = norm2(c.c);
  AreaReport r = area_sandwich_check({a, b, c});
  EXPECT_FALSE(r.collinear);
  EXPECT_NEAR(r.area.mid().to_double(), std::sqrt(3.0) / 4, 1e-14);
  EXPECT_NEAR(r.lower.mid().to_double(), 0.000293, 1e-5);
  c.c = vec(2, 0, 0, 0);
  c.norm = norm2(c.c);
  EXPECT_TRUE(area_sandwich_check({a, b, c}).collinear);
  EXPECT_FALSE(area_sandwich_check({a, b, c}, Ball::from_int(1, kP)).AV->holds);
}

TEST(Bounds, StewartSetsOnPureQuartic) {
  QuarticForm F(1, 0, 0, 0, -2);
  RootSystem rs = find_roots(F);
  auto sols = enumerate_solutions(F, rs, 100);
  StewartReport r = stewart_small_count(F, rs, Ball::from_int(100, rs.prec), sols);
  EXPECT_FALSE(r.bound_applicable);
  size_t members = 0;
  for (const auto& [i, set] : r.sets) members += set.size();
  EXPECT_GE(members, 1u);  // (1,1) is close to 2^(1/4)
  EXPECT_THROW(stewart_small_count(F, rs, Ball::from_q(mpq_class(1, 2), rs.prec), sols), ContractError);
  QuarticForm G(1, 0, 0, 0, 1);
  StewartReport g = stewart_small_count(G, find_roots(G), Ball::from_int(10, rs.prec), {});
  EXPECT_TRUE(g.X.empty());
  EXPECT_TRUE(g.M_degenerate);
}

TEST(Bounds, BetaValuesAreRootsOfAnEquivalentForm) {
  QuarticForm F(1, -4, -1, 4, 1);
  RootSystem rs = find_roots(F);
  auto b = stewart_betas(rs, 8, 7);
  // sum of the beta's is -a1/a0 of F(p x + ..., q x + ...) with integer coefficients
  CBall s = b[0] + b[1] + b[2] + b[3];
  EXPECT_LT(std::fabs(s.re.mid().to_double() - std::round(s.re.mid().to_double())), 1e-20);
  EXPECT_THROW(stewart_betas(rs, 2, 4), ContractError);
}

TEST(Bounds, GapChainCandidate) {
  GapChain g = gap_chain_40();
  // root of x - log x = log(6K) + 4 log r with x = log(0.00014) + r/6, mpmath findroot
  EXPECT_NEAR(g.R_star, 536.8616057733798482, 1e-6);
  EXPECT_NEAR(g.log10_D0, 5599.357150342315728, 1e-6);
  EXPECT_NEAR(g.log10_D_stewart, 851.1543891517, 1e-6);
}
