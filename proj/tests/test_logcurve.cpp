#include <gtest/gtest.h>

#include "corpus.hpp"
#include "thueq/thueq.hpp"

using namespace thueq;

namespace {
const QuarticForm kPaper(1, -4, -1, 4, 1);

bool near(const Ball& b, const char* oracle, double tol) {
  return std::fabs((b - Ball::from_string(oracle, b.prec())).mid().to_double()) < tol;
}
}  // namespace

TEST(LogCurve, TrivialPointMatchesOracle) {
  // (1/360) log 10512 - (1/90) log|f'(a_m)|, mpmath
  RootSystem rs = find_roots(kPaper, 256);
  PhiVector p0 = phi_of_solution(rs, kPaper, 1, 0);
  const char* want[4] = {"0.00560166317624145181851914077844803304612", "0.01123878288833723471033797907496632124464",
                         "0.002633285176810759464349388533701831927079", "-0.01947373124138944599320650838711618621784"};
  for (int m = 0; m < 4; ++m) EXPECT_TRUE(near(p0.c[m], want[m], 1e-30)) << m;
  EXPECT_TRUE(near(p0.norm, "0.02332057611714427419645740513786589144545", 1e-30));
  EXPECT_TRUE(near(phi_of_solution(rs, kPaper, 8, 7).norm, "9.149992216354387892522931993789838068231", 1e-28));
}

TEST(LogCurve, RejectsNonSolutionsAndBadK) {
  RootSystem rs = find_roots(kPaper);
  EXPECT_THROW(phi_of_solution(rs, kPaper, 2, 1), ContractError);
  EXPECT_THROW(phi_of_solution(rs, kPaper, 1, 0, 0), ContractError);
}

TEST(LogCurve, ParametricFormAgreesAtSolutions) {
  RootSystem rs = find_roots(kPaper);
  for (auto [x, y] : std::vector<std::pair<long, long>>{{8, 7}, {-7, 8}, {4, 1}, {-1, 4}}) {
    PhiVector a = phi_of_solution(rs, kPaper, x, y);
    PhiVector b = phi_of_t(rs, kPaper, Ball::from_q(mpq_class(x, y), rs.prec));
    for (int m = 0; m < 4; ++m) EXPECT_TRUE(abs(a.c[m] - b.c[m]).mid().to_double() < 1e-30);
  }
}

TEST(LogCurve, DifferenceIsLogOfUnit) {
  RootSystem rs = find_roots(kPaper);
  PhiVector p0 = phi_of_solution(rs, kPaper, 1, 0), p = phi_of_solution(rs, kPaper, 8, 7);
  Ball s = Ball::from_int(0, rs.prec);
  for (int m = 0; m < 4; ++m) {
    Ball want = log(abs(CBall(Ball::from_int(8, rs.prec)) - rs.roots[m] * Ball::from_int(7, rs.prec)));
    EXPECT_TRUE(abs(p.c[m] - p0.c[m] - want).mid().to_double() < 1e-30);
    s = s + (p.c[m] - p0.c[m]);
  }
  EXPECT_TRUE(s.mid().to_double() < 1e-30 && s.mid().to_double() > -1e-30);  // a unit: norm 1
}

TEST(LogCurve, NormInequalitiesOnCorpus) {
  for (const auto& F : corpus::forms(8)) {
    if (!F.is_monic()) continue;
    RootSystem rs = find_roots(F);
    EXPECT_TRUE(phi_trivial_norm_bound(F, rs).outcome.holds) << F.str();
    PhiVector p0 = phi_of_solution(rs, F, 1, 0);
    for (const auto& s : enumerate_solutions(F, rs, 300)) {
      if (s.y == 0) continue;
      int i = classify_related(rs, F, s.x, s.y);
      Ball d = abs(CBall(Ball::from_z(s.x, rs.prec)) - rs.roots[i] * Ball::from_z(s.y, rs.prec));
      EXPECT_TRUE(check_phi_norm_inequality(phi_of_solution(rs, F, s.x, s.y), p0, d).holds) << F.str();
    }
  }
}

TEST(LogCurve, TrivialBoundNeedsMonic) {
  QuarticForm F(2, 0, 0, 0, -1);
  EXPECT_THROW(phi_trivial_norm_bound(F, find_roots(F)), ContractError);
}

TEST(LogCurve, BAndCVectors) {
  auto b = b_vector(0);
  EXPECT_EQ(b[0], mpq_class(3, 4));
  EXPECT_EQ(b[1], mpq_class(-1, 4));
  // b_i . (1,1,1,1) = 0 and c_i = b_i + b_4 / 3
  std::array<mpq_class, 4> ones{1, 1, 1, 1};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(exact_dot(b_vector(i), ones), 0);
  auto c = c_vector(0, 3);
  EXPECT_EQ(c[3], mpq_class(-1, 4) + mpq_class(1, 4));
  EXPECT_EQ(c[0], mpq_class(3, 4) - mpq_class(1, 12));
}

TEST(LogCurve, LinearFormTIsAntisymmetricAndHomogeneous) {
  RootSystem rs = find_roots(kPaper);
  LinearFormT a = t_linear_form(rs, 8, 7, 0, 1, 2);
  LinearFormT b = t_linear_form(rs, 8, 7, 1, 0, 2);
  EXPECT_TRUE((a.value + b.value).contains_zero());
  Ball at = t_linear_form_at(rs, CBall(Ball::from_q(mpq_class(8, 7), rs.prec)), 0, 1, 2);
  EXPECT_TRUE(abs(a.value - at).mid().to_double() < 1e-30);
  EXPECT_THROW(t_linear_form(rs, 8, 7, 0, 0, 2), ContractError);
}

TEST(LogCurve, SmallTSelection) {
  RootSystem rs = find_roots(kPaper);
  PhiVector p = phi_of_solution(rs, kPaper, 8, 7);
  SmallT st = select_small_tij(rs, 8, 7, 2, p);
  EXPECT_EQ(st.all.size(), 3u);
  for (const auto& t : st.all) EXPECT_TRUE(abs(st.best.value).mid() <= abs(t.value).mid());
}
