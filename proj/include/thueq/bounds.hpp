#pragma once

// Quantitative bounds: Matveev's lower bound for linear forms in logarithms,
// Stewart's count of small solutions, the gap principles, and the
// per-signature solution-count tables.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "thueq/errors.hpp"
#include "thueq/logcurve.hpp"
#include "thueq/predicate.hpp"
#include "thueq/roots.hpp"
#include "thueq/search.hpp"

namespace thueq {

struct Signature {
  int r = 0, s = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
  std::string str() const { return std::to_string(r) + "," + std::to_string(s); }
};

inline Signature signature_of(const RootSystem& rs) { return {rs.r, rs.s}; }

// ---------------------------------------------------------------- tables

struct CountTable {
  int U = 0;   ///< bound on all solutions
  int N1 = 0;  ///< 0 < y < M^3.5
  int N2 = 0;  ///< y >= M^3.5
  int A = 0;   ///< size of the exceptional set
};

inline CountTable count_tables(Signature sig) {
  if (sig == Signature{0, 2}) return {6, 5, 0, 1};
  if (sig == Signature{2, 1}) return {14, 9, 4, 1};
  if (sig == Signature{4, 0}) return {26, 12, 8, 6};
  throw ContractError("count_tables: no table row for signature (" + sig.str() + ")");
}

// ---------------------------------------------------------------- Matveev

struct MatveevConstants {
  Ball C, C0, W0;
};

inline Ball factorial_ball(int n, mpfr_prec_t p) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Ball::from_z(f, p);
}

/// C(n, chi), C0 and W0 of Matveev's theorem.
inline MatveevConstants matveev_constants(int n, int chi, int d, const Ball& B) {
  if (n < 1) throw ContractError("matveev: n must be at least 1");
  if (chi != 1 && chi != 2) throw ContractError("matveev: chi must be 1 or 2");
  if (d < 1) throw ContractError("matveev: d must be at least 1");
  const mpfr_prec_t p = B.prec();
  if (B.hi() < Real(1L, p)) throw ContractError("matveev: B must be at least 1");
  Ball e = const_e(p);
  Ball N = Ball::from_int(n, p), D = Ball::from_int(d, p);
  auto ipow = [](Ball x, int k) {
    Ball r = Ball::from_int(1, x.prec());
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
  };
  MatveevConstants out;
  out.C = Ball::from_int(16, p) / (factorial_ball(n, p) * Ball::from_int(chi, p)) * ipow(e, n) *
          Ball::from_int(2 * n + 1 + 2 * chi, p) * Ball::from_int(n + 2, p) *
          ipow(Ball::from_int(4 * n + 4, p), n + 1) * ipow(e * N / Ball::from_int(2, p), chi);
  // log(e^(4.4n+7) n^5.5 d^2 log(en))
  Ball ex = Ball::from_q(mpq_class(22 * n + 35, 5), p);
  out.C0 = ex + Ball::from_q(mpq_class(11, 2), p) * log(N) + Ball::from_int(2, p) * log(D) +
           log(log(e * N));
  // log(1.5 e B d log(ed))
  out.W0 = log(Ball::from_q(mpq_class(3, 2), p) * e * B * D * log(e * D));
  return out;
}

struct MatveevInput {
  int n = 1;
  int d = 1;
  int chi = 1;
  std::vector<Ball> A;
  Ball B;
};

struct MatveevBound {
  MatveevConstants k;
  Ball omega;
  Ball value;  ///< -C C0 W0 d^2 Omega, a lower bound for log|L|
  bool degenerate = false;
  std::string label = "valid under the hypotheses of Matveev's theorem";
};

inline MatveevBound matveev_lower_bound(const MatveevInput& in) {
  if (static_cast<int>(in.A.size()) != in.n)
    throw ContractError("matveev: expected " + std::to_string(in.n) + " heights, got " +
                        std::to_string(in.A.size()));
  const mpfr_prec_t p = in.B.prec();
  MatveevBound out;
  out.k = matveev_constants(in.n, in.chi, in.d, in.B);
  out.omega = Ball::from_int(1, p);
  for (const auto& a : in.A) {
    if (a.hi() < Real(0L, p)) throw ContractError("matveev: A_j must be nonnegative");
    out.omega = out.omega * a;
  }
  out.degenerate = std::any_of(in.A.begin(), in.A.end(), [](const Ball& a) { return a.mid().is_zero() && a.is_exact(); });
  Ball d2 = Ball::from_int(static_cast<long>(in.d) * in.d, p);
  out.value = -(out.k.C * out.k.C0 * out.k.W0 * d2 * out.omega);
  if (out.degenerate) {
    out.value = Ball::from_int(0, p);
    out.label = "degenerate: some A_j is zero";
  }
  return out;
}

// ---------------------------------------------------------------- Stewart

/// beta_i(x, y) = (q alpha_i - p) / (x - alpha_i y) with p y - q x = 1; these
/// are the roots of a form equivalent to F attached to the solution.
inline std::array<CBall, 4> stewart_betas(const RootSystem& rs, const mpz_class& x, const mpz_class& y) {
  mpz_class g, s, t;
  // s y + t x = 1, so p = s and q = -t
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), y.get_mpz_t(), x.get_mpz_t());
  if (g != 1 && g != -1) throw ContractError("stewart_betas: x and y must be coprime");
  mpz_class P = s * g, Q = -t * g;
  const mpfr_prec_t pr = rs.prec;
  std::array<CBall, 4> out;
  CBall X(Ball::from_z(x, pr));
  Ball Y = Ball::from_z(y, pr);
  for (int i = 0; i < 4; ++i) {
    CBall num = rs.roots[i] * Ball::from_z(Q, pr) - CBall(Ball::from_z(P, pr));
    out[i] = num / (X - rs.roots[i] * Y);
  }
  return out;
}

struct StewartReport {
  Ball Y0;
  /// X_i for each representative root index (conjugates merged); y-sorted
  std::vector<std::pair<int, std::vector<Solution>>> sets;
  std::vector<Solution> X;  ///< solutions with 1 <= y <= Y0 minus each set's top element
  Predicate S60;            ///< ((2/7)^4 M)^|X| <= Y0^(r+s)
  Predicate sm5;            ///< |X| < (r+s) 65 log Y0 / (64 log M)
  std::vector<Predicate> ratio;  ///< consecutive members of each X_i
  bool bound_applicable = false;  ///< (2/7)^4 M >= M^(64/65)
  bool M_degenerate = false;      ///< M <= 1: log M vanishes
};

inline StewartReport stewart_small_count(const QuarticForm& F, const RootSystem& rs, const Ball& Y0,
                                         const std::vector<Solution>& sols) {
  const mpfr_prec_t p = rs.prec;
  StewartReport rep;
  rep.Y0 = Y0;
  if (Y0.hi() < Real(1L, p)) throw ContractError("stewart_small_count: Y0 must be at least 1");
  const Ball M = rs.mahler;
  const int rs_count = rs.r + rs.s;
  std::vector<Solution> inrange;
  for (const auto& s : sols) {
    if (s.y < 1) continue;
    if (Ball::from_z(s.y, p).lo() > Y0.hi()) continue;
    if (F(s.x, s.y) != 1 && F(s.x, s.y) != -1) throw ContractError("stewart_small_count: not a solution");
    inrange.push_back(s);
  }
  std::sort(inrange.begin(), inrange.end());
  std::vector<bool> is_top(inrange.size(), false);
  for (int i = 0; i < 4; ++i) {
    if (i >= rs.r && rs.conj_index(i) < i) continue;
    std::vector<Solution> set;
    std::vector<size_t> idx;
    for (size_t t = 0; t < inrange.size(); ++t) {
      const auto& s = inrange[t];
      Ball L = abs(CBall(Ball::from_z(s.x, p)) - rs.roots[i] * Ball::from_z(s.y, p));
      Ball half = Ball::from_int(1, p) / (Ball::from_int(2, p) * Ball::from_z(s.y, p));
      if (possibly_le(L, half)) {
        set.push_back(s);
        idx.push_back(t);
      }
    }
    if (!idx.empty()) is_top[idx.back()] = true;
    // growth ratio between consecutive members
    for (size_t t = 0; t + 1 < set.size(); ++t) {
      const auto& s1 = set[t];
      auto betas = stewart_betas(rs, s1.x, s1.y);
      int j = -1;
      for (int u = 0; u < 4 && j < 0; ++u) {
        Ball Lu = abs(CBall(Ball::from_z(s1.x, p)) - rs.roots[u] * Ball::from_z(s1.y, p));
        if (!(Lu.hi() < Real(1L, p))) j = u;
      }
      if (j < 0) continue;
      mpz_class m = betas[j].re.mid().round_z();
      Ball dev = abs(betas[i] - CBall(Ball::from_z(m, p)));
      Ball rhs = Ball::from_q(mpq_class(2, 7), p) * max(Ball::from_int(1, p), dev);
      Ball lhs = Ball::from_z(set[t + 1].y, p) / Ball::from_z(s1.y, p);
      Predicate pr = predicate_le("beta.ratio", rhs, lhs);
      pr.applicable = false;
      pr.note = "X_" + std::to_string(i) + " y=" + s1.y.get_str() + "->" + set[t + 1].y.get_str();
      rep.ratio.push_back(pr);
    }
    rep.sets.emplace_back(i, std::move(set));
  }
  for (size_t t = 0; t < inrange.size(); ++t)
    if (!is_top[t]) rep.X.push_back(inrange[t]);
  const Ball nX = Ball::from_int(static_cast<long>(rep.X.size()), p);
  const Ball RS = Ball::from_int(rs_count, p);
  const Ball base = Ball::from_q(mpq_class(16, 2401), p) * M;  // (2/7)^4 M
  rep.S60 = predicate_le("S60", nX * log(base), RS * log(Y0));
  rep.S60.applicable = false;
  rep.S60.note = "assumes M(F) minimal in its class";
  rep.M_degenerate = !(M.lo() > Real(1L, p));
  // (2/7)^4 M >= M^(64/65)  <=>  M^(1/65) >= (7/2)^4
  rep.bound_applicable =
      !rep.M_degenerate && possibly_le(Ball::from_int(65 * 4, p) * log(Ball::from_q(mpq_class(7, 2), p)), log(M));
  if (rep.M_degenerate) {
    rep.sm5 = Predicate{"sm5", true, 0, false, "M(F) = 1: bound not applicable"};
  } else {
    Ball rhs = RS * Ball::from_int(65, p) * log(Y0) / (Ball::from_int(64, p) * log(M));
    rep.sm5 = predicate_lt("sm5", nX, rhs);
    rep.sm5.applicable = false;
    rep.sm5.note = rep.bound_applicable ? "M large enough" : "M below (7/2)^260: bound reported only";
  }
  return rep;
}

// ---------------------------------------------------------------- gaps

/// y1^3 / M^2 <= y2 for two solutions related to the same root.
inline Predicate cube_gap_check(const Ball& y1, const Ball& y2, const Ball& M) {
  Predicate pr = predicate_le("S65", y1 * y1 * y1 / (M * M), y2);
  pr.applicable = certainly_lt(M * M, y1) && certainly_lt(y1, y2);
  return pr;
}

inline Predicate cube_gap_check(const Solution& s1, const Solution& s2, const Ball& M) {
  const mpfr_prec_t p = M.prec();
  const Solution& a = s1.y <= s2.y ? s1 : s2;
  const Solution& b = s1.y <= s2.y ? s2 : s1;
  return cube_gap_check(Ball::from_z(a.y, p), Ball::from_z(b.y, p), M);
}

/// 2^(19/4) / (sqrt 3 |D|)^(1/4) M^(9/4): solutions related to a non-real
/// root have |y| below this.
inline Ball complex_root_ybound(const RootSystem& rs, const QuarticForm& F, int root_index) {
  if (root_index < 0 || root_index > 3) throw ContractError("complex_root_ybound: index out of range");
  if (rs.is_real(root_index)) throw ContractError("complex_root_ybound: root " + std::to_string(root_index) + " is real");
  const mpfr_prec_t p = rs.prec;
  Ball D = abs(Ball::from_z(F.disc(), p));
  if (D.contains_zero()) throw ContractError("complex_root_ybound: zero discriminant");
  Ball num = pow(Ball::from_int(2, p), Ball::from_q(mpq_class(19, 4), p));
  Ball den = pow(sqrt(Ball::from_int(3, p)) * D, Ball::from_q(mpq_class(1, 4), p));
  return num / den * pow(rs.mahler, Ball::from_q(mpq_class(9, 4), p));
}

inline bool norm_less(const PhiVector& a, const PhiVector& b) { return a.norm.mid() < b.norm.mid(); }

/// Exponential gap for three solutions sharing a related real root, given in
/// order of increasing |y|. Norms are taken as given: a triple whose norms do
/// not increase simply fails the inequality.
inline Predicate exp_gap_check(const std::array<PhiVector, 3>& phis, Signature sig, std::optional<Ball> volume = {}) {
  const mpfr_prec_t p = phis[0].norm.prec();
  Ball growth = exp(phis[0].norm / Ball::from_int(6, p));
  if (sig == Signature{4, 0}) {
    Ball t = Ball::from_q(mpq_class(14, 100000), p) * growth;
    return predicate_lt("exg5", t, phis[2].norm);
  }
  if (sig == Signature{2, 1}) {
    if (!volume) throw ContractError("exp_gap_check: signature (2,1) needs the lattice volume");
    Ball t = *volume / Ball::from_int(4, p) * growth;
    return predicate_lt("exg5alt", t, phis[2].norm);
  }
  if (sig == Signature{0, 2}) return Predicate{"exg5", true, 0, false, "signature (0,2): no large solutions"};
  throw ContractError("exp_gap_check: bad signature");
}

struct AreaReport {
  Ball area;
  Ball upper;  ///< 2 ||phi_3|| exp(-||phi_1|| / 6)
  Ball lower;  ///< sqrt 3 (log log 4 / log 4)^6
  bool collinear = false;
  Predicate up5;          ///< area < upper
  Predicate lower_bound;  ///< lower < area
  Predicate chain;        ///< lower < upper
  std::optional<Predicate> AV;  ///< 2A >= Vol, signature (2,1)
  std::vector<Predicate> sides;  ///< every side > 2 (log log 4 / log 4)^3
};

inline Ball side_lower_bound(mpfr_prec_t p) {
  Ball l4 = log(Ball::from_int(4, p));
  Ball q = log(l4) / l4;
  return Ball::from_int(2, p) * q * q * q;
}

/// Same ordering convention as exp_gap_check.
inline AreaReport area_sandwich_check(const std::array<PhiVector, 3>& phis, std::optional<Ball> volume = {}) {
  const mpfr_prec_t p = phis[0].norm.prec();
  AreaReport rep;
  Vec4 u = phis[1].c - phis[0].c, v = phis[2].c - phis[0].c;
  Ball uu = dot(u, u), vv = dot(v, v), uv = dot(u, v);
  Ball g = uu * vv - uv * uv;
  if (g.hi() <= Real(0L, p) || g.contains_zero()) {
    rep.collinear = true;
    rep.area = Ball::from_int(0, p);
  } else {
    rep.area = sqrt(g) / Ball::from_int(2, p);
  }
  rep.upper = Ball::from_int(2, p) * phis[2].norm * exp(-phis[0].norm / Ball::from_int(6, p));
  Ball l4 = log(Ball::from_int(4, p));
  Ball q = log(l4) / l4;
  Ball q3 = q * q * q;
  rep.lower = sqrt(Ball::from_int(3, p)) * q3 * q3;
  rep.up5 = predicate_lt("up5", rep.area, rep.upper);
  rep.lower_bound = predicate_lt("area.lower", rep.lower, rep.area);
  rep.chain = predicate_lt("area.chain", rep.lower, rep.upper);
  rep.up5.applicable = rep.lower_bound.applicable = rep.chain.applicable = false;
  if (rep.collinear) rep.lower_bound.note = "collinear";
  if (volume) {
    Predicate av = predicate_le("AV", *volume, Ball::from_int(2, p) * rep.area);
    av.applicable = false;
    rep.AV = av;
  }
  Ball sl = side_lower_bound(p);
  const Vec4* pts[3] = {&phis[0].c, &phis[1].c, &phis[2].c};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      Predicate s = predicate_lt("side", sl, norm2(*pts[a] - *pts[b]));
      s.applicable = false;
      rep.sides.push_back(s);
    }
  return rep;
}

// ---------------------------------------------------------------- D0 chain

struct GapChain {
  Ball K;       ///< log|T| > -K r1^4 log r3 (signature (4,0))
  double R_star = 0;      ///< r1 beyond which the gap and Matveev bounds clash
  double K1 = 0;          ///< r3 < K1 r1^4 at r1 = R_star
  double log10_D0 = 0;    ///< candidate, max of both thresholds
  double log10_D_stewart = 0;  ///< log10(4^4 (7/2)^1560)
};

/// For signature (4,0): A_1 = 48 log 2 + 48 r1 <= 96 r1, A_k <= 24 r1 (k = 2..4),
/// B = r3 / 12, d = 24, chi = 1, and W0 <= 2 log r3 once log r3 >= 3.6.
inline GapChain gap_chain_40(mpfr_prec_t p = kDefaultBits) {
  GapChain g;
  MatveevConstants k = matveev_constants(4, 1, 24, Ball::from_int(1, p));
  Ball omega_per_r1 = Ball::from_int(96, p) * Ball::from_int(24 * 24 * 24, p);
  g.K = k.C * k.C0 * Ball::from_int(2, p) * Ball::from_int(24 * 24, p) * omega_per_r1;
  const double logK6 = std::log(6.0) + log(g.K).mid().to_double();
  // r3 > 0.00014 exp(r1/6) and r3 / log r3 < 6 K r1^4. With x = lower bound
  // for r3 the first forces x / log x < 6 K r1^4 whenever x > e.
  auto clash = [&](double r1) {
    double lx = std::log(0.00014) + r1 / 6;  // log x
    if (lx <= 1) return false;
    return lx - std::log(lx) >= logK6 + 4 * std::log(r1);
  };
  double lo = 1, hi = 2;
  while (!clash(hi)) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (clash(mid) ? hi : lo) = mid;
  }
  g.R_star = hi;
  // largest r3 with r3 / log r3 < 6 K R^4
  double A = logK6 + 4 * std::log(hi);  // log of the right side
  double lx = A + std::log(A);
  for (int it = 0; it < 100; ++it) lx = A + std::log(lx);
  g.K1 = std::exp(lx - 4 * std::log(hi));
  // 1/2 log(|D|^(1/12) / 2) >= R  <=>  log D >= 12 (2R + log 2)
  double log10_gap = 12 * (2 * hi + std::log(2.0)) / std::log(10.0);
  g.log10_D_stewart = std::log10(256.0) + 1560 * std::log10(3.5);
  g.log10_D0 = std::max(log10_gap, g.log10_D_stewart);
  return g;
}

}  // namespace thueq
