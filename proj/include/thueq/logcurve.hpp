#pragma once

// The logarithmic curve
//
//   phi_m(x,y) = log| D^(1/(4k)) (x - y alpha_m) / |f'(alpha_m)|^(1/k) |
//
// its parametric form phi(t), and the linear forms T_{i,j}.

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

#include "thueq/errors.hpp"
#include "thueq/form.hpp"
#include "thueq/predicate.hpp"
#include "thueq/roots.hpp"

namespace thueq {

inline constexpr int kDefaultK = 90;

using Vec4 = std::array<Ball, 4>;

inline Ball norm2(const Vec4& v) {
  Ball s = v[0] * v[0];
  for (int i = 1; i < 4; ++i) s = s + v[i] * v[i];
  return sqrt(s);
}

inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Ball dot(const Vec4& a, const Vec4& b) {
  Ball s = a[0] * b[0];
  for (int i = 1; i < 4; ++i) s = s + a[i] * b[i];
  return s;
}

struct PhiVector {
  Vec4 c;
  int k = kDefaultK;
  Ball norm;
};

namespace detail {

// (1/(4k)) log|D| - (1/k) log|f'(alpha_m)|, the part of phi_m that does not
// depend on the point.
inline Vec4 phi_offset(const RootSystem& rs, const QuarticForm& F, int k) {
  const mpfr_prec_t p = rs.prec;
  Ball logD = log(abs(Ball::from_z(F.disc(), p)));
  Ball K = Ball::from_int(k, p);
  Ball base = logD / (Ball::from_int(4, p) * K);
  Vec4 out;
  for (int m = 0; m < 4; ++m) out[m] = base - log(abs(rs.fprime[m])) / K;
  return out;
}

}  // namespace detail

/// phi at an integer point with |F(x,y)| = 1.
inline PhiVector phi_of_solution(const RootSystem& rs, const QuarticForm& F, const mpz_class& x,
                                 const mpz_class& y, int k = kDefaultK) {
  if (k <= 0) throw ContractError("phi: k must be positive");
  mpz_class v = F(x, y);
  if (v != 1 && v != -1)
    throw ContractError("phi: (" + x.get_str() + "," + y.get_str() + ") is not a solution");
  const mpfr_prec_t p = rs.prec;
  Vec4 off = detail::phi_offset(rs, F, k);
  CBall X(Ball::from_z(x, p));
  Ball Y = Ball::from_z(y, p);
  PhiVector out;
  out.k = k;
  for (int m = 0; m < 4; ++m) out.c[m] = off[m] + log(abs(X - rs.roots[m] * Y));
  out.norm = norm2(out.c);
  return out;
}

/// phi(t) with y(t) = |f(t)|^(-1/4), x(t) = t y(t).
inline PhiVector phi_of_t(const RootSystem& rs, const QuarticForm& F, const Ball& t,
                          int k = kDefaultK) {
  if (k <= 0) throw ContractError("phi: k must be positive");
  const mpfr_prec_t p = rs.prec;
  Ball ft = eval_ball(F.dehomogenized(), t.with_prec(p));
  if (ft.contains_zero()) throw ContractError("phi_of_t: t is at a pole (root of f)");
  Ball logy = -log(abs(ft)) / Ball::from_int(4, p);
  Vec4 off = detail::phi_offset(rs, F, k);
  CBall T(t.with_prec(p));
  PhiVector out;
  out.k = k;
  for (int m = 0; m < 4; ++m) {
    Ball d = abs(T - rs.roots[m]);
    if (d.contains_zero()) throw ContractError("phi_of_t: t is at a pole (root of f)");
    out.c[m] = off[m] + log(d) + logy;
  }
  out.norm = norm2(out.c);
  return out;
}

/// ||phi(x,y)|| <= 6 log(1/|x - alpha_i y|) + ||phi(1,0)||, with
/// min_dist = |x - alpha_i y| for the related root.
inline Predicate check_phi_norm_inequality(const PhiVector& phi, const PhiVector& phi0,
                                           const Ball& min_dist) {
  const mpfr_prec_t p = phi.norm.prec();
  Ball rhs = Ball::from_int(6, p) * (-log(min_dist)) + phi0.norm;
  return predicate_le("phi.norm", phi.norm, rhs);
}

struct TrivialBound {
  Ball bound;  ///< 4 log(2^(9/k) |D|^(-3/(4k)) M^(6/k))
  Ball norm;   ///< ||phi(1,0)||
  Predicate outcome;
};

/// Upper bound for ||phi(1,0)|| of a monic form.
inline TrivialBound phi_trivial_norm_bound(const QuarticForm& F, const RootSystem& rs,
                                           int k = kDefaultK) {
  if (!F.is_monic()) throw ContractError("phi_trivial_norm_bound: form must be monic");
  const mpfr_prec_t p = rs.prec;
  Ball K = Ball::from_int(k, p);
  Ball logD = log(abs(Ball::from_z(F.disc(), p)));
  Ball inner = (Ball::from_int(9, p) * const_log2(p) -
                Ball::from_q(mpq_class(3, 4), p) * logD + Ball::from_int(6, p) * log(rs.mahler)) /
               K;
  Ball bound = Ball::from_int(4, p) * inner;
  PhiVector phi0 = phi_of_solution(rs, F, 1, 0, k);
  TrivialBound out{bound, phi0.norm, predicate_le("phi0.norm", phi0.norm, bound)};
  return out;
}

/// b_i = (1/4)(3 e_i - sum of the other unit vectors).
inline std::array<mpq_class, 4> b_vector(int i) {
  std::array<mpq_class, 4> b;
  for (int j = 0; j < 4; ++j) b[j] = (j == i) ? mpq_class(3, 4) : mpq_class(-1, 4);
  return b;
}

/// c_i = b_i + b_anchor / 3.
inline std::array<mpq_class, 4> c_vector(int i, int anchor = 3) {
  auto b = b_vector(i), b4 = b_vector(anchor);
  for (int j = 0; j < 4; ++j) b[j] += b4[j] / 3;
  return b;
}

inline mpq_class exact_dot(const std::array<mpq_class, 4>& a, const std::array<mpq_class, 4>& b) {
  mpq_class s = 0;
  for (int j = 0; j < 4; ++j) s += a[j] * b[j];
  return s;
}

struct LinearFormT {
  int i = 0, j = 0, anchor = 0;
  Ball value;     ///< log|(t - a_i)(a_anchor - a_j) / ((t - a_j)(a_anchor - a_i))|
  Ball constant;  ///< log|(a_anchor - a_j) / (a_anchor - a_i)|
  std::vector<long> m;   ///< lattice coordinates of the solution, if known
  bool decomposed = false;
  Ball from_decomposition;  ///< constant + sum m_k (L_k[i] - L_k[j])
};

/// T_{i,j} at the solution (x, y), evaluated homogeneously so y = 0 is allowed.
inline LinearFormT t_linear_form(const RootSystem& rs, const mpz_class& x, const mpz_class& y,
                                 int i, int j, int anchor) {
  if (i == j || i == anchor || j == anchor || i < 0 || j < 0 || anchor < 0 || i > 3 || j > 3 ||
      anchor > 3)
    throw ContractError("t_linear_form: indices must be distinct and in range");
  const mpfr_prec_t p = rs.prec;
  CBall X(Ball::from_z(x, p));
  Ball Y = Ball::from_z(y, p);
  const auto& a = rs.roots;
  LinearFormT T;
  T.i = i;
  T.j = j;
  T.anchor = anchor;
  T.constant = log(abs(a[anchor] - a[j])) - log(abs(a[anchor] - a[i]));
  T.value = log(abs(X - a[i] * Y)) - log(abs(X - a[j] * Y)) + T.constant;
  return T;
}

/// Value of T_{i,j} with x/y replaced by an arbitrary complex point.
inline Ball t_linear_form_at(const RootSystem& rs, const CBall& t, int i, int j, int anchor) {
  const auto& a = rs.roots;
  return log(abs(t - a[i])) - log(abs(t - a[j])) + log(abs(a[anchor] - a[j])) -
         log(abs(a[anchor] - a[i]));
}

struct SmallT {
  LinearFormT best;
  std::vector<LinearFormT> all;
  Ball threshold;  ///< exp(-||phi|| / 6)
  Predicate outcome;
};

/// The pair (i, j) among the non-anchor roots minimising |T_{i,j}|.
inline SmallT select_small_tij(const RootSystem& rs, const mpz_class& x, const mpz_class& y,
                               int anchor, const PhiVector& phi) {
  std::vector<int> others;
  for (int i = 0; i < 4; ++i)
    if (i != anchor) others.push_back(i);
  SmallT out;
  for (size_t u = 0; u < others.size(); ++u)
    for (size_t v = u + 1; v < others.size(); ++v)
      out.all.push_back(t_linear_form(rs, x, y, others[u], others[v], anchor));
  size_t best = 0;
  for (size_t u = 1; u < out.all.size(); ++u)
    if (abs(out.all[u].value).mid() < abs(out.all[best].value).mid()) best = u;
  out.best = out.all[best];
  out.threshold = exp(-phi.norm / Ball::from_int(6, phi.norm.prec()));
  out.outcome = predicate_lt("tij.small", abs(out.best.value), out.threshold);
  return out;
}

}  // namespace thueq
