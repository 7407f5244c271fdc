#pragma once

// Univariate integer and rational polynomials of small degree: exact
// evaluation, Sturm counting, resultants and ball evaluation.
//
// Coefficients are stored in ascending order, c[i] is the coefficient of x^i.

#include <gmpxx.h>

#include <vector>

#include "thueq/real.hpp"

namespace thueq {

using IntPoly = std::vector<mpz_class>;
using RatPoly = std::vector<mpq_class>;

template <class P>
void trim(P& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class P>
int degree(const P& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

template <class P>
P derivative(const P& p) {
  P d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

inline mpz_class eval(const IntPoly& p, const mpz_class& x) {
  mpz_class acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline mpq_class eval(const RatPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline RatPoly to_rat(const IntPoly& p) {
  RatPoly r(p.begin(), p.end());
  trim(r);
  return r;
}

inline mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Remainder of a by b over Q.
inline RatPoly poly_rem(RatPoly a, const RatPoly& b) {
  int db = degree(b);
  trim(a);
  while (degree(a) >= db) {
    int da = degree(a);
    mpq_class q = a[da] / b[db];
    for (int i = 0; i <= db; ++i) a[da - db + i] -= q * b[i];
    trim(a);
  }
  return a;
}

/// Exact division of integer polynomials; returns false if b does not divide a
/// in Z[x].
inline bool poly_divides(const IntPoly& a, const IntPoly& b, IntPoly* quotient = nullptr) {
  int db = degree(b);
  if (db < 0) return false;
  IntPoly r = a;
  trim(r);
  int da = degree(r);
  if (da < db) {
    if (quotient) quotient->clear();
    return da < 0;
  }
  IntPoly q(da - db + 1, mpz_class(0));
  for (int k = da; k >= db; --k) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), b[db].get_mpz_t())) return false;
    mpz_class c = r[k] / b[db];
    q[k - db] = c;
    for (int i = 0; i <= db; ++i) r[k - db + i] -= c * b[i];
  }
  trim(r);
  if (!r.empty()) return false;
  if (quotient) {
    trim(q);
    *quotient = q;
  }
  return true;
}

namespace detail {

inline int sign_at_inf(const RatPoly& p, bool neg) {
  int d = degree(p);
  if (d < 0) return 0;
  int s = sgn(p[d]);
  return (neg && (d % 2 == 1)) ? -s : s;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace detail

/// Number of distinct real roots, by a Sturm sequence over Q.
inline int count_real_roots(const IntPoly& p) {
  std::vector<RatPoly> seq;
  seq.push_back(to_rat(p));
  seq.push_back(derivative(seq[0]));
  while (degree(seq.back()) > 0) {
    RatPoly r = poly_rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
  }
  std::vector<int> lo, hi;
  for (const auto& q : seq) {
    lo.push_back(detail::sign_at_inf(q, true));
    hi.push_back(detail::sign_at_inf(q, false));
  }
  return detail::variations(lo) - detail::variations(hi);
}

/// Determinant of a square integer matrix by fraction-free elimination.
inline mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Resultant of a and b via the Sylvester matrix.
inline mpz_class resultant(const IntPoly& a, const IntPoly& b) {
  int m = degree(a), n = degree(b);
  if (m < 0 || n < 0) return 0;
  size_t N = static_cast<size_t>(m + n);
  if (N == 0) return 1;
  std::vector<std::vector<mpz_class>> s(N, std::vector<mpz_class>(N, mpz_class(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = a[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = b[n - i];
  return bareiss_det(std::move(s));
}

/// Polynomial evaluated at a complex ball (Horner).
inline CBall eval_ball(const IntPoly& p, const CBall& z) {
  mpfr_prec_t bits = z.prec();
  CBall acc(Ball::from_int(0, bits));
  for (size_t i = p.size(); i-- > 0;) acc = acc * z + CBall(Ball::from_z(p[i], bits));
  return acc;
}

inline Ball eval_ball(const IntPoly& p, const Ball& x) {
  Ball acc = Ball::from_int(0, x.prec());
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + Ball::from_z(p[i], x.prec());
  return acc;
}

}  // namespace thueq
