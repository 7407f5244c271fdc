#pragma once

// Certified roots of f(x) = F(x,1).
//
// Approximations come from Aberth iteration at the working precision. The
// signature is fixed beforehand by an exact Sturm count, so it never depends
// on thresholding imaginary parts. Each approximation z_i is then certified by
// the Weierstrass correction W_i = f(z_i) / (a0 prod_{j != i} (z_i - z_j)):
// the disks D(z_i, 4|W_i|) contain all roots and any isolated disk contains
// exactly one. Real-centred isolated disks therefore hold real roots.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "thueq/errors.hpp"
#include "thueq/form.hpp"
#include "thueq/poly.hpp"
#include "thueq/real.hpp"

namespace thueq {

inline constexpr mpfr_prec_t kMaxBits = 8192;

/// Working precision from THUEQ_PRECISION_BITS, else the default.
inline mpfr_prec_t env_precision(mpfr_prec_t fallback = kDefaultBits) {
  const char* s = std::getenv("THUEQ_PRECISION_BITS");
  if (!s || !*s) return fallback;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 32 || v > kMaxBits)
    throw ParseError(std::string("THUEQ_PRECISION_BITS out of range: '") + s + "'");
  return static_cast<mpfr_prec_t>(v);
}

struct RootSystem {
  mpfr_prec_t prec = kDefaultBits;
  int r = 0;  ///< real roots
  int s = 0;  ///< conjugate pairs
  /// Reals ascending, then (z, conj z) pairs by ascending real part, Im z > 0 first.
  std::array<CBall, 4> roots;
  /// f'(alpha_i) = a0 prod_{j != i} (alpha_i - alpha_j)
  std::array<CBall, 4> fprime;
  Ball mahler;

  bool is_real(int i) const { return i < r; }
  /// Index of the complex conjugate of root i (i itself when real).
  int conj_index(int i) const {
    if (i < r) return i;
    return ((i - r) % 2 == 0) ? i + 1 : i - 1;
  }
  Real radius(int i) const { return roots[i].re.rad(); }
};

namespace detail {

struct Cx {
  Real re, im;
};

inline Cx cx_mul(const Cx& a, const Cx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cx cx_div(const Cx& a, const Cx& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Cx cx_sub(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx cx_add(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Real cx_abs(const Cx& a) { return sqrt(a.re * a.re + a.im * a.im); }

// f and f' at z by Horner, coefficients ascending.
inline void horner2(const std::vector<Real>& c, const Cx& z, Cx& f, Cx& df) {
  mpfr_prec_t p = z.re.prec();
  f = {Real(p), Real(p)};
  df = {Real(p), Real(p)};
  for (size_t i = c.size(); i-- > 0;) {
    df = cx_add(cx_mul(df, z), f);
    f = cx_mul(f, z);
    f.re = f.re + c[i];
  }
}

// Aberth iteration; returns false if it fails to settle.
inline bool aberth(const std::vector<Real>& c, std::array<Cx, 4>& z, mpfr_prec_t p) {
  // Rounding noise near clustered roots keeps steps above ulp level; the
  // certification only needs radii below 2^(-p/2).
  const long tol_exp = -3 * static_cast<long>(p) / 4;
  for (int it = 0; it < 50 * static_cast<int>(p); ++it) {
    bool done = true;
    for (int i = 0; i < 4; ++i) {
      Cx f, df;
      horner2(c, z[i], f, df);
      if (f.re.is_zero() && f.im.is_zero()) continue;
      Cx w = cx_div(f, df);
      Cx sum{Real(p), Real(p)};
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        Cx d = cx_sub(z[i], z[j]);
        Cx one{Real(1L, p), Real(p)};
        sum = cx_add(sum, cx_div(one, d));
      }
      Cx one{Real(1L, p), Real(p)};
      Cx denom = cx_sub(one, cx_mul(w, sum));
      Cx step = cx_div(w, denom);
      if (!step.re.is_finite() || !step.im.is_finite()) return false;
      z[i] = cx_sub(z[i], step);
      Real scale = std::max(Real(1L, p), cx_abs(z[i]));
      Real rel = cx_abs(step) / scale;
      if (!rel.is_zero() && mpfr_get_exp(rel.raw()) > tol_exp) done = false;
    }
    if (done) return true;
  }
  return false;
}

}  // namespace detail

namespace detail {

// One attempt at precision p; returns false if certification fails.
inline bool try_find_roots(const QuarticForm& F, int r, mpfr_prec_t p, RootSystem& out) {
  const IntPoly f = F.dehomogenized();
  std::vector<Real> c;
  for (const auto& a : f) c.emplace_back(a, p);

  // Initial configuration: circle around the centroid, radius from the
  // Fujiwara bound, rotated off the real axis.
  double lead = std::fabs(f[4].get_d());
  double R = 0;
  for (int i = 1; i <= 4; ++i) {
    double q = std::fabs(f[4 - i].get_d()) / lead;
    if (i == 4) q /= 2;
    R = std::max(R, std::pow(q, 1.0 / i));
  }
  R = std::max(2 * R, 1e-3);
  double centre = -f[3].get_d() / (4 * f[4].get_d());
  std::array<Cx, 4> z;
  for (int k = 0; k < 4; ++k) {
    double ang = 2 * M_PI * k / 4 + 0.7;
    z[k] = {Real::from_double(centre + R * std::cos(ang), p),
            Real::from_double(R * std::sin(ang), p)};
  }
  if (!aberth(c, z, p)) return false;

  // Smallest |Im| become the real roots; the rest must split evenly by sign.
  std::array<int, 4> idx{0, 1, 2, 3};
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return abs(z[a].im) < abs(z[b].im); });
  std::vector<Real> reals;
  std::vector<Cx> upper;
  for (int k = 0; k < 4; ++k) {
    const Cx& w = z[idx[k]];
    if (k < r) {
      reals.push_back(w.re);
    } else if (w.im.sign() > 0) {
      upper.push_back(w);
    }
  }
  if (static_cast<int>(upper.size()) * 2 != 4 - r) return false;
  std::sort(reals.begin(), reals.end());
  std::sort(upper.begin(), upper.end(), [](const Cx& a, const Cx& b) { return a.re < b.re; });

  // Newton polish; conjugates are mirrored exactly.
  for (auto& x : reals) {
    for (int it = 0; it < 4; ++it) {
      Cx fx, dfx;
      horner2(c, Cx{x, Real(p)}, fx, dfx);
      if (dfx.re.is_zero()) break;
      x = x - fx.re / dfx.re;
    }
  }
  for (auto& w : upper) {
    for (int it = 0; it < 4; ++it) {
      Cx fx, dfx;
      horner2(c, w, fx, dfx);
      if (dfx.re.is_zero() && dfx.im.is_zero()) break;
      w = cx_sub(w, cx_div(fx, dfx));
    }
    if (w.im.sign() <= 0) return false;
  }

  std::array<CBall, 4> mids;
  int n = 0;
  for (const auto& x : reals) mids[n++] = CBall(Ball(x));
  for (const auto& w : upper) {
    mids[n++] = CBall(Ball(w.re), Ball(w.im));
    mids[n++] = CBall(Ball(w.re), Ball(-w.im));
  }

  // Weierstrass corrections at the exact midpoints.
  const Ball a0 = Ball::from_z(F[0], p);
  std::array<Real, 4> rad;
  for (int i = 0; i < 4; ++i) {
    CBall den(a0);
    for (int j = 0; j < 4; ++j)
      if (j != i) den = den * (mids[i] - mids[j]);
    CBall fz = eval_ball(f, mids[i]);
    Ball absden = abs(den);
    if (absden.contains_zero()) return false;
    Ball W = abs(fz) / absden;
    Real R4 = rnd::mul(W.abs_hi(), Real(4L, kRadiusBits), kRadiusBits, MPFR_RNDU);
    rad[i] = R4;
  }
  Real cap(1L, kRadiusBits);
  mpfr_mul_2si(cap.raw(), cap.raw(), -static_cast<long>(p) / 2, MPFR_RNDN);
  for (int i = 0; i < 4; ++i)
    if (!(rad[i] < cap)) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Ball d = abs(mids[i] - mids[j]);
      Real rs = rnd::add(rad[i], rad[j], kRadiusBits, MPFR_RNDU);
      if (!(d.lo() > rs)) return false;
    }

  out.prec = p;
  out.r = r;
  out.s = (4 - r) / 2;
  for (int i = 0; i < 4; ++i) {
    if (i < r) {
      out.roots[i] = CBall(Ball(mids[i].re.mid(), rad[i]));
    } else {
      out.roots[i] = CBall(Ball(mids[i].re.mid(), rad[i]), Ball(mids[i].im.mid(), rad[i]));
    }
  }
  for (int i = 0; i < 4; ++i) {
    CBall d(a0);
    for (int j = 0; j < 4; ++j)
      if (j != i) d = d * (out.roots[i] - out.roots[j]);
    out.fprime[i] = d;
  }
  Ball M = abs(a0);
  Ball one = Ball::from_int(1, p);
  for (int i = 0; i < 4; ++i) M = M * max(one, abs(out.roots[i]));
  out.mahler = M;
  return true;
}

}  // namespace detail

/// Certified roots of F(x,1). Precision doubles from `precision_bits` up to
/// 8192 bits before giving up.
inline RootSystem find_roots(const QuarticForm& F, mpfr_prec_t precision_bits = kDefaultBits) {
  if (F[0] == 0) throw ContractError("find_roots: leading coefficient a0 is zero");
  if (F.disc() == 0) throw ContractError("find_roots: zero discriminant (repeated root)");
  const int r = count_real_roots(F.dehomogenized());
  RootSystem rs;
  for (mpfr_prec_t p = std::max<mpfr_prec_t>(precision_bits, 32); p <= kMaxBits; p *= 2) {
    if (detail::try_find_roots(F, r, p, rs)) return rs;
  }
  throw NumericalError("find_roots: could not certify roots of " + F.str() + " within " +
                       std::to_string(kMaxBits) + " bits");
}

/// Mahler measure with the lower bound (|D| / 4^4)^(1/6).
struct MahlerReport {
  Ball value;
  Ball lower;
  bool holds;
};

inline Ball mahler_lower_bound(const QuarticForm& F, mpfr_prec_t p) {
  Ball D = abs(Ball::from_z(F.disc(), p));
  return pow(D / Ball::from_int(256, p), Ball::from_q(mpq_class(1, 6), p));
}

inline MahlerReport mahler_measure(const RootSystem& rs, const QuarticForm& F) {
  MahlerReport rep{rs.mahler, mahler_lower_bound(F, rs.prec), true};
  rep.holds = possibly_le(rep.lower, rep.value);
  if (!rep.holds)
    throw NumericalError("Mahler measure below the discriminant lower bound for " + F.str());
  return rep;
}

/// Lower bound on distinct-root separation, sqrt(3) 4^-3 M^-3.
inline Ball separation_bound(const Ball& M) {
  mpfr_prec_t p = M.prec();
  return sqrt(Ball::from_int(3, p)) / (Ball::from_int(64, p) * M * M * M);
}

inline Ball min_root_separation(const RootSystem& rs) {
  Ball best;
  bool first = true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Ball d = abs(rs.roots[i] - rs.roots[j]);
      if (first || d.mid() < best.mid()) best = d;
      first = false;
    }
  return best;
}

struct FprimeCheck {
  Ball lower;  ///< 2^-9 |D| / M^6
  Ball value;  ///< |f'(alpha)|
  Ball upper;  ///< 10 H max(1, |alpha|)^3
  bool holds;
  Real slack_lower;  ///< value - lower
  Real slack_upper;  ///< upper - value
};

/// Bounds on |f'(alpha_m)| for each root (monic irreducible F).
inline std::array<FprimeCheck, 4> fprime_bounds_check(const RootSystem& rs, const QuarticForm& F) {
  const mpfr_prec_t p = rs.prec;
  Real cap(1L, kRadiusBits);
  mpfr_mul_2si(cap.raw(), cap.raw(), -static_cast<long>(p) / 2, MPFR_RNDN);
  for (int i = 0; i < 4; ++i)
    if (!(rs.radius(i) < cap))
      throw NumericalError("root " + std::to_string(i) + " radius exceeds the certification budget");
  Ball M = rs.mahler;
  Ball M6 = M * M * M * M * M * M;
  Ball lower = abs(Ball::from_z(F.disc(), p)) / (Ball::from_int(512, p) * M6);
  Ball H = Ball::from_z(F.naive_height(), p);
  Ball one = Ball::from_int(1, p);
  std::array<FprimeCheck, 4> out;
  for (int i = 0; i < 4; ++i) {
    Ball v = abs(rs.fprime[i]);
    Ball m = max(one, abs(rs.roots[i]));
    Ball upper = Ball::from_int(10, p) * H * m * m * m;
    bool ok = possibly_le(lower, v) && possibly_le(v, upper);
    out[i] = {lower, v, upper, ok, v.mid() - lower.mid(), upper.mid() - v.mid()};
    if (!ok)
      throw NumericalError("f' bounds violated at root " + std::to_string(i) + " of " + F.str());
  }
  return out;
}

struct DistanceCheck {
  Ball min_dist;  ///< min over roots of |alpha - x/y|
  Ball bound;     ///< 2^3 4^(7/2) M^2 |F(x,y)| / (|D|^(1/2) |y|^4)
  bool holds;
  Real slack;
};

inline DistanceCheck min_root_distance_bound(const RootSystem& rs, const QuarticForm& F,
                                             const mpz_class& x, const mpz_class& y) {
  if (y == 0) throw ContractError("min_root_distance_bound: y must be nonzero");
  const mpfr_prec_t p = rs.prec;
  CBall t(Ball::from_q(mpq_class(x, y), p));
  Ball best = abs(t - rs.roots[0]);
  for (int i = 1; i < 4; ++i) {
    Ball d = abs(t - rs.roots[i]);
    best = min(best, d);
  }
  Ball M = rs.mahler;
  Ball Fv = abs(Ball::from_z(F(x, y), p));
  Ball Y = abs(Ball::from_z(y, p));
  Ball Y4 = Y * Y * Y * Y;
  Ball bound = Ball::from_int(1024, p) * M * M * Fv / (sqrt(abs(Ball::from_z(F.disc(), p))) * Y4);
  bool ok = possibly_le(best, bound);
  return {best, bound, ok, bound.mid() - best.mid()};
}

/// Index j minimising |x - alpha_j y|. Conjugate roots tie exactly and resolve
/// to the representative; other ties are retried at higher precision, then
/// broken by lowest index.
inline int classify_related(const RootSystem& rs0, const QuarticForm& F, const mpz_class& x,
                            const mpz_class& y) {
  if (y == 0) return 0;  // every |x - alpha_j y| equals |x|
  RootSystem rs = rs0;
  for (int attempt = 0;; ++attempt) {
    const mpfr_prec_t p = rs.prec;
    Ball X = Ball::from_z(x, p), Y = Ball::from_z(y, p);
    std::array<Ball, 4> d;
    for (int i = 0; i < 4; ++i) d[i] = abs(CBall(X) - rs.roots[i] * Y);
    int best = 0;
    for (int i = 1; i < 4; ++i)
      if (d[i].mid() < d[best].mid() && rs.conj_index(i) != best) best = i;
    if (best >= rs.r && rs.conj_index(best) < best) best = rs.conj_index(best);
    bool ambiguous = false;
    for (int i = 0; i < 4; ++i) {
      if (i == best || rs.conj_index(i) == best) continue;
      if (!certainly_lt(d[best], d[i])) ambiguous = true;
    }
    if (!ambiguous || attempt == 2) {
      if (!ambiguous) return best;
      for (int i = 0; i < 4; ++i) {
        if (i == best) return best;
        if (rs.conj_index(i) == best) continue;
        if (!certainly_lt(d[best], d[i])) return i;
      }
      return best;
    }
    rs = find_roots(F, p * 2);
  }
}

}  // namespace thueq
