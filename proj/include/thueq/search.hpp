#pragma once

// Enumeration of solutions of |F(x,y)| = 1.
//
// For y >= 1 a solution satisfies |a0| prod |x - alpha_i y| = 1, so some root
// has |x - alpha_i y| <= |a0|^(-1/4) <= 1. It is therefore enough to test
// the integers within distance 1 of Re(alpha_i) y for every root with
// |Im alpha_i| y <= 1. Each candidate is filtered in floating point with a
// rigorous error bound and confirmed exactly.

#include <gmpxx.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <vector>

#include "thueq/form.hpp"
#include "thueq/roots.hpp"

namespace thueq {

enum class Regime { Small, Banded, Large };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Small: return "small";
    case Regime::Banded: return "banded";
    case Regime::Large: return "large";
  }
  return "?";
}

struct Solution {
  mpz_class x, y;
  int value = 0;          ///< F(x,y), +1 or -1
  int related_root = -1;  ///< index into RootSystem::roots
  Regime regime = Regime::Small;

  bool is_trivial() const { return y == 0; }
  friend bool operator<(const Solution& a, const Solution& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  }
  friend bool operator==(const Solution& a, const Solution& b) { return a.x == b.x && a.y == b.y; }
};

/// Which right-hand sides to accept.
enum class Rhs { Plus, Minus, Both };

inline bool rhs_accepts(Rhs rhs, int v) {
  return rhs == Rhs::Both || (rhs == Rhs::Plus && v == 1) || (rhs == Rhs::Minus && v == -1);
}

/// Floating-point view of the roots, with error margins, for the sieve.
class Sieve {
 public:
  Sieve(const QuarticForm& F, const RootSystem& rs) : F_(F) {
    for (int i = 0; i < 4; ++i) {
      if (i >= rs.r && rs.conj_index(i) < i) continue;  // conjugate gives the same window
      Entry e;
      e.re = rs.roots[i].re.mid().to_long_double();
      e.rad = rs.roots[i].re.rad().to_long_double() + 4 * LDBL_EPSILON * (1 + fabsl(e.re));
      e.im_lo = i < rs.r ? 0.0L : fabsl(rs.roots[i].im.mid().to_long_double()) - e.rad;
      e.ball = rs.roots[i].re;
      entries_.push_back(e);
    }
    for (int i = 0; i < 5; ++i) {
      ad_[i] = F[i].get_d();
      aabs_[i] = std::fabs(ad_[i]);
    }
  }

  /// All x with |F(x,y)| = 1 accepted by `rhs`, ascending; y >= 0.
  std::vector<Solution> solve(const mpz_class& y, Rhs rhs) const {
    std::vector<Solution> out;
    if (y < 0) throw ContractError("solve_fixed_y: y must be nonnegative");
    if (y == 0) {
      if (F_[0] == 1 || F_[0] == -1) {
        int v = F_[0].get_si();
        if (rhs_accepts(rhs, v)) out.push_back({1, 0, v});
      }
      return out;
    }
    std::vector<mpz_class> cands;
    const long double yl = y.get_d();
    const bool small_y = mpz_sizeinbase(y.get_mpz_t(), 2) < 50;
    for (const auto& e : entries_) {
      if (e.im_lo > 0 && e.im_lo * yl * (1 - 1e-15L) > 1.0L) continue;
      if (small_y && fabsl(e.re * yl) < 1e15L) {
        long double c = e.re * yl;
        long double slack = 1.0L + e.rad * yl + 1e-12L * (1 + fabsl(c));
        long long lo = static_cast<long long>(floorl(c - slack));
        long long hi = static_cast<long long>(ceill(c + slack));
        for (long long x = lo; x <= hi; ++x) cands.emplace_back(static_cast<long>(x));
      } else {
        // Window from the ball enclosure of Re(alpha) y.
        mpfr_prec_t p = std::max<mpfr_prec_t>(e.ball.prec(), mpz_sizeinbase(y.get_mpz_t(), 2) + 64);
        Ball c = e.ball.with_prec(p) * Ball::from_z(y, p);
        mpz_class lo = c.lo().floor_z() - 1, hi = c.hi().ceil_z() + 1;
        for (mpz_class x = lo; x <= hi; ++x) cands.push_back(x);
      }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& x : cands) {
      if (!maybe_unit(x, y)) continue;
      mpz_class v = F_(x, y);
      if (v != 1 && v != -1) continue;
      if (gcd(x, y) != 1) continue;
      int iv = v.get_si();
      if (rhs_accepts(rhs, iv)) out.push_back({x, y, iv});
    }
    return out;
  }

 private:
  struct Entry {
    long double re, rad, im_lo;
    Ball ball;
  };

  // Cheap rejection: |F(x,y)| certainly > 1 in double arithmetic.
  bool maybe_unit(const mpz_class& x, const mpz_class& y) const {
    double xd = x.get_d(), yd = y.get_d();
    double acc = ad_[0], err = aabs_[0];
    double ax = std::fabs(xd), ypow = 1;
    for (int i = 1; i <= 4; ++i) {
      ypow *= yd;
      acc = acc * xd + ad_[i] * ypow;
      err = err * ax + aabs_[i] * std::fabs(ypow);
    }
    if (!std::isfinite(err)) return true;
    double bound = err * 1e-14 + 1e-300;
    return std::fabs(acc) <= 1.0 + bound;
  }

  QuarticForm F_;
  std::vector<Entry> entries_;
  double ad_[5], aabs_[5];
};

inline std::vector<Solution> solve_fixed_y(const QuarticForm& F, const RootSystem& rs,
                                           const mpz_class& y, Rhs rhs = Rhs::Both) {
  return Sieve(F, rs).solve(y, rhs);
}

inline std::vector<Solution> solve_fixed_y(const QuarticForm& F, const mpz_class& y,
                                           Rhs rhs = Rhs::Both) {
  return solve_fixed_y(F, find_roots(F), y, rhs);
}

/// Canonical solutions with 0 <= y <= y_max, sorted by (y, x).
inline std::vector<Solution> enumerate_solutions(const QuarticForm& F, const RootSystem& rs,
                                                 const mpz_class& y_max, Rhs rhs = Rhs::Both) {
  std::vector<Solution> out;
  if (y_max < 0) throw ContractError("enumerate_solutions: y_max must be nonnegative");
  Sieve sieve(F, rs);
  for (mpz_class y = 0; y <= y_max; ++y) {
    auto s = sieve.solve(y, rhs);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

inline std::vector<Solution> enumerate_solutions(const QuarticForm& F, const mpz_class& y_max,
                                                 Rhs rhs = Rhs::Both) {
  return enumerate_solutions(F, find_roots(F), y_max, rhs);
}

}  // namespace thueq
