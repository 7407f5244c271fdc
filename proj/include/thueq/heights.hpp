#pragma once

// Absolute logarithmic heights of the algebraic numbers the bounds need:
// algebraic integers and units given by their conjugates, and ratios
// (alpha_k - alpha_i) / (alpha_k - alpha_j) of root differences.

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

#include "thueq/errors.hpp"
#include "thueq/form.hpp"
#include "thueq/predicate.hpp"
#include "thueq/roots.hpp"

namespace thueq {

/// h = (1/n) (log|den| + sum log max(1, |v_i|)) over the n listed conjugates.
/// `den` is the leading coefficient of the minimal polynomial (1 for
/// algebraic integers).
inline Ball height_from_conjugates(const std::vector<CBall>& v, const mpz_class& den = 1) {
  if (v.empty()) throw ContractError("height_from_conjugates: empty conjugate list");
  const mpfr_prec_t p = v[0].prec();
  bool all_zero = true;
  for (const auto& z : v) all_zero = all_zero && abs(z).contains_zero();
  if (all_zero) throw ContractError("height_from_conjugates: zero vector");
  if (den == 0) throw ContractError("height_from_conjugates: zero denominator");
  Ball one = Ball::from_int(1, p);
  Ball s = log(abs(Ball::from_z(den, p)));
  for (const auto& z : v) s = s + log(max(one, abs(z)));
  return s / Ball::from_int(static_cast<long>(v.size()), p);
}

/// Height of a unit from its log vector: (1/8) sum |log|u_i||.
inline Ball unit_height(const std::array<Ball, 4>& logv) {
  Ball s = abs(logv[0]);
  for (int i = 1; i < 4; ++i) s = s + abs(logv[i]);
  return s / Ball::from_int(8, s.prec());
}

/// Height from the Mahler measure of an integer minimal polynomial.
inline Ball height_from_minpoly(const IntPoly& m, mpfr_prec_t p = kDefaultBits) {
  int d = degree(m);
  if (d < 1) throw ContractError("height_from_minpoly: degree must be positive");
  if (d == 1) {
    mpz_class g = gcd(m[0], m[1]);
    mpz_class top = std::max(mpz_class(abs(m[0])), mpz_class(abs(m[1]))) / g;
    return log(Ball::from_z(top, p));
  }
  if (d != 4) throw ContractError("height_from_minpoly: only degree 1 and 4 are supported");
  QuarticForm G(m[4], m[3], m[2], m[1], m[0]);
  RootSystem rs = find_roots(G, p);
  return log(rs.mahler) / Ball::from_int(4, p);
}

/// (1/4) (log log n / log n)^3
inline Ball voutier_threshold(int degree, mpfr_prec_t p = kDefaultBits) {
  if (degree < 2) throw ContractError("voutier_threshold: degree must be at least 2");
  Ball ln = log(Ball::from_int(degree, p));
  // For degree 2, log log 2 < 0 and the bound is vacuous but still defined.
  Ball q = log(ln) / ln;
  return q * q * q / Ball::from_int(4, p);
}

/// h > threshold for a non-root-of-unity of the given degree. A height of zero
/// means the input was a root of unity, which violates the precondition.
inline bool voutier_check(const Ball& h, int degree) {
  if (degree < 2) throw ContractError("voutier_check: degree must be at least 2");
  if (h.mid().is_zero() && h.rad().is_zero())
    throw ContractError("voutier_check: height 0 (root of unity) is outside the statement");
  Ball t = voutier_threshold(degree, h.prec());
  return t.lo() < h.hi();
}

using Perm = std::array<int, 4>;

/// Galois group of F(x,1) as a permutation group on the root indices.
struct GaloisGroup {
  std::string name;  ///< S4, A4, D4, C4 or V4
  std::vector<Perm> elements;
};

namespace detail {

inline Perm perm_from_cycles(std::initializer_list<std::vector<int>> cycles) {
  Perm p{0, 1, 2, 3};
  for (const auto& c : cycles)
    for (size_t t = 0; t < c.size(); ++t) p[c[t]] = c[(t + 1) % c.size()];
  return p;
}

inline bool is_rational_square(const mpq_class& q) {
  if (q < 0) return false;
  if (q == 0) return true;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

// q = 0, a square, or D times a square: x^2 - q splits over Q(sqrt D).
inline bool splits_over(const mpq_class& q, const mpz_class& D) {
  return q == 0 || is_rational_square(q) || is_rational_square(q * D);
}

}  // namespace detail

/// Galois group via the resolvent cubic and Kappe-Warren. The pairing of
/// a rational resolvent root is read off the certified roots.
inline GaloisGroup galois_group(const QuarticForm& F, const RootSystem& rs) {
  const mpq_class a0(F[0]);
  const mpq_class b = F[1] / a0, c = F[2] / a0, d = F[3] / a0, e = F[4] / a0;
  auto R = [&](const mpq_class& y) -> mpq_class {
    return y * y * y - c * y * y + (b * d - 4 * e) * y - (b * b * e - 4 * c * e + d * d);
  };
  const std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  std::vector<int> rational;
  std::vector<mpq_class> theta_q;
  const mpfr_prec_t p = rs.prec;
  const Ball A2 = Ball::from_z(F[0] * F[0], p);
  for (const auto& pr : pairings) {
    const auto& a = rs.roots;
    CBall th = a[pr[0]] * a[pr[1]] + a[pr[2]] * a[pr[3]];
    Ball v = th.re * A2;
    mpq_class cand(v.mid().round_z(), F[0] * F[0]);
    cand.canonicalize();
    // the rounded value must be a root and also lie in the enclosure: a
    // nearby irrational theta can round onto a different rational root
    Ball diff = th.re - Ball::from_q(cand, p);
    if (R(cand) == 0 && abs(th.im).abs_lo().is_zero() && diff.contains_zero()) {
      rational.push_back(static_cast<int>(&pr - &pairings[0]));
      theta_q.push_back(cand);
    }
  }
  GaloisGroup G;
  const mpz_class& D = F.disc();
  if (rational.size() == 3) {
    G.name = "V4";
    G.elements = {Perm{0, 1, 2, 3}, detail::perm_from_cycles({{0, 1}, {2, 3}}),
                  detail::perm_from_cycles({{0, 2}, {1, 3}}),
                  detail::perm_from_cycles({{0, 3}, {1, 2}})};
    return G;
  }
  if (rational.size() == 1) {
    const auto& pr = pairings[rational[0]];
    int P = pr[0], Q = pr[1], Rr = pr[2], S = pr[3];
    const mpq_class& th = theta_q[0];
    bool c4 = detail::splits_over(th * th - 4 * e, D) && detail::splits_over(b * b - 4 * (c - th), D);
    using detail::perm_from_cycles;
    if (c4) {
      G.name = "C4";
      G.elements = {Perm{0, 1, 2, 3}, perm_from_cycles({{P, Q}, {Rr, S}}),
                    perm_from_cycles({{P, Rr, Q, S}}), perm_from_cycles({{P, S, Q, Rr}})};
    } else {
      G.name = "D4";
      G.elements = {Perm{0, 1, 2, 3},
                    perm_from_cycles({{P, Q}}),
                    perm_from_cycles({{Rr, S}}),
                    perm_from_cycles({{P, Q}, {Rr, S}}),
                    perm_from_cycles({{P, Rr}, {Q, S}}),
                    perm_from_cycles({{P, S}, {Q, Rr}}),
                    perm_from_cycles({{P, Rr, Q, S}}),
                    perm_from_cycles({{P, S, Q, Rr}})};
    }
    return G;
  }
  if (rational.empty()) {
    Perm p{0, 1, 2, 3};
    bool square = D > 0 && mpz_perfect_square_p(D.get_mpz_t());
    G.name = square ? "A4" : "S4";
    do {
      if (square) {
        int inv = 0;
        for (int u = 0; u < 4; ++u)
          for (int v = u + 1; v < 4; ++v) inv += p[u] > p[v];
        if (inv % 2) continue;
      }
      G.elements.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return G;
  }
  throw NumericalError("galois_group: resolvent cubic of " + F.str() + " has exactly two rational roots");
}

namespace detail {

// Integer polynomial prod_g (A_g z - B_g) from complex-ball factors; returns
// false if some coefficient cannot be rounded to an integer.
inline bool round_product(const std::vector<std::pair<CBall, CBall>>& factors, IntPoly& out) {
  const mpfr_prec_t p = factors[0].first.prec();
  std::vector<CBall> poly{CBall(Ball::from_int(1, p))};
  for (const auto& [A, B] : factors) {
    std::vector<CBall> next(poly.size() + 1, CBall(Ball::from_int(0, p)));
    for (size_t t = 0; t < poly.size(); ++t) {
      next[t + 1] = next[t + 1] + poly[t] * A;
      next[t] = next[t] - poly[t] * B;
    }
    poly = std::move(next);
  }
  out.clear();
  Real half = Real::from_double(0.5, 64);
  for (const auto& c : poly) {
    if (!(c.re.rad() < half) || !(c.im.abs_hi() < half)) return false;
    mpz_class z = c.re.mid().round_z();
    if (!Ball::from_z(z, p).mid().is_finite()) return false;
    // the rounded value must lie in the enclosure
    Real lo = c.re.lo(), hi = c.re.hi();
    Real zr(z, p + 64);
    if (zr < lo || zr > hi) return false;
    out.push_back(z);
  }
  return true;
}

}  // namespace detail

struct RatioHeight {
  Ball h;
  std::string group;
  IntPoly poly;  ///< a0^|G| prod_g ((a_gk - a_gj) z - (a_gk - a_gi))
};

/// h((alpha_k - alpha_i) / (alpha_k - alpha_j)).
inline RatioHeight ratio_height(const QuarticForm& F, const RootSystem& rs0, int i, int j, int k) {
  if (i == j) return {Ball::from_int(0, rs0.prec), "trivial", {}};
  if (i == k || j == k) throw ContractError("ratio_height: k must differ from i and j");
  RootSystem rs = rs0;
  for (;;) {
    GaloisGroup G = galois_group(F, rs);
    const mpfr_prec_t p = rs.prec;
    const Ball a0 = Ball::from_z(F[0], p);
    std::vector<std::pair<CBall, CBall>> factors;
    std::vector<CBall> conj;
    for (const auto& g : G.elements) {
      const auto& a = rs.roots;
      CBall A = (a[g[k]] - a[g[j]]) * a0;
      CBall B = (a[g[k]] - a[g[i]]) * a0;
      factors.emplace_back(A, B);
      conj.push_back(B / A);
    }
    IntPoly P;
    if (detail::round_product(factors, P)) {
      trim(P);
      mpz_class cont = content(P);
      mpz_class lead = P.back();
      Ball h = log(abs(Ball::from_z(lead, p))) - log(Ball::from_z(cont, p));
      Ball one = Ball::from_int(1, p);
      for (const auto& z : conj) h = h + log(max(one, abs(z)));
      h = h / Ball::from_int(static_cast<long>(G.elements.size()), p);
      return {h, G.name, P};
    }
    if (rs.prec * 2 > kMaxBits) throw NumericalError("ratio_height: precision exhausted");
    rs = find_roots(F, rs.prec * 2);
  }
}

/// h((a_k - a_i)/(a_k - a_j)) <= 2 log 2 + 2 ||phi(x,y)||.
inline Predicate height_ratio_bound_check(const QuarticForm& F, const RootSystem& rs,
                                          const Ball& phi_norm, int i, int j, int k) {
  RatioHeight rh = ratio_height(F, rs, i, j, k);
  const mpfr_prec_t p = rs.prec;
  Ball rhs = Ball::from_int(2, p) * const_log2(p) + Ball::from_int(2, p) * phi_norm;
  Predicate out = predicate_le("ratio.height", rh.h, rhs);
  out.note = "group=" + rh.group;
  return out;
}

}  // namespace thueq
