#pragma once

// Units of Z[alpha] for a monic quartic, their log embedding, and the lattice
// they generate. The search only ever sees a subgroup of the full unit group,
// so every lattice carries a finite-index caveat.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "thueq/errors.hpp"
#include "thueq/form.hpp"
#include "thueq/heights.hpp"
#include "thueq/logcurve.hpp"
#include "thueq/predicate.hpp"
#include "thueq/roots.hpp"
#include "thueq/search.hpp"

namespace thueq {

/// c0 + c1 alpha + c2 alpha^2 + c3 alpha^3
using ZAlpha = std::array<mpz_class, 4>;

namespace zalpha {

// alpha^4 = -(a1 alpha^3 + a2 alpha^2 + a3 alpha + a4) for monic F.
inline ZAlpha mul(const ZAlpha& u, const ZAlpha& v, const QuarticForm& F) {
  std::array<mpz_class, 7> w;
  for (auto& c : w) c = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i + j] += u[i] * v[j];
  for (int d = 6; d >= 4; --d) {
    if (w[d] == 0) continue;
    mpz_class c = w[d];
    w[d] = 0;
    // F[1..4] are the coefficients of alpha^3 .. alpha^0
    for (int t = 1; t <= 4; ++t) w[d - t] -= c * F[t];
  }
  return {w[0], w[1], w[2], w[3]};
}

/// Matrix of multiplication by u on the basis 1, alpha, alpha^2, alpha^3
/// (column j holds u alpha^j).
inline std::vector<std::vector<mpz_class>> mult_matrix(const ZAlpha& u, const QuarticForm& F) {
  std::vector<std::vector<mpz_class>> m(4, std::vector<mpz_class>(4));
  ZAlpha col = u;
  const ZAlpha alpha{0, 1, 0, 0};
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) m[i][j] = col[i];
    col = mul(col, alpha, F);
  }
  return m;
}

inline mpz_class norm(const ZAlpha& u, const QuarticForm& F) {
  return bareiss_det(mult_matrix(u, F));
}

/// a / b if it lies in Z[alpha].
inline bool divide(const ZAlpha& a, const ZAlpha& b, const QuarticForm& F, ZAlpha& out) {
  auto mb = mult_matrix(b, F);
  std::vector<std::vector<mpq_class>> m(4, std::vector<mpq_class>(5));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m[i][j] = mb[i][j];
    m[i][4] = a[i];
  }
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && m[piv][c] == 0) ++piv;
    if (piv == 4) return false;
    std::swap(m[c], m[piv]);
    for (int i = 0; i < 4; ++i) {
      if (i == c || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[c][c];
      for (int j = c; j < 5; ++j) m[i][j] -= f * m[c][j];
    }
  }
  for (int i = 0; i < 4; ++i) {
    mpq_class q = m[i][4] / m[i][i];
    if (q.get_den() != 1) return false;
    out[i] = q.get_num();
  }
  return true;
}

inline ZAlpha inverse_unit(const ZAlpha& u, const QuarticForm& F) {
  ZAlpha out;
  if (!divide(ZAlpha{1, 0, 0, 0}, u, F, out)) throw ContractError("inverse_unit: not a unit");
  return out;
}

inline ZAlpha power(ZAlpha u, mpz_class e, const QuarticForm& F) {
  if (e < 0) {
    u = inverse_unit(u, F);
    e = -e;
  }
  ZAlpha r{1, 0, 0, 0};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, u, F);
    u = mul(u, u, F);
    e >>= 1;
  }
  return r;
}

inline IntPoly as_poly(const ZAlpha& u) { return {u[0], u[1], u[2], u[3]}; }

inline std::string str(const ZAlpha& u) {
  return u[0].get_str() + " " + u[1].get_str() + " " + u[2].get_str() + " " + u[3].get_str();
}

}  // namespace zalpha

/// Images of an element of Z[alpha] under the four embeddings, in root order.
inline std::vector<CBall> conjugates(const RootSystem& rs, const ZAlpha& u) {
  IntPoly p = zalpha::as_poly(u);
  std::vector<CBall> v;
  for (int m = 0; m < 4; ++m) v.push_back(eval_ball(p, rs.roots[m]));
  return v;
}

inline Vec4 log_embedding(const RootSystem& rs, const ZAlpha& u) {
  auto v = conjugates(rs, u);
  Vec4 out;
  for (int m = 0; m < 4; ++m) {
    Ball a = abs(v[m]);
    if (a.contains_zero()) throw NumericalError("log_embedding: conjugate not separated from 0");
    out[m] = log(a);
  }
  return out;
}

struct Unit {
  ZAlpha coords;
  Vec4 logv;
  int norm = 1;
  std::string source;  ///< "solution x,y", "box", "quotient"
};

struct UnitLattice {
  int rank = 0;                  ///< r + s - 1
  std::vector<Unit> generators;  ///< harvested units (may be empty for synthetic lattices)
  std::vector<Vec4> basis;
  /// basis[k] = sum_g exps[k][g] log(generators[g]); empty for synthetic lattices
  std::vector<std::vector<mpz_class>> exps;
  Ball volume;
  bool finite_index_caveat = true;

  static UnitLattice from_basis(std::vector<Vec4> b);
};

namespace detail {

inline Real to_real(const Ball& b) { return b.mid(); }

// Gram matrix of the midpoints.
inline std::vector<std::vector<Real>> gram_mid(const std::vector<Vec4>& b) {
  size_t n = b.size();
  std::vector<std::vector<Real>> g(n, std::vector<Real>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g[i][j] = dot(b[i], b[j]).mid();
  return g;
}

// Solves g x = rhs (small symmetric positive definite systems).
inline std::vector<Real> solve_real(std::vector<std::vector<Real>> g, std::vector<Real> rhs) {
  const size_t n = rhs.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t i = c + 1; i < n; ++i)
      if (abs(g[i][c]) > abs(g[piv][c])) piv = i;
    std::swap(g[c], g[piv]);
    std::swap(rhs[c], rhs[piv]);
    if (g[c][c].is_zero()) throw NumericalError("solve_real: singular Gram matrix");
    for (size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      Real f = g[i][c] / g[c][c];
      for (size_t j = c; j < n; ++j) g[i][j] = g[i][j] - f * g[c][j];
      rhs[i] = rhs[i] - f * rhs[c];
    }
  }
  std::vector<Real> x;
  for (size_t i = 0; i < n; ++i) x.push_back(rhs[i] / g[i][i]);
  return x;
}

inline Ball det_ball(std::vector<std::vector<Ball>> m) {
  const size_t n = m.size();
  mpfr_prec_t p = n ? m[0][0].prec() : kDefaultBits;
  Ball det = Ball::from_int(1, p);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t i = c + 1; i < n; ++i)
      if (abs(m[i][c].mid()) > abs(m[piv][c].mid())) piv = i;
    if (piv != c) {
      std::swap(m[c], m[piv]);
      det = -det;
    }
    if (m[c][c].contains_zero()) return Ball::from_int(0, p);
    det = det * m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      Ball f = m[i][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
    }
  }
  return det;
}

inline Ball lattice_volume(const std::vector<Vec4>& b) {
  if (b.empty()) return Ball::from_int(1, kDefaultBits);
  std::vector<std::vector<Ball>> g(b.size(), std::vector<Ball>(b.size()));
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) g[i][j] = dot(b[i], b[j]);
  Ball d = det_ball(g);
  if (d.mid().sign() <= 0) return Ball::from_int(0, d.prec());
  return sqrt(d);
}

// Best rational approximation p/q to x with q <= qmax, accepted only if
// |x - p/q| < tol.
inline bool rationalize(const Real& x, const Real& tol, long qmax, mpq_class& out) {
  mpfr_prec_t p = x.prec();
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Real v(x, p);
  for (int it = 0; it < 64; ++it) {
    mpz_class a = v.floor_z();
    mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > qmax) return false;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    mpq_class q(h1, k1);
    q.canonicalize();
    if (abs(x - Real(q, p)) < tol) {
      out = q;
      return true;
    }
    Real frac = v - Real(a, p);
    if (frac.is_zero()) return false;
    v = Real(1L, p) / frac;
  }
  return false;
}

// Row-style Hermite reduction of an integer matrix; `u` records the row
// operations so that u * original = result. Zero rows end up last.
inline void hermite(std::vector<std::vector<mpz_class>>& a, std::vector<std::vector<mpz_class>>& u) {
  const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  u.assign(rows, std::vector<mpz_class>(rows, mpz_class(0)));
  for (size_t i = 0; i < rows; ++i) u[i][i] = 1;
  auto combine = [&](size_t i, size_t j, const mpz_class& q) {  // row i -= q row j
    for (size_t c = 0; c < cols; ++c) a[i][c] -= q * a[j][c];
    for (size_t c = 0; c < rows; ++c) u[i][c] -= q * u[j][c];
  };
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      size_t piv = rows;
      for (size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (piv == rows || abs(a[i][c]) < abs(a[piv][c]))) piv = i;
      if (piv == rows) break;
      std::swap(a[r], a[piv]);
      std::swap(u[r], u[piv]);
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        combine(i, r, q);
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows && a[r][c] != 0) {
      if (a[r][c] < 0) {
        for (auto& x : a[r]) x = -x;
        for (auto& x : u[r]) x = -x;
      }
      for (size_t i = 0; i < r; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        combine(i, r, q);
      }
      ++r;
    }
  }
}

inline Vec4 combine_vec(const std::vector<Vec4>& vs, const std::vector<mpz_class>& e) {
  mpfr_prec_t p = vs[0][0].prec();
  Vec4 out;
  for (auto& c : out) c = Ball::from_int(0, p);
  for (size_t g = 0; g < vs.size(); ++g) {
    if (e[g] == 0) continue;
    Ball f = Ball::from_z(e[g], p);
    for (int m = 0; m < 4; ++m) out[m] = out[m] + f * vs[g][m];
  }
  return out;
}

inline std::vector<mpz_class> combine_exp(const std::vector<std::vector<mpz_class>>& es,
                                          const std::vector<mpz_class>& e) {
  std::vector<mpz_class> out(es.empty() ? 0 : es[0].size(), mpz_class(0));
  for (size_t g = 0; g < es.size(); ++g)
    for (size_t t = 0; t < out.size(); ++t) out[t] += e[g] * es[g][t];
  return out;
}

inline Real mid_norm2(const Vec4& v) { return dot(v, v).mid(); }

inline mpz_class round_real(const Real& x) { return x.round_z(); }

}  // namespace detail

inline UnitLattice UnitLattice::from_basis(std::vector<Vec4> b) {
  UnitLattice L;
  L.rank = static_cast<int>(b.size());
  L.basis = std::move(b);
  L.volume = detail::lattice_volume(L.basis);
  L.finite_index_caveat = false;
  return L;
}

namespace detail {

// Adds the log vector `v` (with exponent vector `e` over the generators) to
// the lattice spanned by `basis`. Returns false if `v` could not be placed
// (its coordinates in the current basis are not recognisably rational).
inline bool lattice_insert(std::vector<Vec4>& basis, std::vector<std::vector<mpz_class>>& exps,
                           const Vec4& v, const std::vector<mpz_class>& e) {
  const mpfr_prec_t p = v[0].prec();
  if (sqrt(mid_norm2(v)) < Real::from_double(1e-12, p)) return true;  // torsion
  if (basis.empty()) {
    basis.push_back(v);
    exps.push_back(e);
    return true;
  }
  // Independence test via the residual of the orthogonal projection.
  auto g = gram_mid(basis);
  std::vector<Real> rhs;
  for (const auto& b : basis) rhs.push_back(dot(b, v).mid());
  std::vector<Real> c = solve_real(g, rhs);
  Vec4 res = v;
  for (size_t k = 0; k < basis.size(); ++k)
    for (int m = 0; m < 4; ++m) res[m] = res[m] - Ball(c[k]) * basis[k][m];
  Real scale = sqrt(mid_norm2(v));
  Real tiny = Real::from_double(1e-18, p) * (Real(1L, p) + scale);
  if (sqrt(mid_norm2(res)) > tiny) {
    if (basis.size() >= 3) return false;  // rank cannot exceed 3
    basis.push_back(v);
    exps.push_back(e);
    return true;
  }
  // v is (numerically) in the span: rationalize its coordinates.
  std::vector<mpq_class> q(c.size());
  mpz_class L = 1;
  for (size_t k = 0; k < c.size(); ++k) {
    if (!rationalize(c[k], Real::from_double(1e-15, p), 1000000, q[k])) return false;
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q[k].get_den_mpz_t());
  }
  if (L == 1) return true;  // already in the lattice
  const size_t n = basis.size();
  std::vector<std::vector<mpz_class>> a(n + 1, std::vector<mpz_class>(n, mpz_class(0)));
  for (size_t k = 0; k < n; ++k) a[k][k] = L;
  for (size_t k = 0; k < n; ++k) a[n][k] = q[k].get_num() * (L / q[k].get_den());
  std::vector<std::vector<mpz_class>> u;
  hermite(a, u);
  std::vector<Vec4> all = basis;
  all.push_back(v);
  std::vector<std::vector<mpz_class>> all_e = exps;
  all_e.push_back(e);
  std::vector<Vec4> nb;
  std::vector<std::vector<mpz_class>> ne;
  for (size_t k = 0; k < n; ++k) {
    nb.push_back(combine_vec(all, u[k]));
    ne.push_back(combine_exp(all_e, u[k]));
  }
  basis = std::move(nb);
  exps = std::move(ne);
  return true;
}

}  // namespace detail

/// Reduced basis: Lagrange for rank 2, greedy plus an exhaustive minima
/// check over coefficients in [-10, 10]^3 for rank 3. Norms come out
/// nondecreasing.
inline UnitLattice reduce_basis(UnitLattice L) {
  auto& b = L.basis;
  auto& e = L.exps;
  const bool track = !e.empty();
  auto sub = [&](size_t i, size_t j, const mpz_class& q) {  // b_i -= q b_j
    if (q == 0) return;
    Ball f = Ball::from_z(q, b[i][0].prec());
    for (int m = 0; m < 4; ++m) b[i][m] = b[i][m] - f * b[j][m];
    if (track)
      for (size_t t = 0; t < e[i].size(); ++t) e[i][t] -= q * e[j][t];
  };
  auto swap_rows = [&](size_t i, size_t j) {
    std::swap(b[i], b[j]);
    if (track) std::swap(e[i], e[j]);
  };
  auto n2 = [&](size_t i) { return detail::mid_norm2(b[i]); };

  if (b.size() == 1) {
    int big = 0;
    for (int m = 1; m < 4; ++m)
      if (abs(b[0][m].mid()) > abs(b[0][big].mid())) big = m;
    if (b[0][big].mid().sign() < 0) {
      for (auto& c : b[0]) c = -c;
      if (track)
        for (auto& x : e[0]) x = -x;
    }
  } else if (b.size() >= 2) {
    // Repeated pairwise size reduction with swaps (Lagrange in rank 2, a
    // greedy variant in rank 3), until no step shortens anything.
    for (int pass = 0; pass < 200; ++pass) {
      bool changed = false;
      for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
          if (i == j) continue;
          if (!(n2(j) < n2(i)) && !(n2(j) == n2(i) && j < i)) continue;
          mpz_class q = detail::round_real(dot(b[i], b[j]).mid() / n2(j));
          if (q == 0) continue;
          Real before = n2(i);
          sub(i, j, q);
          if (n2(i) < before) changed = true;
        }
      for (size_t i = 0; i + 1 < b.size(); ++i)
        for (size_t j = 0; j + 1 < b.size() - i; ++j)
          if (n2(j + 1) < n2(j)) swap_rows(j, j + 1);
      if (!changed) break;
    }
    if (b.size() == 3) {
      // Certify against all coefficient vectors in [-10, 10]^3.
      auto g = detail::gram_mid(b);
      struct Cand {
        Real n;
        std::array<long, 3> c;
      };
      std::vector<Cand> cands;
      for (long x = -10; x <= 10; ++x)
        for (long y = -10; y <= 10; ++y)
          for (long z = -10; z <= 10; ++z) {
            if (x == 0 && y == 0 && z == 0) continue;
            std::array<long, 3> c{x, y, z};
            Real s(0L, g[0][0].prec());
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) s = s + g[i][j] * Real(c[i] * c[j], g[0][0].prec());
            cands.push_back({s, c});
          }
      std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b2) { return a.n < b2.n; });
      std::vector<std::array<long, 3>> picked;
      for (const auto& cd : cands) {
        std::vector<std::array<long, 3>> trial = picked;
        trial.push_back(cd.c);
        // rank test on integer coefficient vectors
        std::vector<std::vector<mpz_class>> m;
        for (const auto& t : trial) m.push_back({t[0], t[1], t[2]});
        bool indep;
        if (trial.size() == 1) indep = true;
        else if (trial.size() == 2) {
          indep = (m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0) || (m[0][0] * m[1][2] - m[0][2] * m[1][0] != 0) ||
                  (m[0][1] * m[1][2] - m[0][2] * m[1][1] != 0);
        } else {
          indep = bareiss_det(m) != 0;
        }
        if (indep) picked.push_back(cd.c);
        if (picked.size() == 3) break;
      }
      std::vector<std::vector<mpz_class>> m;
      for (const auto& t : picked) m.push_back({t[0], t[1], t[2]});
      mpz_class d = bareiss_det(m);
      bool shorter = false;
      for (size_t k = 0; k < 3; ++k) {
        Real nk(0L, g[0][0].prec());
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            nk = nk + g[i][j] * Real(picked[k][i] * picked[k][j], g[0][0].prec());
        Real tol = Real::from_double(1e-25, nk.prec()) * (Real(1L, nk.prec()) + n2(k));
        if (nk + tol < n2(k)) shorter = true;
      }
      if ((d == 1 || d == -1) && shorter) {
        std::vector<Vec4> nb;
        std::vector<std::vector<mpz_class>> ne;
        for (const auto& t : picked) {
          std::vector<mpz_class> c{t[0], t[1], t[2]};
          nb.push_back(detail::combine_vec(b, c));
          if (track) ne.push_back(detail::combine_exp(e, c));
        }
        b = std::move(nb);
        if (track) e = std::move(ne);
      }
    }
  }
  L.volume = detail::lattice_volume(b);
  return L;
}

/// Successive minima by brute force over coefficient vectors in [-R, R]^n;
/// returns the squared norms.
inline std::vector<Real> successive_minima_bruteforce(const std::vector<Vec4>& b, long R = 10) {
  const size_t n = b.size();
  auto g = detail::gram_mid(b);
  const mpfr_prec_t p = g[0][0].prec();
  std::vector<std::pair<Real, std::vector<long>>> cands;
  std::vector<long> c(n, -R);
  for (;;) {
    bool zero = std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
    if (!zero) {
      Real s(0L, p);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s = s + g[i][j] * Real(c[i] * c[j], p);
      cands.emplace_back(s, c);
    }
    size_t k = 0;
    while (k < n && c[k] == R) c[k++] = -R;
    if (k == n) break;
    ++c[k];
  }
  std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b2) { return a.first < b2.first; });
  std::vector<Real> out;
  std::vector<std::vector<mpz_class>> picked;
  for (const auto& [nv, cv] : cands) {
    auto trial = picked;
    trial.push_back(std::vector<mpz_class>(cv.begin(), cv.end()));
    // rank of trial via fraction-free elimination on a copy
    auto m = trial;
    size_t rank = 0;
    for (size_t col = 0; col < n && rank < m.size(); ++col) {
      size_t piv = rank;
      while (piv < m.size() && m[piv][col] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[rank], m[piv]);
      for (size_t i = rank + 1; i < m.size(); ++i) {
        mpz_class a = m[i][col], bb = m[rank][col];
        for (size_t j = 0; j < n; ++j) m[i][j] = m[i][j] * bb - m[rank][j] * a;
      }
      ++rank;
    }
    if (rank == trial.size()) {
      picked = trial;
      out.push_back(nv);
      if (picked.size() == n) break;
    }
  }
  return out;
}

struct UnitSearchOptions {
  int effort = 2;            ///< box radius for power-basis coordinates
  long solution_ymax = 200;  ///< harvest x - alpha y for solutions up to this y
  std::vector<std::pair<mpz_class, mpz_class>> extra_solutions;
};

/// Units of Z[alpha] by harvesting solutions, a coordinate box and quotients
/// of elements of equal small norm; the lattice they generate, reduced.
inline UnitLattice unit_search(const RootSystem& rs, const QuarticForm& F, const UnitSearchOptions& opt = {}) {
  if (!F.is_monic()) throw ContractError("unit_search: form must be monic");
  if (F.disc() == 0) throw ContractError("unit_search: zero discriminant");
  const int required = rs.r + rs.s - 1;
  UnitLattice L;
  L.rank = required;
  std::vector<Vec4> basis;
  std::vector<std::vector<mpz_class>> exps;

  auto add_unit = [&](const ZAlpha& u, const std::string& src) {
    mpz_class n = zalpha::norm(u, F);
    if (n != 1 && n != -1) return;
    Vec4 lv = log_embedding(rs, u);
    if (sqrt(detail::mid_norm2(lv)) < Real::from_double(1e-12, rs.prec)) return;  // root of unity
    for (const auto& g : L.generators) {
      // skip exact repeats and inverses
      Vec4 d = lv - g.logv, s = lv + g.logv;
      if (sqrt(detail::mid_norm2(d)) < Real::from_double(1e-20, rs.prec) ||
          sqrt(detail::mid_norm2(s)) < Real::from_double(1e-20, rs.prec))
        return;
    }
    L.generators.push_back({u, lv, static_cast<int>(n.get_si()), src});
    for (auto& e : exps) e.push_back(0);
    std::vector<mpz_class> e(L.generators.size(), mpz_class(0));
    e.back() = 1;
    detail::lattice_insert(basis, exps, lv, e);
  };

  // (a) x - alpha y over solutions
  auto sols = enumerate_solutions(F, rs, opt.solution_ymax);
  std::vector<std::pair<mpz_class, mpz_class>> pairs;
  for (const auto& s : sols) pairs.emplace_back(s.x, s.y);
  for (const auto& s : opt.extra_solutions) pairs.push_back(s);
  for (const auto& [x, y] : pairs) {
    if (y == 0) continue;
    add_unit(ZAlpha{x, -y, 0, 0}, "solution " + x.get_str() + "," + y.get_str());
  }

  // (b) box in power-basis coordinates, with a floating prefilter on the norm
  std::array<std::complex<double>, 4> al;
  for (int m = 0; m < 4; ++m) al[m] = {rs.roots[m].re.to_double(), rs.roots[m].im.to_double()};
  std::map<long, std::vector<ZAlpha>> buckets;
  const int E = opt.effort;
  for (int c3 = 0; c3 <= E; ++c3)
    for (int c2 = -E; c2 <= E; ++c2)
      for (int c1 = -E; c1 <= E; ++c1)
        for (int c0 = -E; c0 <= E; ++c0) {
          // one representative of +-u: first nonzero from the top is positive
          int lead = c3 ? c3 : c2 ? c2 : c1 ? c1 : c0;
          if (lead <= 0) continue;
          if (c1 == 0 && c2 == 0 && c3 == 0) continue;  // rational integers
          double nrm = 1;
          for (int m = 0; m < 4; ++m) {
            std::complex<double> a = al[m];
            nrm *= std::abs(double(c0) + a * (double(c1) + a * (double(c2) + a * double(c3))));
          }
          if (nrm > 16.5) continue;
          ZAlpha u{c0, c1, c2, c3};
          long nr = std::lround(nrm);
          if (std::fabs(nrm - nr) > 1e-6 * (1 + nrm) || nr == 0) continue;
          if (nr == 1) add_unit(u, "box");
          else if (buckets[nr].size() < 24) buckets[nr].push_back(u);
        }
  // (c) quotients of elements with equal |norm|
  for (auto& [nr, els] : buckets) {
    for (size_t i = 0; i < els.size(); ++i)
      for (size_t j = i + 1; j < els.size(); ++j) {
        ZAlpha q;
        if (zalpha::divide(els[i], els[j], F, q)) add_unit(q, "quotient");
      }
  }

  L.basis = basis;
  L.exps = exps;
  if (static_cast<int>(L.basis.size()) < required)
    throw InsufficientUnitsError(static_cast<int>(L.basis.size()), required);
  L = reduce_basis(std::move(L));
  return L;
}

/// Power-basis coordinates of basis unit k, rebuilt from the generator
/// exponents. Throws if the exponents are too large to be worth expanding.
inline ZAlpha basis_unit(const UnitLattice& L, size_t k, const QuarticForm& F) {
  if (L.exps.empty()) throw ContractError("basis_unit: synthetic lattice has no generators");
  mpz_class total = 0;
  for (const auto& x : L.exps[k]) total += abs(x);
  if (total > 4096) throw ContractError("basis_unit: exponents too large to expand");
  ZAlpha u{1, 0, 0, 0};
  for (size_t g = 0; g < L.generators.size(); ++g)
    if (L.exps[k][g] != 0) u = zalpha::mul(u, zalpha::power(L.generators[g].coords, L.exps[k][g], F), F);
  return u;
}

/// ||b_2|| ||b_3|| against (2/sqrt 3) Vol for a rank-2 lattice. A Lagrange
/// reduced basis satisfies Vol <= ||b_2|| ||b_3|| <= (2/sqrt 3) Vol; the
/// second predicate is the reading with the inequality reversed.
inline std::array<Predicate, 2> parallelogram_check(const UnitLattice& L) {
  if (L.basis.size() != 2) throw ContractError("parallelogram_check: rank must be 2");
  const mpfr_prec_t p = L.basis[0][0].prec();
  Ball prod = norm2(L.basis[0]) * norm2(L.basis[1]);
  Ball c = Ball::from_int(2, p) / sqrt(Ball::from_int(3, p)) * L.volume;
  Predicate upper = predicate_le("paral", prod, c);
  Predicate printed = predicate_le("paral.reversed", c, prod);
  printed.applicable = false;
  return {upper, printed};
}

struct Decomposition {
  std::vector<mpz_class> m;
  Ball residual;
  std::vector<Predicate> mk;  ///< ||m_k b_k|| <= ||target - origin||, informational
};

/// target - origin = sum m_k b_k with integer m_k.
inline Decomposition decompose_phi(const UnitLattice& L, const PhiVector& target, const PhiVector& origin) {
  Vec4 diff = target.c - origin.c;
  const mpfr_prec_t p = diff[0].prec();
  Decomposition out;
  if (L.basis.empty()) throw ContractError("decompose_phi: empty lattice");
  auto g = detail::gram_mid(L.basis);
  std::vector<Real> rhs;
  for (const auto& b : L.basis) rhs.push_back(dot(b, diff).mid());
  auto c = detail::solve_real(g, rhs);
  Vec4 res = diff;
  for (size_t k = 0; k < c.size(); ++k) {
    out.m.push_back(c[k].round_z());
    Ball f = Ball::from_z(out.m.back(), p);
    for (int i = 0; i < 4; ++i) res[i] = res[i] - f * L.basis[k][i];
  }
  out.residual = norm2(res);
  Ball dn = norm2(diff);
  Real tol(1L, kRadiusBits);
  mpfr_mul_2si(tol.raw(), tol.raw(), -static_cast<long>(p) / 2, MPFR_RNDN);
  Real scale = std::max(Real(1L, kRadiusBits), dn.hi());
  Ball tolb(tol * scale);
  if (!possibly_le(out.residual, tolb))
    throw DecompositionError("decompose_phi: residual " + out.residual.str(6) + " above tolerance");
  for (size_t k = 0; k < c.size(); ++k) {
    Ball lhs = abs(Ball::from_z(out.m[k], p)) * norm2(L.basis[k]);
    Predicate pr = predicate_le("mk", lhs, dn + tolb);
    pr.applicable = false;
    out.mk.push_back(pr);
  }
  return out;
}

}  // namespace thueq
