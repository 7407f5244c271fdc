#pragma once

// Integer binary quartic forms F(x,y) = a0 x^4 + a1 x^3 y + a2 x^2 y^2 + a3 x y^3 + a4 y^4.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thueq/errors.hpp"
#include "thueq/poly.hpp"

namespace thueq {

/// Closed-form discriminant of a x^4 + b x^3 + c x^2 + d x + e.
inline mpz_class quartic_discriminant(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                                      const mpz_class& d, const mpz_class& e) {
  mpz_class D = 256 * a * a * a * e * e * e;
  D -= 192 * a * a * b * d * e * e;
  D -= 128 * a * a * c * c * e * e;
  D += 144 * a * a * c * d * d * e;
  D -= 27 * a * a * d * d * d * d;
  D += 144 * a * b * b * c * e * e;
  D -= 6 * a * b * b * d * d * e;
  D -= 80 * a * b * c * c * d * e;
  D += 18 * a * b * c * d * d * d;
  D += 16 * a * c * c * c * c * e;
  D -= 4 * a * c * c * c * d * d;
  D -= 27 * b * b * b * b * e * e;
  D += 18 * b * b * b * c * d * e;
  D -= 4 * b * b * b * d * d * d;
  D -= 4 * b * b * c * c * c * e;
  D += b * b * c * c * d * d;
  return D;
}

class QuarticForm {
 public:
  QuarticForm() : QuarticForm(0, 0, 0, 0, 0) {}
  QuarticForm(mpz_class a0, mpz_class a1, mpz_class a2, mpz_class a3, mpz_class a4)
      : a_{std::move(a0), std::move(a1), std::move(a2), std::move(a3), std::move(a4)} {
    disc_ = quartic_discriminant(a_[0], a_[1], a_[2], a_[3], a_[4]);
  }
  explicit QuarticForm(const std::array<mpz_class, 5>& a) : QuarticForm(a[0], a[1], a[2], a[3], a[4]) {}

  const mpz_class& operator[](int i) const { return a_[i]; }
  const std::array<mpz_class, 5>& coeffs() const { return a_; }
  const mpz_class& disc() const { return disc_; }

  /// max |a_i|
  mpz_class naive_height() const {
    mpz_class h = 0;
    for (const auto& c : a_)
      if (abs(c) > h) h = abs(c);
    return h;
  }

  /// f(x) = F(x,1), ascending coefficients.
  IntPoly dehomogenized() const {
    IntPoly p{a_[4], a_[3], a_[2], a_[1], a_[0]};
    trim(p);
    return p;
  }

  mpz_class operator()(const mpz_class& x, const mpz_class& y) const {
    // Homogeneous Horner: ((a0 x + a1 y) x + a2 y^2) ...
    mpz_class acc = a_[0];
    mpz_class ypow = 1;
    for (int i = 1; i <= 4; ++i) {
      ypow *= y;
      acc = acc * x + a_[i] * ypow;
    }
    return acc;
  }

  bool is_monic() const { return a_[0] == 1; }

  /// "a0 a1 a2 a3 a4"
  std::string str() const {
    std::string s;
    for (int i = 0; i < 5; ++i) {
      if (i) s += ' ';
      s += a_[i].get_str();
    }
    return s;
  }

  friend bool operator==(const QuarticForm& f, const QuarticForm& g) { return f.a_ == g.a_; }

 private:
  std::array<mpz_class, 5> a_;
  mpz_class disc_;
};

inline const mpz_class& discriminant(const QuarticForm& F) { return F.disc(); }

/// (x, y) -> (a x + b y, c x + d y)
struct GL2Action {
  mpz_class a = 1, b = 0, c = 0, d = 1;

  mpz_class det() const { return a * d - b * c; }
  bool valid() const {
    mpz_class D = det();
    return D == 1 || D == -1;
  }
  static GL2Action identity() { return {}; }
  GL2Action inverse() const {
    mpz_class D = det();
    // For det = +-1, the inverse is D * adj.
    return {D * d, -D * b, -D * c, D * a};
  }
  /// Composition: (this * o)(v) = this(o(v)) as matrices.
  GL2Action operator*(const GL2Action& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  std::pair<mpz_class, mpz_class> apply(const mpz_class& x, const mpz_class& y) const {
    return {a * x + b * y, c * x + d * y};
  }
  std::string str() const {
    return a.get_str() + " " + b.get_str() + " " + c.get_str() + " " + d.get_str();
  }
};

/// G(x,y) = F(a x + b y, c x + d y).
inline QuarticForm gl2_transform(const QuarticForm& F, const GL2Action& T) {
  if (!T.valid()) throw ContractError("transform is not unimodular: det = " + T.det().get_str());
  // Work with the dehomogenized x-polynomials: u = a t + b, v = c t + d.
  const IntPoly u{T.b, T.a}, v{T.d, T.c};
  std::array<mpz_class, 5> g;
  for (auto& c : g) c = 0;
  for (int i = 0; i <= 4; ++i) {
    IntPoly term{F[i]};
    for (int k = 0; k < 4 - i; ++k) term = poly_mul(term, u);
    for (int k = 0; k < i; ++k) term = poly_mul(term, v);
    // coefficient of t^j corresponds to x^j y^(4-j), i.e. a_(4-j).
    for (size_t j = 0; j < term.size(); ++j) g[4 - j] += term[j];
  }
  return QuarticForm(g);
}

/// Five whitespace-separated decimal integers.
inline QuarticForm parse_form(const std::string& text) {
  std::istringstream in(text);
  std::vector<mpz_class> vals;
  std::string tok;
  while (in >> tok) {
    size_t start = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
    bool ok = tok.size() > start;
    for (size_t i = start; i < tok.size() && ok; ++i)
      ok = std::isdigit(static_cast<unsigned char>(tok[i])) != 0;
    if (!ok) throw ParseError("malformed coefficient '" + tok + "'");
    vals.emplace_back(tok[0] == '+' ? tok.substr(1) : tok, 10);
  }
  if (vals.size() != 5)
    throw ParseError("expected 5 coefficients, got " + std::to_string(vals.size()));
  bool all_zero = true;
  for (const auto& v : vals) all_zero = all_zero && v == 0;
  if (all_zero) throw ParseError("degenerate form: all coefficients are zero");
  return QuarticForm(vals[0], vals[1], vals[2], vals[3], vals[4]);
}

namespace detail {

inline mpz_class pollard_rho(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto step = [&](mpz_class& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (d == 1) {
      step(x);
      step(y);
      step(y);
      mpz_class diff = abs(x - y);
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(mpz_class n, std::vector<mpz_class>& primes) {
  for (unsigned long p = 2; p < 1000 && n > 1; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    primes.push_back(n);
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace detail

/// Positive divisors of |n| (n != 0), ascending.
inline std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> primes;
  detail::factor_into(abs(n), primes);
  std::sort(primes.begin(), primes.end());
  std::vector<mpz_class> divs{1};
  for (size_t i = 0; i < primes.size();) {
    size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    size_t base = divs.size();
    mpz_class pk = 1;
    for (size_t e = i; e < j; ++e) {
      pk *= primes[i];
      for (size_t t = 0; t < base; ++t) divs.push_back(divs[t] * pk);
    }
    i = j;
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Upper bound for the coefficients of any quadratic factor of f:
/// binom(2,k) M(f) <= 2 ||f||_2.
inline mpz_class quadratic_factor_bound(const IntPoly& f) {
  mpz_class s = 0;
  for (const auto& c : f) s += c * c;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  return 2 * (r + 1);
}

/// Irreducibility of F over Q (equivalently over Z up to content).
inline bool is_irreducible(const QuarticForm& F) {
  if (F[0] == 0 || F[4] == 0) return false;
  if (F.disc() == 0) return false;
  const IntPoly f = F.dehomogenized();
  const auto d0 = divisors(F[0]);
  const auto d4 = divisors(F[4]);

  for (const auto& q : d0)
    for (const auto& p : d4)
      for (int s : {1, -1}) {
        IntPoly lin{-s * p, q};
        if (poly_divides(f, lin)) return false;
      }

  // f = (b0 x^2 + b1 x + b2)(c0 x^2 + c1 x + c2), b0 > 0.
  const mpz_class bound = quadratic_factor_bound(f);
  const mpz_class& a0 = F[0];
  const mpz_class& a1 = F[1];
  const mpz_class& a3 = F[3];
  const mpz_class& a4 = F[4];
  for (const auto& b0 : d0)
    for (const auto& p2 : d4)
      for (int s : {1, -1}) {
        mpz_class b2 = s * p2;
        mpz_class c0 = a0 / b0, c2 = a4 / b2;
        // a1 = b0 c1 + c0 b1, a3 = b2 c1 + c2 b1
        mpz_class det = c0 * b2 - b0 * c2;
        auto try_b1 = [&](const mpz_class& b1) {
          IntPoly g{b2, b1, b0};
          return poly_divides(f, g);
        };
        if (det != 0) {
          mpz_class num = a1 * b2 - b0 * a3;
          if (!mpz_divisible_p(num.get_mpz_t(), det.get_mpz_t())) continue;
          if (try_b1(num / det)) return false;
        } else {
          for (mpz_class b1 = -bound; b1 <= bound; ++b1)
            if (try_b1(b1)) return false;
        }
      }
  return true;
}

/// Canonical representative of {(x,y), (-x,-y)}: y > 0, or y = 0 and x > 0.
inline void canonicalize(mpz_class& x, mpz_class& y) {
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
}

struct MonicizeResult {
  QuarticForm form;
  GL2Action transform;
};

/// F*(x,y) = F(x0 x + x1 y, y0 x + y1 y) with x0 y1 - x1 y0 = 1, so that
/// F*(1,0) = F(x0,y0) = +-1.
inline MonicizeResult monicize(const QuarticForm& F, const mpz_class& x0, const mpz_class& y0) {
  if (gcd(x0, y0) != 1) throw ContractError("monicize: (" + x0.get_str() + "," + y0.get_str() +
                                            ") is not a coprime pair");
  mpz_class v = F(x0, y0);
  if (v != 1 && v != -1)
    throw ContractError("monicize: (" + x0.get_str() + "," + y0.get_str() + ") is not a solution");
  if (x0 == 1 && y0 == 0) return {F, GL2Action::identity()};
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x0.get_mpz_t(), y0.get_mpz_t());
  if (g < 0) {
    s = -s;
    t = -t;
  }
  // s x0 + t y0 = 1  =>  x0 * s - (-t) * y0 = 1
  GL2Action T{x0, -t, y0, s};
  return {gl2_transform(F, T), T};
}

}  // namespace thueq
