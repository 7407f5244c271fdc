#pragma once

// Multiprecision reals and midpoint-radius balls on top of MPFR.
//
// Every Real carries its own precision; binary operations produce a result
// at the larger of the two operand precisions. There is no global precision
// state, so values of different precision can be used from several threads.
//
// A Ball is a midpoint with a nonnegative radius. Radii are kept at 64 bits
// and every radius computation rounds upward, so a ball always encloses the
// exact value of the expression it was computed from.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "thueq/errors.hpp"

namespace thueq {

inline constexpr mpfr_prec_t kDefaultBits = 128;
inline constexpr mpfr_prec_t kRadiusBits = 64;

class Real {
 public:
  explicit Real(mpfr_prec_t bits = kDefaultBits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(long n, mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, n, rnd);
  }
  Real(const mpz_class& z, mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, z.get_mpz_t(), rnd);
  }
  Real(const mpq_class& q, mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  Real(const Real& src, mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, bits);
    mpfr_set(v_, src.v_, rnd);
  }
  static Real from_double(double d, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static Real from_string(const std::string& s, mpfr_prec_t bits) {
    Real r(bits);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      throw ParseError("not a decimal number: '" + s + "'");
    }
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Scientific notation with `digits` significant digits.
  std::string str(int digits = 20) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  mpz_class floor_z() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }
  mpz_class ceil_z() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
    return z;
  }
  mpz_class round_z() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

// Rounded arithmetic on Reals with an explicit target precision and mode.
namespace rnd {

inline Real add(const Real& a, const Real& b, mpfr_prec_t p, mpfr_rnd_t m) {
  Real r(p);
  mpfr_add(r.raw(), a.raw(), b.raw(), m);
  return r;
}
inline Real sub(const Real& a, const Real& b, mpfr_prec_t p, mpfr_rnd_t m) {
  Real r(p);
  mpfr_sub(r.raw(), a.raw(), b.raw(), m);
  return r;
}
inline Real mul(const Real& a, const Real& b, mpfr_prec_t p, mpfr_rnd_t m) {
  Real r(p);
  mpfr_mul(r.raw(), a.raw(), b.raw(), m);
  return r;
}
inline Real div(const Real& a, const Real& b, mpfr_prec_t p, mpfr_rnd_t m) {
  Real r(p);
  mpfr_div(r.raw(), a.raw(), b.raw(), m);
  return r;
}
inline Real abs(const Real& a, mpfr_prec_t p, mpfr_rnd_t m) {
  Real r(p);
  mpfr_abs(r.raw(), a.raw(), m);
  return r;
}

}  // namespace rnd

inline Real operator+(const Real& a, const Real& b) {
  return rnd::add(a, b, std::max(a.prec(), b.prec()), MPFR_RNDN);
}
inline Real operator-(const Real& a, const Real& b) {
  return rnd::sub(a, b, std::max(a.prec(), b.prec()), MPFR_RNDN);
}
inline Real operator*(const Real& a, const Real& b) {
  return rnd::mul(a, b, std::max(a.prec(), b.prec()), MPFR_RNDN);
}
inline Real operator/(const Real& a, const Real& b) {
  return rnd::div(a, b, std::max(a.prec(), b.prec()), MPFR_RNDN);
}
inline Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real abs(const Real& a) { return rnd::abs(a, a.prec(), MPFR_RNDN); }
inline Real sqrt(const Real& a) {
  Real r(a.prec());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real log(const Real& a) {
  Real r(a.prec());
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real exp(const Real& a) {
  Real r(a.prec());
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real mul_2si(const Real& a, long e) {
  Real r(a.prec());
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

class Ball;
Ball operator+(const Ball& a, const Ball& b);
Ball operator-(const Ball& a, const Ball& b);
Ball operator*(const Ball& a, const Ball& b);
Ball operator/(const Ball& a, const Ball& b);

namespace detail {

inline Real zero_radius() { return Real(kRadiusBits); }

// Upper bound on the rounding error of a round-to-nearest result `r`.
inline Real rounding_error(const Real& r) {
  if (r.is_zero()) return zero_radius();
  Real e = rnd::abs(r, kRadiusBits, MPFR_RNDU);
  mpfr_mul_2si(e.raw(), e.raw(), 1 - static_cast<long>(r.prec()), MPFR_RNDU);
  return e;
}

inline Real up(const Real& a) { return Real(a, kRadiusBits, MPFR_RNDU); }
inline Real abs_up(const Real& a) { return rnd::abs(a, kRadiusBits, MPFR_RNDU); }
inline Real radd(const Real& a, const Real& b) { return rnd::add(a, b, kRadiusBits, MPFR_RNDU); }
inline Real rmul(const Real& a, const Real& b) { return rnd::mul(a, b, kRadiusBits, MPFR_RNDU); }

}  // namespace detail

class Ball {
 public:
  Ball() : mid_(kDefaultBits), rad_(kRadiusBits) {}
  explicit Ball(Real mid) : mid_(std::move(mid)), rad_(kRadiusBits) {}
  Ball(Real mid, Real rad) : mid_(std::move(mid)), rad_(Real(rad, kRadiusBits, MPFR_RNDU)) {
    if (rad_.sign() < 0) mpfr_neg(rad_.raw(), rad_.raw(), MPFR_RNDU);
  }

  static Ball from_int(long n, mpfr_prec_t bits) { return from_z(mpz_class(n), bits); }
  static Ball from_z(const mpz_class& z, mpfr_prec_t bits) {
    Real m(bits);
    int inexact = mpfr_set_z(m.raw(), z.get_mpz_t(), MPFR_RNDN);
    Ball b(std::move(m));
    if (inexact) b.rad_ = detail::rounding_error(b.mid_);
    return b;
  }
  static Ball from_q(const mpq_class& q, mpfr_prec_t bits) {
    Real m(bits);
    int inexact = mpfr_set_q(m.raw(), q.get_mpq_t(), MPFR_RNDN);
    Ball b(std::move(m));
    if (inexact) b.rad_ = detail::rounding_error(b.mid_);
    return b;
  }
  static Ball from_double(double d, mpfr_prec_t bits) { return Ball(Real::from_double(d, bits)); }
  /// Decimal string, rounded; the rounding error is folded into the radius.
  static Ball from_string(const std::string& s, mpfr_prec_t bits) {
    Ball b(Real::from_string(s, bits));
    b.rad_ = detail::rounding_error(b.mid_);
    return b;
  }
  /// Smallest ball containing [lo, hi].
  static Ball from_interval(const Real& lo, const Real& hi) {
    mpfr_prec_t p = std::max(lo.prec(), hi.prec());
    Real m = rnd::add(lo, hi, p, MPFR_RNDN);
    mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
    Real r1 = rnd::sub(hi, m, kRadiusBits, MPFR_RNDU);
    Real r2 = rnd::sub(m, lo, kRadiusBits, MPFR_RNDU);
    return Ball(std::move(m), std::max(r1, r2));
  }

  const Real& mid() const { return mid_; }
  const Real& rad() const { return rad_; }
  mpfr_prec_t prec() const { return mid_.prec(); }

  Real lo() const { return rnd::sub(mid_, rad_, mid_.prec() + 8, MPFR_RNDD); }
  Real hi() const { return rnd::add(mid_, rad_, mid_.prec() + 8, MPFR_RNDU); }
  /// Lower bound of |x| (zero if the ball straddles zero).
  Real abs_lo() const {
    Real a = rnd::abs(mid_, mid_.prec() + 8, MPFR_RNDD);
    Real r = rnd::sub(a, rad_, mid_.prec() + 8, MPFR_RNDD);
    if (r.sign() < 0) return Real(0L, mid_.prec());
    return r;
  }
  Real abs_hi() const { return rnd::add(detail::abs_up(mid_), rad_, kRadiusBits, MPFR_RNDU); }

  bool contains_zero() const { return abs_lo().is_zero(); }
  bool contains(const Real& x) const { return lo() <= x && x <= hi(); }
  bool is_exact() const { return rad_.is_zero(); }
  double to_double() const { return mid_.to_double(); }

  /// Ball grown by an additional radius.
  Ball widened(const Real& extra) const {
    Ball b(*this);
    b.rad_ = detail::radd(rad_, detail::abs_up(extra));
    return b;
  }
  /// Same ball at a different working precision for its midpoint.
  Ball with_prec(mpfr_prec_t bits) const {
    Ball b(Real(mid_, bits, MPFR_RNDN), rad_);
    if (bits < mid_.prec()) b.rad_ = detail::radd(b.rad_, detail::rounding_error(b.mid_));
    return b;
  }

  /// "mid ±rad" with `digits` significant digits of the midpoint.
  std::string str(int digits = 20) const {
    std::string out = mid_.str(digits);
    out += " +/- ";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.2Re", rad_.raw());
    out += buf;
    mpfr_free_str(buf);
    return out;
  }

  Ball operator-() const { return Ball(-mid_, rad_); }
  Ball& operator+=(const Ball& o) { return *this = *this + o; }
  Ball& operator-=(const Ball& o) { return *this = *this - o; }
  Ball& operator*=(const Ball& o) { return *this = *this * o; }
  Ball& operator/=(const Ball& o) { return *this = *this / o; }

 private:
  friend Ball operator+(const Ball&, const Ball&);
  friend Ball operator-(const Ball&, const Ball&);
  friend Ball operator*(const Ball&, const Ball&);
  friend Ball operator/(const Ball&, const Ball&);
  friend Ball sqrt(const Ball&);
  friend Ball log(const Ball&);
  friend Ball exp(const Ball&);

  Real mid_;
  Real rad_;
};

inline Ball operator+(const Ball& a, const Ball& b) {
  Ball r(a.mid_ + b.mid_);
  r.rad_ = detail::radd(detail::radd(a.rad_, b.rad_), detail::rounding_error(r.mid_));
  return r;
}
inline Ball operator-(const Ball& a, const Ball& b) {
  Ball r(a.mid_ - b.mid_);
  r.rad_ = detail::radd(detail::radd(a.rad_, b.rad_), detail::rounding_error(r.mid_));
  return r;
}
inline Ball operator*(const Ball& a, const Ball& b) {
  using namespace detail;
  Ball r(a.mid_ * b.mid_);
  Real t = radd(rmul(abs_up(a.mid_), b.rad_), rmul(abs_up(b.mid_), a.rad_));
  t = radd(t, rmul(a.rad_, b.rad_));
  r.rad_ = radd(t, rounding_error(r.mid_));
  return r;
}
inline Ball operator/(const Ball& a, const Ball& b) {
  using namespace detail;
  Real blo = b.abs_lo();
  if (blo.is_zero()) throw NumericalError("ball division by a ball containing zero");
  Ball r(a.mid_ / b.mid_);
  Real num = radd(rmul(abs_up(a.mid_), b.rad_), rmul(abs_up(b.mid_), a.rad_));
  Real den = rnd::mul(rnd::abs(b.mid_, kRadiusBits, MPFR_RNDD), Real(blo, kRadiusBits, MPFR_RNDD),
                      kRadiusBits, MPFR_RNDD);
  r.rad_ = radd(rnd::div(num, den, kRadiusBits, MPFR_RNDU), rounding_error(r.mid_));
  return r;
}

inline Ball abs(const Ball& a) { return a.mid().sign() < 0 ? -a : a; }

inline Ball sqrt(const Ball& a) {
  using namespace detail;
  if (a.hi().sign() < 0) throw NumericalError("sqrt of a negative ball");
  Real lo = a.lo();
  if (lo.sign() <= 0) {
    // Enclose [0, sqrt(hi)].
    Real h = a.hi();
    Real s(h.prec());
    mpfr_sqrt(s.raw(), h.raw(), MPFR_RNDU);
    return Ball::from_interval(Real(0L, a.prec()), s);
  }
  Ball r(thueq::sqrt(a.mid_));
  Real sm(kRadiusBits);
  mpfr_sqrt(sm.raw(), Real(a.mid_, kRadiusBits, MPFR_RNDD).raw(), MPFR_RNDD);
  r.rad_ = radd(rnd::div(a.rad_, sm, kRadiusBits, MPFR_RNDU), rounding_error(r.mid_));
  return r;
}

inline Ball log(const Ball& a) {
  using namespace detail;
  Real lo = a.lo();
  if (lo.sign() <= 0) throw NumericalError("log of a ball not bounded away from zero");
  Ball r(thueq::log(a.mid_));
  r.rad_ = radd(rnd::div(a.rad_, Real(lo, kRadiusBits, MPFR_RNDD), kRadiusBits, MPFR_RNDU),
                rounding_error(r.mid_));
  return r;
}

inline Ball exp(const Ball& a) {
  using namespace detail;
  Ball r(thueq::exp(a.mid_));
  Real em(kRadiusBits);
  mpfr_exp(em.raw(), Real(a.mid_, kRadiusBits, MPFR_RNDU).raw(), MPFR_RNDU);
  Real er(kRadiusBits);
  mpfr_expm1(er.raw(), a.rad_.raw(), MPFR_RNDU);
  r.rad_ = radd(rmul(em, er), rounding_error(r.mid_));
  return r;
}

/// x^e for x > 0.
inline Ball pow(const Ball& x, const Ball& e) { return exp(e * log(x)); }

inline Ball max(const Ball& a, const Ball& b) {
  Real lo = std::max(a.lo(), b.lo());
  Real hi = std::max(a.hi(), b.hi());
  return Ball::from_interval(lo, hi);
}
inline Ball min(const Ball& a, const Ball& b) {
  Real lo = std::min(a.lo(), b.lo());
  Real hi = std::min(a.hi(), b.hi());
  return Ball::from_interval(lo, hi);
}

/// a < b holds for every pair of points in the two balls.
inline bool certainly_lt(const Ball& a, const Ball& b) { return a.hi() < b.lo(); }
/// a <= b is not excluded: some point of a is <= some point of b.
inline bool possibly_le(const Ball& a, const Ball& b) { return a.lo() <= b.hi(); }

inline Ball const_pi(mpfr_prec_t bits) {
  Real m(bits);
  mpfr_const_pi(m.raw(), MPFR_RNDN);
  return Ball(m, detail::rounding_error(m));
}
inline Ball const_log2(mpfr_prec_t bits) {
  Real m(bits);
  mpfr_const_log2(m.raw(), MPFR_RNDN);
  return Ball(m, detail::rounding_error(m));
}
inline Ball const_e(mpfr_prec_t bits) { return exp(Ball::from_int(1, bits)); }

/// Complex ball as a pair of real balls (a box around the value).
struct CBall {
  Ball re;
  Ball im;

  CBall() = default;
  CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
  explicit CBall(Ball r) : re(std::move(r)), im(Ball(Real(re.prec()))) {}

  mpfr_prec_t prec() const { return re.prec(); }
  CBall conj() const { return CBall(re, -im); }
  bool is_real() const { return im.mid().is_zero() && im.rad().is_zero(); }
  CBall operator-() const { return CBall(-re, -im); }
};

inline CBall operator+(const CBall& a, const CBall& b) { return CBall(a.re + b.re, a.im + b.im); }
inline CBall operator-(const CBall& a, const CBall& b) { return CBall(a.re - b.re, a.im - b.im); }
inline CBall operator*(const CBall& a, const CBall& b) {
  if (a.is_real() && b.is_real()) return CBall(a.re * b.re, a.im);
  return CBall(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline CBall operator*(const CBall& a, const Ball& s) { return CBall(a.re * s, a.im * s); }
inline Ball norm2(const CBall& a) {
  if (a.is_real()) return a.re * a.re;
  return a.re * a.re + a.im * a.im;
}
inline Ball abs(const CBall& a) {
  if (a.is_real()) return abs(a.re);
  return sqrt(norm2(a));
}
inline CBall operator/(const CBall& a, const CBall& b) {
  if (b.is_real()) return CBall(a.re / b.re, a.is_real() ? a.im : a.im / b.re);
  Ball d = norm2(b);
  CBall n = a * b.conj();
  return CBall(n.re / d, n.im / d);
}

}  // namespace thueq
