#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "lw/errors.hpp"
#include "lw/rational.hpp"

namespace lw {

// Arbitrary-precision binary float. Each value carries its own precision;
// binary operations round to the larger of the two operand precisions.
class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, kMinPrec); mpfr_set_zero(v_, 1); }
  explicit BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, kMinPrec);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_long(long x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_double(double x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_rat(const Rat& q, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  // Decimal literal, e.g. "1e16" or "3.25".
  static BigFloat from_decimal(const std::string& s, mpfr_prec_t prec) {
    BigFloat r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw ConfigError("bad decimal literal: " + s);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  // Same value carried at precision p (exact whenever p >= prec()).
  BigFloat at_prec(mpfr_prec_t p) const {
    BigFloat r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  int sgn() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string to_decimal(int digits = 0) const {
    if (digits <= 0)
      digits = static_cast<int>(static_cast<double>(prec()) * 0.30103) + 2;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat log(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }
  friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }

 private:
  static constexpr mpfr_prec_t kMinPrec = 64;
  static mpfr_prec_t clamp_prec(mpfr_prec_t p) { return std::max<mpfr_prec_t>(p, kMinPrec); }
  static mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
    return std::max(a.prec(), b.prec());
  }
  mpfr_t v_;
};

using BFVec = std::vector<BigFloat>;

// base^e for exact rational e; the exponent is injected with 64 guard bits,
// the power itself is correctly rounded by MPFR at the base's precision.
inline BigFloat pow_rat(const BigFloat& base, const Rat& e) {
  if (e == 0) return BigFloat::from_long(1, base.prec());
  BigFloat expo(base.prec() + 64);
  mpfr_set_q(expo.raw(), e.get_mpq_t(), MPFR_RNDN);
  BigFloat r(base.prec());
  mpfr_pow(r.raw(), base.raw(), expo.raw(), MPFR_RNDN);
  if (!r.is_finite())
    throw NumericError("pow_rat overflowed the floating-point exponent range");
  return r;
}

// log_t(x) = log x / log t; both inputs must be positive.
inline BigFloat log_base(const BigFloat& x, const BigFloat& t) {
  if (x.sgn() <= 0 || t.sgn() <= 0)
    throw NumericError("log_base requires positive arguments");
  return log(x) / log(t);
}

inline BigFloat dot(const BFVec& a, const BFVec& b) {
  require(a.size() == b.size(), "dot: dimension mismatch");
  mpfr_prec_t p = 64;
  for (const auto& x : a) p = std::max(p, x.prec());
  for (const auto& x : b) p = std::max(p, x.prec());
  BigFloat acc(p);
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline BigFloat inf_norm(const BFVec& a) {
  BigFloat m(64);
  for (const auto& x : a) m = max(m, abs(x));
  return m;
}

}  // namespace lw
