#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

#include "lw/bigfloat.hpp"
#include "lw/errors.hpp"
#include "lw/rational.hpp"

namespace lw {

inline mpz_class factorial_z(long k) {
  require(k >= 0, "factorial_z: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

namespace detail {

// The formulas are exact big-integer expressions whose operand sizes grow
// double-exponentially in r; the cap keeps allocations sane.
inline void check_threshold_r(int r) {
  require(r >= 2, "threshold formulas need r >= 2");
  require(r <= 12, "threshold formulas capped at r = 12");
}

}  // namespace detail

// Smallest parameter value for which the wide-neighborhood limit is
// certified at radius theta:
//   max((2N)!, ceil(((2N+1)!)^24 / (1-theta)^3))^(2^(r-1)),  2N = 10r - 2.
inline mpz_class min_valid_t_exact(int r, const Rat& theta) {
  detail::check_threshold_r(r);
  require(theta > 0 && theta < 1, "min_valid_t: need 0 < theta < 1");
  const Rat one_minus = Rat(1) - theta;
  const long twoN = 10L * r - 2;
  mpz_class num;
  mpz_pow_ui(num.get_mpz_t(), factorial_z(twoN + 1).get_mpz_t(), 24);
  mpz_class den_cubed;
  mpz_pow_ui(den_cubed.get_mpz_t(), one_minus.get_den().get_mpz_t(), 3);
  num *= den_cubed;
  mpz_class num_cubed;
  mpz_pow_ui(num_cubed.get_mpz_t(), one_minus.get_num().get_mpz_t(), 3);
  mpz_class quot;
  mpz_cdiv_q(quot.get_mpz_t(), num.get_mpz_t(), num_cubed.get_mpz_t());
  mpz_class inner = factorial_z(twoN);
  if (quot > inner) inner = quot;
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), inner.get_mpz_t(), 1UL << (r - 1));
  return out;
}

inline std::string min_valid_t(int r, const Rat& theta) {
  return min_valid_t_exact(r, theta).get_str();
}

inline size_t min_valid_t_digits(int r, const Rat& theta) {
  return min_valid_t(r, theta).size();
}

// Exact guarantee threshold ((2N)!)^{2^(r-1)} of the distance bound.
inline mpz_class delta_threshold_exact(int r) {
  detail::check_threshold_r(r);
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), factorial_z(10L * r - 2).get_mpz_t(),
             1UL << (r - 1));
  return out;
}

// Distance bound 2 log_t((2N+1)^2 ((2N)!)^4) with 2N = 10r - 2. Certified
// only at or above the exact guarantee threshold; heuristic below it.
inline double delta_bound(int r, const BigFloat& t) {
  detail::check_threshold_r(r);
  require(t > BigFloat::from_long(1, 64), "delta_bound: need t > 1");
  const double twoN = static_cast<double>(10 * r - 2);
  const double log_inner =
      2.0 * std::log(twoN + 1.0) + 4.0 * std::lgamma(twoN + 1.0);
  return 2.0 * log_inner / log(t).to_double();
}

inline bool delta_guaranteed(int r, const BigFloat& t) {
  const mpz_class thr = delta_threshold_exact(r);
  return mpfr_cmp_z(t.raw(), thr.get_mpz_t()) >= 0;
}

// Per-sample budget of the limit theorem at radius theta:
// log_t(2N/(1-theta)) + delta_bound.
inline double dinf_budget(int r, double theta, const BigFloat& t) {
  require(theta > 0.0 && theta < 1.0, "dinf_budget: need 0 < theta < 1");
  const double twoN = static_cast<double>(10 * r - 2);
  return std::log(twoN / (1.0 - theta)) / log(t).to_double() +
         delta_bound(r, t);
}

}  // namespace lw
