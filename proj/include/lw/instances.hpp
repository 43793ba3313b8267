#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lw/bigfloat.hpp"
#include "lw/errors.hpp"
#include "lw/linalg.hpp"
#include "lw/puiseux.hpp"
#include "lw/rational.hpp"
#include "lw/tropical.hpp"

namespace lw {

struct LWSpec {
  int r = 1;
};

// Slack form A x + w = b, (x, w) >= 0 of the LW(r) family. Row order is
// frozen: the w_1 row (x_1 <= t^2), the w_2 row (x_2 <= t), then for each
// j in [1, r) the rows of w_{3j}, w_{3j+1}, w_{3j+2}. All indices in names
// follow that 1-based labeling; storage is 0-based.
struct SlackLP {
  int r = 0;
  size_t n = 0, m = 0, N = 0;  // N = n + m
  SeriesMatrix A;              // m x n
  SeriesVec b;                 // m
  SeriesVec c;                 // n, objective <c, x>
};

// Dual feasibility data: s - A^T y = c with (s, y) >= 0.
struct DualLP {
  SeriesMatrix At;  // n x m
  SeriesVec b;
  SeriesVec c;
};

inline SlackLP build_lw(const LWSpec& spec) {
  require(spec.r >= 1, "build_lw: r must be >= 1");
  const int r = spec.r;
  SlackLP lp;
  lp.r = r;
  lp.n = static_cast<size_t>(2 * r);
  lp.m = static_cast<size_t>(3 * r - 1);
  lp.N = lp.n + lp.m;
  lp.A = SeriesMatrix(lp.m, lp.n);
  lp.b.assign(lp.m, PuiseuxSeries::zero());
  lp.c.assign(lp.n, PuiseuxSeries::zero());

  const PuiseuxSeries one = PuiseuxSeries::constant(Rat(1));
  const PuiseuxSeries t = PuiseuxSeries::t();

  lp.A(0, 0) = one;  // x_1 + w_1 = t^2
  lp.b[0] = PuiseuxSeries::monomial(Rat(1), Rat(2));
  lp.A(1, 1) = one;  // x_2 + w_2 = t
  lp.b[1] = t;

  for (int j = 1; j < r; ++j) {
    const size_t row_a = static_cast<size_t>(3 * j) - 1;  // w_{3j}
    const size_t row_b = row_a + 1;                       // w_{3j+1}
    const size_t row_c = row_a + 2;                       // w_{3j+2}
    const size_t xo = static_cast<size_t>(2 * j) - 2;     // x_{2j-1}
    const size_t xe = xo + 1;                             // x_{2j}
    const size_t xno = xo + 2;                            // x_{2j+1}
    const size_t xne = xo + 3;                            // x_{2j+2}
    const PuiseuxSeries frac_pow =
        PuiseuxSeries::monomial(Rat(1), Rat(1) - pow2(-j));

    lp.A(row_a, xno) = one;  // x_{2j+1} - t x_{2j-1} + w_{3j} = 0
    lp.A(row_a, xo) = -t;
    lp.A(row_b, xno) = one;  // x_{2j+1} - t x_{2j} + w_{3j+1} = 0
    lp.A(row_b, xe) = -t;
    lp.A(row_c, xne) = one;  // x_{2j+2} - t^{1-1/2^j}(x_{2j-1} + x_{2j}) + w_{3j+2} = 0
    lp.A(row_c, xo) = -frac_pow;
    lp.A(row_c, xe) = -frac_pow;
  }

  lp.c[0] = one;
  return lp;
}

// The original inequality description has 3r+1 constraints: the 3r-1 slack
// rows plus the explicit x_{2r-1} >= 0, x_{2r} >= 0.
inline size_t inequality_count(const LWSpec& spec) {
  return static_cast<size_t>(3 * spec.r + 1);
}

inline DualLP dual_lp(const SlackLP& lp) { return DualLP{lp.A.transpose(), lp.b, lp.c}; }

// Numeric instance at a concrete t > 1.
struct RealLP {
  int r = 0;
  size_t n = 0, m = 0, N = 0;
  Matrix<BigFloat> A;
  BFVec b, c;
  BigFloat t;
  mpfr_prec_t precision_bits = 256;
};

inline RealLP evaluate_lp(const SlackLP& lp, const BigFloat& t) {
  require(t > BigFloat::from_long(1, 64), "evaluate_lp: requires t > 1");
  RealLP out;
  out.r = lp.r;
  out.n = lp.n;
  out.m = lp.m;
  out.N = lp.N;
  out.t = t;
  out.precision_bits = t.prec();
  out.A = Matrix<BigFloat>(lp.m, lp.n, BigFloat(t.prec()));
  out.b.assign(lp.m, BigFloat(t.prec()));
  out.c.assign(lp.n, BigFloat(t.prec()));
  for (size_t i = 0; i < lp.m; ++i) {
    for (size_t j = 0; j < lp.n; ++j)
      if (!lp.A(i, j).is_zero()) out.A(i, j) = lp.A(i, j).evaluate(t);
    if (!lp.b[i].is_zero()) out.b[i] = lp.b[i].evaluate(t);
  }
  for (size_t j = 0; j < lp.n; ++j)
    if (!lp.c[j].is_zero()) out.c[j] = lp.c[j].evaluate(t);
  return out;
}

// Known optimal data: the optimal value is 0, attained as x -> 0 with
// w = b, and (s*, y*) = (1, 0, ..., 0) is dual optimal.
struct OptimalData {
  Rat value;       // nu = 0
  RatVec s_star;   // dim n
  RatVec y_star;   // dim m
  TropPoint x_star_trop, w_star_trop, s_star_trop, y_star_trop;
};

inline OptimalData optimal_data(const LWSpec& spec) {
  const SlackLP lp = build_lw(spec);
  OptimalData o;
  o.value = 0;
  o.s_star.assign(lp.n, Rat(0));
  o.s_star[0] = 1;
  o.y_star.assign(lp.m, Rat(0));
  o.x_star_trop.assign(lp.n, TropRat::neg_inf());
  o.s_star_trop.assign(lp.n, TropRat::neg_inf());
  o.s_star_trop[0] = TropRat(Rat(0));
  o.y_star_trop.assign(lp.m, TropRat::neg_inf());
  o.w_star_trop.assign(lp.m, TropRat::neg_inf());
  o.w_star_trop[0] = TropRat(Rat(2));  // w_1 = t^2
  o.w_star_trop[1] = TropRat(Rat(1));  // w_2 = t
  return o;
}

// Certified analytic bound for the LW family: all exponents of the bordered
// matrix lie in 2^{-(r-1)} Z, so permutation-sum gaps do too.
inline Rat eta0_lw_bound(int r) {
  require(r >= 1, "eta0_lw_bound: r must be >= 1");
  return pow2(-(r - 1));
}

// Default working precision: iterates span magnitudes up to t^{r+2} and
// complementarity products must resolve far below mu.
inline mpfr_prec_t default_precision_bits(int r, const BigFloat& t) {
  const double log2_t = std::log2(std::max(t.to_double(), 2.0));
  const double need = (r + 4) * log2_t + 128;
  return std::max<mpfr_prec_t>(256, static_cast<mpfr_prec_t>(need) + 1);
}

}  // namespace lw
