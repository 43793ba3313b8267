#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "lw/bigfloat.hpp"
#include "lw/errors.hpp"
#include "lw/linalg.hpp"
#include "lw/rational.hpp"
#include "lw/tropical.hpp"

namespace lw {

struct PuiseuxTerm {
  Rat coef;  // nonzero
  Rat exp;

  friend bool operator==(const PuiseuxTerm& a, const PuiseuxTerm& b) {
    return a.coef == b.coef && a.exp == b.exp;
  }
};

// Finite sum of terms q * t^alpha with exact rational q and alpha, kept in
// strictly decreasing exponent order. Ordered by eventual dominance as t grows.
class PuiseuxSeries {
 public:
  PuiseuxSeries() = default;
  explicit PuiseuxSeries(std::vector<PuiseuxTerm> terms) : terms_(std::move(terms)) {
    normalize();
  }

  static PuiseuxSeries zero() { return PuiseuxSeries(); }
  static PuiseuxSeries constant(const Rat& q) { return monomial(q, Rat(0)); }
  static PuiseuxSeries monomial(const Rat& coef, const Rat& exp) {
    PuiseuxSeries s;
    if (coef != 0) s.terms_.push_back({coef, exp});
    return s;
  }
  static PuiseuxSeries t() { return monomial(Rat(1), Rat(1)); }

  const std::vector<PuiseuxTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() <= 1; }

  // Leading coefficient; 0 for the zero series.
  Rat lc() const { return terms_.empty() ? Rat(0) : terms_.front().coef; }
  int sign() const { return terms_.empty() ? 0 : sgn(terms_.front().coef); }
  bool is_positive() const { return sign() > 0; }

  // Valuation: the leading exponent, -inf for zero.
  TropRat val() const {
    return terms_.empty() ? TropRat::neg_inf() : TropRat(terms_.front().exp);
  }

  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    std::vector<PuiseuxTerm> merged = a.terms_;
    merged.insert(merged.end(), b.terms_.begin(), b.terms_.end());
    return PuiseuxSeries(std::move(merged));
  }
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a + (-b);
  }
  PuiseuxSeries operator-() const {
    PuiseuxSeries r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    std::vector<PuiseuxTerm> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_)
        prod.push_back({Rat(ta.coef * tb.coef), Rat(ta.exp + tb.exp)});
    return PuiseuxSeries(std::move(prod));
  }
  PuiseuxSeries scaled(const Rat& q) const {
    if (q == 0) return zero();
    PuiseuxSeries r = *this;
    for (auto& t : r.terms_) t.coef *= q;
    return r;
  }

  // Order by sign of the difference: f < g iff f(t) < g(t) for large t.
  friend int series_cmp(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return (a - b).sign();
  }
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const PuiseuxSeries& a, const PuiseuxSeries& b) { return !(a == b); }
  friend bool operator<(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return series_cmp(a, b) < 0;
  }
  friend bool operator<=(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return series_cmp(a, b) <= 0;
  }

  // Sum of q_i * t^{alpha_i}; relative error <= 2^{1-prec} per term.
  BigFloat evaluate(const BigFloat& t) const {
    if (t.sgn() <= 0) throw ConfigError("PuiseuxSeries::evaluate needs t > 0");
    BigFloat acc(t.prec());
    for (const auto& term : terms_)
      acc += BigFloat::from_rat(term.coef, t.prec()) * pow_rat(t, term.exp);
    return acc;
  }

 private:
  static int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const PuiseuxTerm& x, const PuiseuxTerm& y) { return y.exp < x.exp; });
    std::vector<PuiseuxTerm> out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().coef += t.coef;
        if (out.back().coef == 0) out.pop_back();
      } else if (t.coef != 0) {
        out.push_back(std::move(t));
      }
    }
    terms_ = std::move(out);
  }

  std::vector<PuiseuxTerm> terms_;
};

inline TropRat val(const PuiseuxSeries& f) { return f.val(); }

using SeriesMatrix = Matrix<PuiseuxSeries>;
using SeriesVec = std::vector<PuiseuxSeries>;

// At most one term per entry: the "monomial matrix" shape required by the
// exponent-gap estimates below.
inline bool is_monomial_matrix(const SeriesMatrix& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_monomial()) return false;
  return true;
}

// Entries of the exact form +-t^alpha (or zero). The determinant bracket
// below needs unit coefficients: its d! budget counts permutations, so any
// coefficient of magnitude > 1 would break the upper bound.
inline bool is_unit_monomial_matrix(const SeriesMatrix& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      const auto& e = m(i, j);
      if (e.is_zero()) continue;
      if (!e.is_monomial() || abs(e.lc()) != 1) return false;
    }
  return true;
}

inline PuiseuxSeries det(const SeriesMatrix& m) {
  return det_laplace(m, PuiseuxSeries::constant(Rat(1)));
}

namespace detail {

// All achievable permutation sums sum_i val(M[i][sigma(i)]) over permutations
// avoiding zero entries, collected exactly via subset DP.
inline std::set<Rat> permutation_sums(const SeriesMatrix& m, size_t work_limit) {
  const size_t d = m.rows();
  std::vector<std::set<Rat>> dp(size_t{1} << d);
  dp[0].insert(Rat(0));
  size_t work = 0;
  for (size_t mask = 1; mask < dp.size(); ++mask) {
    const size_t k = static_cast<size_t>(__builtin_popcountll(mask)) - 1;
    for (size_t j = 0; j < d; ++j) {
      if (!(mask >> j & 1)) continue;
      const auto& entry = m(k, j);
      if (entry.is_zero()) continue;
      const Rat alpha = entry.val().v;
      for (const Rat& s : dp[mask ^ (size_t{1} << j)]) {
        dp[mask].insert(Rat(s + alpha));
        if (++work > work_limit)
          throw ConfigError("eta: enumeration work limit exceeded");
      }
    }
  }
  return dp.back();
}

}  // namespace detail

// Minimal positive gap between permutation-sum exponents; +inf when fewer
// than two sums are achievable (min over the empty set).
inline ExtReal<Rat> eta(const SeriesMatrix& m, size_t dim_limit = 12) {
  require(m.rows() == m.cols(), "eta: matrix not square");
  require(m.rows() <= dim_limit, "eta: dimension over enumeration limit");
  require(is_monomial_matrix(m), "eta: entries must be monomials");
  const auto sums = detail::permutation_sums(m, size_t{1} << 22);
  if (sums.size() < 2) return ExtReal<Rat>::inf();
  ExtReal<Rat> best = ExtReal<Rat>::inf();
  for (auto it = std::next(sums.begin()); it != sums.end(); ++it) {
    const Rat gap = *it - *std::prev(it);
    if (ExtReal<Rat>::of(gap) < best) best = ExtReal<Rat>::of(gap);
  }
  return best;
}

struct DetLogBounds {
  TropRat val_det;          // valuation of the exact symbolic determinant
  double lower = 0;         // val - log_t d!  (guaranteed only when flagged)
  double upper = 0;         // val + log_t d!
  bool lower_guaranteed = false;  // t >= (d!)^{1/eta(M)}
};

// Bracket for log_t |det M(t)| from the valuation of the symbolic determinant.
inline DetLogBounds det_log_bounds(const SeriesMatrix& m, double t) {
  require(t > 1.0, "det_log_bounds: requires t > 1");
  require(is_unit_monomial_matrix(m),
          "det_log_bounds: entries must be unit monomials +-t^alpha");
  const size_t d = m.rows();
  DetLogBounds out;
  out.val_det = det(m).val();
  double log_fact = 0;
  for (size_t i = 2; i <= d; ++i) log_fact += std::log(static_cast<double>(i));
  const double log_t_fact = log_fact / std::log(t);
  if (out.val_det.finite) {
    const double v = out.val_det.v.get_d();
    out.lower = v - log_t_fact;
    out.upper = v + log_t_fact;
  }
  const auto gap = eta(m);
  // Threshold: log t >= log(d!) / eta.
  out.lower_guaranteed =
      gap.infinite || std::log(t) * gap.v.get_d() >= log_fact;
  return out;
}

// Bordered matrix [[A b 0],[e^T 0 1]] whose order-d submatrices control the
// polyhedron metric estimate; d = number of columns of A.
inline SeriesMatrix bordered_matrix(const SeriesMatrix& a, const SeriesVec& b) {
  require(b.size() == a.rows(), "bordered_matrix: b length mismatch");
  SeriesMatrix m(a.rows() + 1, a.cols() + 2);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    m(i, a.cols()) = b[i];
  }
  for (size_t j = 0; j < a.cols(); ++j)
    m(a.rows(), j) = PuiseuxSeries::constant(Rat(1));
  m(a.rows(), a.cols() + 1) = PuiseuxSeries::constant(Rat(1));
  return m;
}

namespace detail {

template <class F>
void for_each_subset(size_t n, size_t k, F&& fn) {
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

inline size_t binomial(size_t n, size_t k) {
  if (k > n) return 0;
  size_t r = 1;
  for (size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// Minimal eta over all order-d square submatrices of the bordered matrix,
// where d = cols(A). +inf means "no constraint" (the induced threshold on t
// is trivial). Enumeration only; LW instances use their analytic bound.
inline ExtReal<Rat> eta0(const SeriesMatrix& a, const SeriesVec& b,
                         size_t combination_limit = 20000) {
  const SeriesMatrix m = bordered_matrix(a, b);
  const size_t d = a.cols();
  require(d >= 1 && d <= m.rows(), "eta0: no order-d submatrix exists");
  const size_t combos = detail::binomial(m.rows(), d) * detail::binomial(m.cols(), d);
  require(combos <= combination_limit, "eta0: enumeration limit; use the analytic bound");

  ExtReal<Rat> best = ExtReal<Rat>::inf();
  detail::for_each_subset(m.rows(), d, [&](const std::vector<size_t>& ri) {
    detail::for_each_subset(m.cols(), d, [&](const std::vector<size_t>& ci) {
      const auto g = eta(m.submatrix(ri, ci));
      if (g < best) best = g;
    });
  });
  return best;
}

}  // namespace lw
