#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lw/errors.hpp"
#include "lw/rational.hpp"

namespace lw {

// Scalar of the max-plus semifield T = R u {-inf}: oplus = max, odot = +.
// -inf is a tag, never a sentinel numeric value, so support questions stay
// exactly decidable.
template <class Num>
struct TropScalarT {
  bool finite{false};
  Num v{};

  TropScalarT() = default;
  explicit TropScalarT(Num x) : finite(true), v(std::move(x)) {}

  static TropScalarT neg_inf() { return TropScalarT(); }

  friend bool operator==(const TropScalarT& a, const TropScalarT& b) {
    if (a.finite != b.finite) return false;
    return !a.finite || a.v == b.v;
  }
  friend bool operator!=(const TropScalarT& a, const TropScalarT& b) { return !(a == b); }
  // -inf is below every finite value.
  friend bool operator<(const TropScalarT& a, const TropScalarT& b) {
    if (!a.finite) return b.finite;
    if (!b.finite) return false;
    return a.v < b.v;
  }
  friend bool operator<=(const TropScalarT& a, const TropScalarT& b) { return a < b || a == b; }
};

using TropRat = TropScalarT<Rat>;
using TropD = TropScalarT<double>;

template <class Num>
TropScalarT<Num> trop_add(const TropScalarT<Num>& a, const TropScalarT<Num>& b) {
  return a < b ? b : a;  // oplus = max; -inf is neutral
}

template <class Num>
TropScalarT<Num> trop_mul(const TropScalarT<Num>& a, const TropScalarT<Num>& b) {
  if (!a.finite || !b.finite) return TropScalarT<Num>::neg_inf();  // absorbing
  return TropScalarT<Num>(a.v + b.v);
}

// Tropical multiplicative inverse -x; defined for finite scalars only.
template <class Num>
TropScalarT<Num> trop_inv(const TropScalarT<Num>& a) {
  if (!a.finite) throw ConfigError("tropical inverse of -inf is undefined");
  return TropScalarT<Num>(-a.v);
}

template <class Num>
using TropPointT = std::vector<TropScalarT<Num>>;

using TropPoint = TropPointT<Rat>;
using TropPointD = TropPointT<double>;

template <class Num>
TropPointT<Num> trop_point(const std::vector<Num>& coords) {
  TropPointT<Num> p;
  p.reserve(coords.size());
  for (const auto& c : coords) p.emplace_back(c);
  return p;
}

template <class Num>
std::vector<bool> support(const TropPointT<Num>& p) {
  std::vector<bool> s(p.size());
  for (size_t k = 0; k < p.size(); ++k) s[k] = p[k].finite;
  return s;
}

// Componentwise max of two points.
template <class Num>
TropPointT<Num> join(const TropPointT<Num>& a, const TropPointT<Num>& b) {
  require(a.size() == b.size(), "tropical point dimension mismatch");
  TropPointT<Num> r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = trop_add(a[k], b[k]);
  return r;
}

template <class Num>
bool trop_leq(const TropPointT<Num>& a, const TropPointT<Num>& b) {
  require(a.size() == b.size(), "tropical point dimension mismatch");
  for (size_t k = 0; k < a.size(); ++k)
    if (!(a[k] <= b[k])) return false;
  return true;
}

// lambda odot p: add a finite constant to every coordinate.
template <class Num>
TropPointT<Num> trop_scale(const Num& lambda, const TropPointT<Num>& p) {
  TropPointT<Num> r(p.size());
  for (size_t k = 0; k < p.size(); ++k)
    r[k] = trop_mul(TropScalarT<Num>(lambda), p[k]);
  return r;
}

// Value in [0, +inf]; used for the one-sided and symmetrized metrics.
template <class Num>
struct ExtReal {
  bool infinite{false};
  Num v{};

  static ExtReal inf() { return ExtReal{true, Num{}}; }
  static ExtReal of(Num x) { return ExtReal{false, std::move(x)}; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.v == b.v;
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.v < b.v;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.infinite || b.infinite) return inf();
    return of(a.v + b.v);
  }
  double to_double() const {
    if (infinite) return std::numeric_limits<double>::infinity();
    if constexpr (std::is_same_v<Num, Rat>) return v.get_d();
    else return static_cast<double>(v);
  }
};

// One-sided Funk gap: max(0, max_k (y_k - x_k)); +inf iff supp(x) does not
// contain supp(y).
template <class Num>
ExtReal<Num> funk_distance(const TropPointT<Num>& x, const TropPointT<Num>& y) {
  require(x.size() == y.size(), "funk_distance: dimension mismatch");
  Num best{};
  for (size_t k = 0; k < x.size(); ++k) {
    if (!y[k].finite) continue;
    if (!x[k].finite) return ExtReal<Num>::inf();
    best = std::max<Num>(best, y[k].v - x[k].v);
  }
  return ExtReal<Num>::of(best);
}

template <class Num>
ExtReal<Num> hilbert_distance(const TropPointT<Num>& x, const TropPointT<Num>& y) {
  return funk_distance(x, y) + funk_distance(y, x);
}

template <class Num>
ExtReal<Num> dinf_distance(const TropPointT<Num>& x, const TropPointT<Num>& y) {
  auto a = funk_distance(x, y), b = funk_distance(y, x);
  return b < a ? a : b;
}

// Polygonal curve: ordered breakpoints, consecutive ones distinct.
template <class Num>
struct PolygonalPathT {
  std::vector<TropPointT<Num>> breakpoints;

  size_t pieces() const { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }
};

using PolygonalPath = PolygonalPathT<Rat>;
using PolygonalPathD = PolygonalPathT<double>;

namespace detail {

// Monotone half of a tropical segment: the curve mu |-> a oplus (mu odot w)
// for a <= w, swept from a (mu = -inf) to w (mu = 0). Coordinate k starts
// moving at mu = a_k - w_k, so piece direction supports grow along the sweep.
template <class Num>
std::vector<TropPointT<Num>> ascending_segment(const TropPointT<Num>& a,
                                               const TropPointT<Num>& w) {
  std::vector<Num> thresholds;
  for (size_t k = 0; k < a.size(); ++k) {
    if (!w[k].finite) continue;  // pinned at -inf on both ends
    require(a[k].finite, "tropical segment endpoints must have equal support");
    if (a[k].v < w[k].v) thresholds.push_back(a[k].v - w[k].v);
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(Num{});  // mu = 0 lands on w

  std::vector<TropPointT<Num>> out;
  for (const Num& mu : thresholds) {
    TropPointT<Num> p(a.size());
    for (size_t k = 0; k < a.size(); ++k)
      p[k] = trop_add(a[k], trop_mul(TropScalarT<Num>(mu), w[k]));
    if (out.empty() || !(out.back() == p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

// The tropical segment {lambda odot u  oplus  mu odot v : max(lambda,mu) = 0},
// realized as a polygonal curve. It ascends from u to u v v (componentwise
// max), then descends to v; for comparable endpoints one of the halves is
// trivial and the piece directions form a strictly nested chain.
template <class Num>
PolygonalPathT<Num> trop_segment(const TropPointT<Num>& u, const TropPointT<Num>& v) {
  require(u.size() == v.size(), "trop_segment: dimension mismatch");
  const TropPointT<Num> top = join(u, v);
  auto up = detail::ascending_segment(u, top);
  auto down = detail::ascending_segment(v, top);

  PolygonalPathT<Num> path;
  path.breakpoints = std::move(up);
  for (size_t i = down.size() - 1; i-- > 0;) {
    if (!(path.breakpoints.back() == down[i]))
      path.breakpoints.push_back(down[i]);
  }
  return path;
}

enum class TropMetric { dH, dInf };

namespace detail {

// Exact minimum of mu |-> metric(a + mu(b-a), p) over mu in [0,1]. The
// distance is a convex piecewise-linear function of mu whose kinks lie on
// zeros and pairwise (anti-)crossings of g_k(mu) = a_k + mu(b_k - a_k) - p_k,
// so evaluating at those candidates and the interval ends is exact.
template <class Num>
ExtReal<Num> point_to_piece(const TropPointT<Num>& p, const TropPointT<Num>& a,
                            const TropPointT<Num>& b, TropMetric metric) {
  const size_t d = p.size();
  std::vector<size_t> idx;
  for (size_t k = 0; k < d; ++k) {
    const bool in_piece = a[k].finite, in_point = p[k].finite;
    if (a[k].finite != b[k].finite) return ExtReal<Num>::inf();  // unrepresentable piece
    if (in_piece != in_point) return ExtReal<Num>::inf();
    if (in_piece) idx.push_back(k);
  }

  std::vector<Num> g0(idx.size()), slope(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    const size_t k = idx[i];
    g0[i] = a[k].v - p[k].v;
    slope[i] = b[k].v - a[k].v;
  }

  std::vector<Num> cand{Num{0}, Num{1}};
  auto push_cand = [&](const Num& num, const Num& den) {
    if (den == Num{0}) return;
    Num mu = num / den;
    if (Num{0} < mu && mu < Num{1}) cand.push_back(mu);
  };
  for (size_t i = 0; i < idx.size(); ++i) {
    push_cand(-g0[i], slope[i]);  // g_i = 0
    for (size_t j = i + 1; j < idx.size(); ++j) {
      push_cand(g0[j] - g0[i], slope[i] - slope[j]);   // g_i = g_j
      push_cand(-g0[j] - g0[i], slope[i] + slope[j]);  // g_i = -g_j
    }
  }

  bool have = false;
  Num best{};
  for (const Num& mu : cand) {
    Num pos{}, negv{};
    for (size_t i = 0; i < idx.size(); ++i) {
      const Num g = g0[i] + mu * slope[i];
      pos = std::max<Num>(pos, g);
      negv = std::max<Num>(negv, -g);
    }
    const Num val = metric == TropMetric::dH ? pos + negv : std::max<Num>(pos, negv);
    if (!have || val < best) {
      best = val;
      have = true;
    }
  }
  return ExtReal<Num>::of(best);
}

}  // namespace detail

// sup over sample points of inf over the target curve; the per-piece infimum
// is computed exactly (see point_to_piece).
template <class Num>
ExtReal<Num> directed_hausdorff(const std::vector<TropPointT<Num>>& sample,
                                const PolygonalPathT<Num>& target, TropMetric metric) {
  require(!sample.empty(), "directed_hausdorff: empty sample");
  require(!target.breakpoints.empty(), "directed_hausdorff: empty target");
  ExtReal<Num> sup = ExtReal<Num>::of(Num{});
  for (const auto& p : sample) {
    ExtReal<Num> inf = ExtReal<Num>::inf();
    if (target.pieces() == 0) {
      const auto& q = target.breakpoints.front();
      inf = metric == TropMetric::dH ? hilbert_distance(p, q) : dinf_distance(p, q);
    }
    for (size_t i = 0; i + 1 < target.breakpoints.size(); ++i) {
      auto piece = detail::point_to_piece(p, target.breakpoints[i],
                                          target.breakpoints[i + 1], metric);
      if (piece < inf) inf = piece;
    }
    if (sup < inf) sup = inf;
  }
  return sup;
}

// Coordinatewise maximum of a nonempty family: the tropical barycenter.
template <class Num>
TropPointT<Num> pointwise_barycenter(const std::vector<TropPointT<Num>>& points) {
  require(!points.empty(), "pointwise_barycenter: empty set");
  TropPointT<Num> r = points.front();
  for (size_t i = 1; i < points.size(); ++i) r = join(r, points[i]);
  return r;
}

}  // namespace lw
