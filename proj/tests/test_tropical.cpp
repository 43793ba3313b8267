#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "lw/tropical.hpp"

using namespace lw;

namespace {

TropRat fin(long num, long den = 1) { return TropRat(make_rat(num, den)); }
TropRat bot() { return TropRat::neg_inf(); }

TropPoint pt(std::initializer_list<long> xs) {
  TropPoint p;
  for (long x : xs) p.emplace_back(Rat(x));
  return p;
}

struct RatGen {
  std::mt19937_64 rng{0xC0FFEEULL};
  Rat rat(long lo = -20, long hi = 20) {
    std::uniform_int_distribution<long> num(lo, hi);
    std::uniform_int_distribution<long> den_pow(0, 3);
    return make_rat(num(rng), 1L << den_pow(rng));
  }
  TropRat scalar(bool allow_bot = true) {
    std::uniform_int_distribution<int> coin(0, 9);
    if (allow_bot && coin(rng) == 0) return TropRat::neg_inf();
    return TropRat(rat());
  }
  TropPoint point(size_t d) {
    TropPoint p;
    for (size_t k = 0; k < d; ++k) p.emplace_back(rat());
    return p;
  }
};

std::vector<bool> moving_support(const TropPoint& a, const TropPoint& b) {
  std::vector<bool> s(a.size(), false);
  for (size_t k = 0; k < a.size(); ++k)
    s[k] = a[k].finite && b[k].finite && a[k].v != b[k].v;
  return s;
}

bool strict_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  bool proper = false;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k] && !b[k]) return false;
    if (!a[k] && b[k]) proper = true;
  }
  return proper;
}

}  // namespace

TEST_CASE("max-plus scalar operations", "[tropical]") {
  CHECK(trop_add(fin(3), fin(5)) == fin(5));
  CHECK(trop_mul(fin(3), fin(5)) == fin(8));
  CHECK(trop_add(bot(), fin(2)) == fin(2));
  CHECK(trop_mul(bot(), fin(2)) == bot());
  CHECK(trop_mul(fin(7), trop_inv(fin(7))) == fin(0));
  CHECK_THROWS_AS(trop_inv(bot()), ConfigError);
}

TEST_CASE("semifield laws on random triples", "[tropical]") {
  RatGen g;
  for (int it = 0; it < 500; ++it) {
    const TropRat a = g.scalar(), b = g.scalar(), c = g.scalar();
    CHECK(trop_add(a, b) == trop_add(b, a));
    CHECK(trop_add(a, a) == a);
    CHECK(trop_add(trop_add(a, b), c) == trop_add(a, trop_add(b, c)));
    CHECK(trop_mul(a, b) == trop_mul(b, a));
    CHECK(trop_mul(trop_mul(a, b), c) == trop_mul(a, trop_mul(b, c)));
    CHECK(trop_mul(a, trop_add(b, c)) == trop_add(trop_mul(a, b), trop_mul(a, c)));
  }
}

TEST_CASE("tropical segment of comparable endpoints", "[tropical]") {
  const auto path = trop_segment(pt({0, 0}), pt({3, 2}));
  REQUIRE(path.breakpoints.size() == 3);
  CHECK(path.breakpoints[0] == pt({0, 0}));
  CHECK(path.breakpoints[1] == pt({1, 0}));
  CHECK(path.breakpoints[2] == pt({3, 2}));
  CHECK(moving_support(path.breakpoints[0], path.breakpoints[1]) ==
        std::vector<bool>{true, false});
  CHECK(moving_support(path.breakpoints[1], path.breakpoints[2]) ==
        std::vector<bool>{true, true});
}

TEST_CASE("degenerate and incomparable segments", "[tropical]") {
  const auto single = trop_segment(pt({1, 2}), pt({1, 2}));
  CHECK(single.breakpoints.size() == 1);
  CHECK(single.pieces() == 0);

  // Incomparable endpoints trace an L through the componentwise max.
  const auto ell = trop_segment(pt({1, 3}), pt({4, 1}));
  REQUIRE(ell.breakpoints.size() == 3);
  CHECK(ell.breakpoints[0] == pt({1, 3}));
  CHECK(ell.breakpoints[1] == pt({4, 3}));
  CHECK(ell.breakpoints[2] == pt({4, 1}));
}

TEST_CASE("segments of comparable endpoints have nested directions", "[tropical]") {
  RatGen g;
  for (int it = 0; it < 300; ++it) {
    const size_t d = 1 + it % 8;
    TropPoint u = g.point(d), v = u;
    for (size_t k = 0; k < d; ++k) {
      Rat inc = g.rat(0, 6);
      v[k] = TropRat(v[k].v + inc);
    }
    const auto path = trop_segment(u, v);
    REQUIRE(path.breakpoints.size() >= 1);
    CHECK(path.pieces() <= d);
    CHECK(path.breakpoints.front() == u);
    CHECK(path.breakpoints.back() == v);
    for (size_t i = 0; i + 1 < path.pieces(); ++i) {
      const auto ki = moving_support(path.breakpoints[i], path.breakpoints[i + 1]);
      const auto kj = moving_support(path.breakpoints[i + 1], path.breakpoints[i + 2]);
      CHECK(strict_subset(ki, kj));
    }
    for (const auto& bp : path.breakpoints) {
      CHECK(trop_leq(u, bp));
      CHECK(trop_leq(bp, v));
    }
  }
}

TEST_CASE("segment endpoints and box membership in general", "[tropical]") {
  RatGen g;
  for (int it = 0; it < 300; ++it) {
    const size_t d = 2 + it % 6;
    const TropPoint u = g.point(d), v = g.point(d);
    const auto path = trop_segment(u, v);
    CHECK(path.breakpoints.front() == u);
    CHECK(path.breakpoints.back() == v);
    const auto top = join(u, v);
    for (const auto& bp : path.breakpoints) {
      CHECK(trop_leq(bp, top));
      for (size_t k = 0; k < d; ++k)
        CHECK(std::min(u[k].v, v[k].v) <= bp[k].v);
    }
  }
}

TEST_CASE("funk, hilbert, and d_inf metrics", "[tropical]") {
  const TropPoint x = pt({0, 0}), y = pt({1, -1});
  CHECK(funk_distance(x, y) == ExtReal<Rat>::of(Rat(1)));
  CHECK(funk_distance(x, x) == ExtReal<Rat>::of(Rat(0)));
  CHECK(hilbert_distance(x, y) == ExtReal<Rat>::of(Rat(2)));
  CHECK(dinf_distance(x, y) == ExtReal<Rat>::of(Rat(1)));

  TropPoint part = {fin(0), bot()};
  TropPoint full = pt({0, 0});
  CHECK(funk_distance(part, full).infinite);
  CHECK(!funk_distance(full, part).infinite);
  CHECK(hilbert_distance(part, full).infinite);
  CHECK(dinf_distance(part, full).infinite);
}

TEST_CASE("metric symmetry and triangle inequality", "[tropical]") {
  RatGen g;
  for (int it = 0; it < 300; ++it) {
    const size_t d = 1 + it % 6;
    const TropPoint a = g.point(d), b = g.point(d), c = g.point(d);
    CHECK(hilbert_distance(a, b) == hilbert_distance(b, a));
    const auto ab = dinf_distance(a, b), bc = dinf_distance(b, c), ac = dinf_distance(a, c);
    CHECK(ac <= ab + bc);
  }
}

TEST_CASE("directed Hausdorff against a polygonal target", "[tropical]") {
  const auto target = trop_segment(pt({0, 0}), pt({3, 2}));
  CHECK(directed_hausdorff(target.breakpoints, target, TropMetric::dInf) ==
        ExtReal<Rat>::of(Rat(0)));
  CHECK(directed_hausdorff(target.breakpoints, target, TropMetric::dH) ==
        ExtReal<Rat>::of(Rat(0)));

  std::vector<TropPoint> shifted;
  const Rat eps(1, 8);
  for (const auto& bp : target.breakpoints) shifted.push_back(trop_scale(eps, bp));
  CHECK(directed_hausdorff(shifted, target, TropMetric::dInf) == ExtReal<Rat>::of(eps));

  // Off-path point whose nearest point is interior to a piece: the minimum of
  // max(|2mu-1|, 2mu) over the second piece sits at mu = 1/4, value 1/2.
  std::vector<TropPoint> probe{pt({2, 0})};
  const auto dist = directed_hausdorff(probe, target, TropMetric::dInf);
  REQUIRE(!dist.infinite);
  CHECK(dist.v == Rat(1, 2));
}

TEST_CASE("log_t image of a classical segment hugs the tropical segment", "[tropical]") {
  // Lift u, v to x(t)_k = t^{u_k}, y(t)_k = t^{v_k}; the log_t image of the
  // ordinary segment [x, y] stays within log_t 2 of the tropical segment.
  const double t = 100.0;
  const std::vector<double> u{0.0, 1.0, -0.5}, v{2.0, 0.5, 1.0};
  TropPointD ut = trop_point(u), vt = trop_point(v);
  const auto tseg = trop_segment(ut, vt);

  std::vector<TropPointD> samples;
  for (int i = 0; i <= 64; ++i) {
    const double beta = i / 64.0;
    TropPointD p;
    for (size_t k = 0; k < u.size(); ++k) {
      const double val = (1 - beta) * std::pow(t, u[k]) + beta * std::pow(t, v[k]);
      p.emplace_back(std::log(val) / std::log(t));
    }
    samples.push_back(std::move(p));
  }
  const auto dist = directed_hausdorff(samples, tseg, TropMetric::dInf);
  REQUIRE(!dist.infinite);
  CHECK(dist.v <= std::log(2.0) / std::log(t) + 1e-12);
}

TEST_CASE("pointwise barycenter is the least upper bound", "[tropical]") {
  std::vector<TropPoint> pts{pt({0, 1}), pt({1, 0})};
  CHECK(pointwise_barycenter(pts) == pt({1, 1}));
  CHECK(pointwise_barycenter(std::vector<TropPoint>{pt({2, 3})}) == pt({2, 3}));

  RatGen g;
  for (int it = 0; it < 100; ++it) {
    const size_t d = 1 + it % 5;
    std::vector<TropPoint> sample;
    for (int i = 0; i < 6; ++i) sample.push_back(g.point(d));
    const auto bary = pointwise_barycenter(sample);
    for (const auto& s : sample) CHECK(trop_leq(s, bary));
    for (size_t k = 0; k < d; ++k) {
      bool attained = false;
      for (const auto& s : sample) attained = attained || s[k] == bary[k];
      CHECK(attained);
    }
  }
}
