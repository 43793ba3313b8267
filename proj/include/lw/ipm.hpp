#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lw/bigfloat.hpp"
#include "lw/errors.hpp"
#include "lw/instances.hpp"
#include "lw/linalg.hpp"
#include "lw/rational.hpp"
#include "lw/trop_path.hpp"

namespace lw {

// Strictly positive primal-dual iterate (x, w, s, y) for A x + w = b,
// s - A^T y = c, with the duality measure mu_bar = (<x,s> + <w,y>) / N
// cached at construction.
struct PDPoint {
  BFVec x, w, s, y;
  BigFloat mu_bar;

  size_t n() const { return x.size(); }
  size_t m() const { return w.size(); }
  size_t N() const { return x.size() + w.size(); }
};

inline BigFloat duality_measure_of(const BFVec& x, const BFVec& w,
                                   const BFVec& s, const BFVec& y) {
  BigFloat total = dot(x, s) + dot(w, y);
  return total / BigFloat::from_long(static_cast<long>(x.size() + w.size()),
                                     total.prec());
}

namespace detail {

inline BigFloat pow2_bf(long k) {
  BigFloat r(64);
  mpfr_set_ui_2exp(r.raw(), 1, k, MPFR_RNDN);
  return r;
}

inline bool all_positive(const BFVec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const BigFloat& a) { return a.sgn() > 0; });
}

// Non-throwing construction; nullopt when strict positivity fails.
inline std::optional<PDPoint> try_pd_point(BFVec x, BFVec w, BFVec s, BFVec y) {
  if (x.empty() || w.empty() || x.size() != s.size() || w.size() != y.size())
    return std::nullopt;
  if (!all_positive(x) || !all_positive(w) || !all_positive(s) ||
      !all_positive(y))
    return std::nullopt;
  BigFloat mu = duality_measure_of(x, w, s, y);
  return PDPoint{std::move(x), std::move(w), std::move(s), std::move(y),
                 std::move(mu)};
}

}  // namespace detail

inline PDPoint make_pd_point(BFVec x, BFVec w, BFVec s, BFVec y) {
  check(!x.empty() && !w.empty(), "PDPoint: empty dimension");
  check(x.size() == s.size() && w.size() == y.size(),
        "PDPoint: mismatched primal/dual dimensions");
  auto z = detail::try_pd_point(std::move(x), std::move(w), std::move(s),
                                std::move(y));
  check(z.has_value(), "PDPoint: coordinates must be strictly positive");
  return *std::move(z);
}

inline BigFloat duality_measure(const PDPoint& z) {
  return duality_measure_of(z.x, z.w, z.s, z.y);
}

// Closed membership test (xs; wy) >= (1 - theta) mu_bar e of the wide
// neighborhood.
inline bool in_wide_neighborhood(const PDPoint& z, double theta) {
  require(theta > 0.0 && theta < 1.0,
          "in_wide_neighborhood: need 0 < theta < 1");
  const mpfr_prec_t p = z.mu_bar.prec();
  const BigFloat floor_bound =
      (BigFloat::from_long(1, p) - BigFloat::from_double(theta, p)) * z.mu_bar;
  for (size_t j = 0; j < z.n(); ++j)
    if (z.x[j] * z.s[j] < floor_bound) return false;
  for (size_t i = 0; i < z.m(); ++i)
    if (z.w[i] * z.y[i] < floor_bound) return false;
  return true;
}

struct NewtonDirection {
  BFVec dx, dw, ds, dy;
};

// Solves the full augmented system
//   A dx + dw = 0
//   ds - A^T dy = 0
//   s dx + x ds = mu_goal e - x s
//   y dw + w dy = mu_goal e - w y
// by LU with partial pivoting in working precision, then verifies that both
// linear blocks and the cross term <dx,ds> + <dw,dy> vanish to relative
// 2^{16 - precision}.
inline NewtonDirection newton_direction(const PDPoint& z,
                                        const BigFloat& mu_goal,
                                        const RealLP& lp) {
  const size_t n = lp.n, m = lp.m;
  require(z.n() == n && z.m() == m,
          "newton_direction: point/instance dimension mismatch");
  const mpfr_prec_t p = lp.precision_bits;
  const size_t dim = 2 * (n + m);
  const size_t ox = 0, ow = n, os = n + m, oy = 2 * n + m;
  Matrix<BigFloat> lhs(dim, dim, BigFloat(p));
  BFVec rhs(dim, BigFloat(p));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) lhs(i, ox + j) = lp.A(i, j);
    lhs(i, ow + i) = BigFloat::from_long(1, p);
  }
  for (size_t j = 0; j < n; ++j) {
    lhs(m + j, os + j) = BigFloat::from_long(1, p);
    for (size_t i = 0; i < m; ++i) lhs(m + j, oy + i) = -lp.A(i, j);
  }
  for (size_t j = 0; j < n; ++j) {
    lhs(m + n + j, ox + j) = z.s[j];
    lhs(m + n + j, os + j) = z.x[j];
    rhs[m + n + j] = mu_goal - z.x[j] * z.s[j];
  }
  for (size_t i = 0; i < m; ++i) {
    lhs(m + 2 * n + i, ow + i) = z.y[i];
    lhs(m + 2 * n + i, oy + i) = z.w[i];
    rhs[m + 2 * n + i] = mu_goal - z.w[i] * z.y[i];
  }
  const LUFactors fac = lu_factor(lhs);
  BFVec sol = fac.solve(rhs);

  auto extract = [&](const BFVec& v) {
    NewtonDirection d;
    d.dx.assign(v.begin() + ox, v.begin() + ox + n);
    d.dw.assign(v.begin() + ow, v.begin() + ow + m);
    d.ds.assign(v.begin() + os, v.begin() + os + n);
    d.dy.assign(v.begin() + oy, v.begin() + oy + m);
    return d;
  };
  const BigFloat tol = detail::pow2_bf(16 - static_cast<long>(p));
  auto contract_holds = [&](const NewtonDirection& d) {
    BigFloat err(p), scale(p);
    for (size_t i = 0; i < m; ++i) {
      BigFloat res(p), row(p);
      for (size_t j = 0; j < n; ++j) {
        const BigFloat term = lp.A(i, j) * d.dx[j];
        res = res + term;
        row = row + abs(term);
      }
      res = res + d.dw[i];
      row = row + abs(d.dw[i]);
      err = max(err, abs(res));
      scale = max(scale, row);
    }
    for (size_t j = 0; j < n; ++j) {
      BigFloat res = d.ds[j], row = abs(d.ds[j]);
      for (size_t i = 0; i < m; ++i) {
        const BigFloat term = lp.A(i, j) * d.dy[i];
        res = res - term;
        row = row + abs(term);
      }
      err = max(err, abs(res));
      scale = max(scale, row);
    }
    BigFloat cross(p), cross_scale(p);
    for (size_t j = 0; j < n; ++j) {
      const BigFloat term = d.dx[j] * d.ds[j];
      cross = cross + term;
      cross_scale = cross_scale + abs(term);
    }
    for (size_t i = 0; i < m; ++i) {
      const BigFloat term = d.dw[i] * d.dy[i];
      cross = cross + term;
      cross_scale = cross_scale + abs(term);
    }
    return err <= tol * scale && abs(cross) <= tol * cross_scale;
  };

  // The raw solve loses bits to the instance's huge dynamic range; iterative
  // refinement with guard-bit residuals restores them while the original
  // factorization is recycled.
  NewtonDirection d = extract(sol);
  const mpfr_prec_t q = p + 64;
  for (int round = 0; round < 3 && !contract_holds(d); ++round) {
    BFVec residual(dim, BigFloat(q));
    for (size_t i = 0; i < dim; ++i) {
      BigFloat acc = rhs[i].at_prec(q);
      for (size_t j = 0; j < dim; ++j) {
        if (lhs(i, j).is_zero()) continue;
        acc = acc - lhs(i, j).at_prec(q) * sol[j];
      }
      residual[i] = acc;
    }
    const BFVec delta = fac.solve(std::move(residual));
    for (size_t j = 0; j < dim; ++j) sol[j] = sol[j] + delta[j];
    d = extract(sol);
  }
  if (!contract_holds(d))
    throw NumericError(
        "newton_direction: residual exceeds 2^(16-precision); raise "
        "precision_bits");
  return d;
}

namespace detail {

inline std::optional<PDPoint> advance(const PDPoint& z,
                                      const NewtonDirection& d,
                                      const BigFloat& alpha) {
  const size_t n = z.n(), m = z.m();
  BFVec x(n), w(m), s(n), y(m);
  for (size_t j = 0; j < n; ++j) x[j] = z.x[j] + alpha * d.dx[j];
  for (size_t i = 0; i < m; ++i) w[i] = z.w[i] + alpha * d.dw[i];
  for (size_t j = 0; j < n; ++j) s[j] = z.s[j] + alpha * d.ds[j];
  for (size_t i = 0; i < m; ++i) y[i] = z.y[i] + alpha * d.dy[i];
  return try_pd_point(std::move(x), std::move(w), std::move(s), std::move(y));
}

}  // namespace detail

struct Step {
  BigFloat alpha;
  PDPoint z;
};

// Largest alpha in (0, 1] keeping z + alpha dz inside the closed wide
// neighborhood, by bisection to relative tolerance rel_tol; ties resolve
// toward the smaller certified alpha. The returned point is strictly
// positive by construction.
inline Step step_to(const PDPoint& z, const NewtonDirection& dz, double theta,
                    double rel_tol = 1e-3) {
  require(rel_tol > 0.0 && rel_tol < 1.0, "step_to: bad bisection tolerance");
  check(in_wide_neighborhood(z, theta),
        "step_to: starting point is outside the wide neighborhood");
  const mpfr_prec_t p = z.mu_bar.prec();
  auto probe = [&](double a) -> std::optional<PDPoint> {
    auto cand = detail::advance(z, dz, BigFloat::from_double(a, p));
    if (cand && in_wide_neighborhood(*cand, theta)) return cand;
    return std::nullopt;
  };
  if (auto full = probe(1.0))
    return Step{BigFloat::from_long(1, p), *std::move(full)};
  double lo = 0.0, hi = 1.0;
  std::optional<PDPoint> best;
  while (hi - lo > rel_tol * hi) {
    if (lo == 0.0 && hi < 1e-12) break;  // no admissible step down to noise
    const double mid = 0.5 * (lo + hi);
    if (auto cand = probe(mid)) {
      lo = mid;
      best = std::move(cand);
    } else {
      hi = mid;
    }
  }
  check(best.has_value(), "step_to: no positive step keeps the neighborhood");
  return Step{BigFloat::from_double(lo, p), *std::move(best)};
}

namespace detail {

// Closing the equalities accumulates 32 guard bits so the only residual left
// in the stored slack is its final rounding, half an ulp at precision p.
inline std::pair<BFVec, BFVec> close_equalities(const RealLP& lp,
                                                const BFVec& x,
                                                const BFVec& y) {
  const mpfr_prec_t p = lp.precision_bits, q = p + 32;
  BFVec w(lp.m), s(lp.n);
  for (size_t i = 0; i < lp.m; ++i) {
    BigFloat acc = lp.b[i].at_prec(q);
    for (size_t j = 0; j < lp.n; ++j)
      acc = acc - lp.A(i, j).at_prec(q) * x[j];
    w[i] = acc.at_prec(p);
  }
  for (size_t j = 0; j < lp.n; ++j) {
    BigFloat acc = lp.c[j].at_prec(q);
    for (size_t i = 0; i < lp.m; ++i)
      acc = acc + lp.A(i, j).at_prec(q) * y[i];
    s[j] = acc.at_prec(p);
  }
  return {std::move(w), std::move(s)};
}

// Verifies 16 evenly spaced interior points of the accepted segment
// [z, z + alpha dz]: each must stay strictly positive and inside N_theta.
inline void check_segment(const PDPoint& z, const NewtonDirection& dz,
                          const BigFloat& alpha, double theta) {
  const mpfr_prec_t p = alpha.prec();
  for (int k = 1; k <= 16; ++k) {
    const BigFloat beta =
        alpha * BigFloat::from_long(k, p) / BigFloat::from_long(17, p);
    auto cand = advance(z, dz, beta);
    check(cand.has_value() && in_wide_neighborhood(*cand, theta),
          "accepted step leaves the wide neighborhood between its endpoints");
  }
}

}  // namespace detail

// Re-anchors the linear equalities: w := b - A x and s := c + A^T y. Newton
// steps preserve them to rounding; this pins the accumulated drift at the
// 2^{-precision} scale regardless of iteration count.
inline PDPoint reproject(const RealLP& lp, const PDPoint& z) {
  require(z.n() == lp.n && z.m() == lp.m,
          "reproject: point/instance dimension mismatch");
  auto [w, s] = detail::close_equalities(lp, z.x, z.y);
  auto out = detail::try_pd_point(z.x, std::move(w), std::move(s), z.y);
  check(out.has_value(),
        "reproject: strict feasibility lost at working precision");
  return *std::move(out);
}

enum class IPMVariant { LongStep, PredictorCorrector };

struct IPMConfig {
  IPMVariant variant = IPMVariant::PredictorCorrector;
  double theta = 0.5;          // outer wide-neighborhood radius
  double theta_inner = 0.25;   // recentering target after each predictor
  double sigma = 0.1;          // long-step centering weight
  double sigma_min = 0.01;
  double sigma_max = 0.9;
  BigFloat mu_target = BigFloat::from_long(1, 64);
  long max_iters = 500;
  double step_tol = 1e-3;      // relative bisection tolerance of step_to
  int max_correctors = 8;
  bool check_segments = false; // verify 16 interior points of every step
};

inline void validate(const IPMConfig& cfg) {
  require(cfg.theta > 0.0 && cfg.theta < 1.0, "IPMConfig: need 0 < theta < 1");
  if (cfg.variant == IPMVariant::PredictorCorrector)
    require(cfg.theta_inner > 0.0 && cfg.theta_inner < cfg.theta,
            "IPMConfig: need 0 < theta_inner < theta");
  require(cfg.sigma_min > 0.0 && cfg.sigma_min <= cfg.sigma_max &&
              cfg.sigma_max < 1.0,
          "IPMConfig: need 0 < sigma_min <= sigma_max < 1");
  require(cfg.sigma >= cfg.sigma_min && cfg.sigma <= cfg.sigma_max,
          "IPMConfig: sigma outside [sigma_min, sigma_max]");
  require(cfg.mu_target.sgn() > 0, "IPMConfig: mu_target must be positive");
  require(cfg.max_iters >= 1, "IPMConfig: max_iters must be >= 1");
  require(cfg.max_correctors >= 1, "IPMConfig: max_correctors must be >= 1");
}

struct StepRecord {
  std::string phase;  // "predictor" | "corrector" | "long-step"
  double alpha = 0.0;
  PDPoint z;          // state right after the phase
};

struct Trajectory {
  std::vector<PDPoint> iterates;  // z^0 .. z^p, one entry per full iteration
  std::vector<StepRecord> steps;  // per-phase detail in execution order
  size_t p() const { return iterates.size() - 1; }
};

// Runs the wide-neighborhood interior point iteration until
// mu_bar <= mu_target. Long-step: one Newton step toward sigma mu_bar per
// iteration. Predictor-corrector: a predictor toward mu = 0 capped to stay
// in N_theta, then correctors at constant mu_bar until back inside
// N_theta_inner.
inline Trajectory run_ipm(const RealLP& lp, const IPMConfig& cfg,
                          const PDPoint& z0) {
  validate(cfg);
  require(z0.n() == lp.n && z0.m() == lp.m,
          "run_ipm: point/instance dimension mismatch");
  check(in_wide_neighborhood(z0, cfg.theta),
        "run_ipm: z0 is outside the wide neighborhood");
  const mpfr_prec_t p = lp.precision_bits;
  const BigFloat zero(p);
  Trajectory traj;
  traj.iterates.push_back(z0);
  PDPoint z = z0;
  long iter = 0;
  while (z.mu_bar > cfg.mu_target) {
    if (iter >= cfg.max_iters)
      throw NumericError("run_ipm: max_iters exceeded before mu_target");
    ++iter;
    if (cfg.variant == IPMVariant::LongStep) {
      const BigFloat mu_goal = BigFloat::from_double(cfg.sigma, p) * z.mu_bar;
      const NewtonDirection dz = newton_direction(z, mu_goal, lp);
      Step st = step_to(z, dz, cfg.theta, cfg.step_tol);
      if (cfg.check_segments)
        detail::check_segment(z, dz, st.alpha, cfg.theta);
      z = reproject(lp, st.z);
      traj.steps.push_back({"long-step", st.alpha.to_double(), z});
    } else {
      const NewtonDirection dz = newton_direction(z, zero, lp);
      Step st = step_to(z, dz, cfg.theta, cfg.step_tol);
      if (cfg.check_segments)
        detail::check_segment(z, dz, st.alpha, cfg.theta);
      z = st.z;
      traj.steps.push_back({"predictor", st.alpha.to_double(), z});
      int correctors = 0;
      while (!in_wide_neighborhood(z, cfg.theta_inner)) {
        check(correctors < cfg.max_correctors,
              "run_ipm: correctors failed to reach the inner neighborhood");
        ++correctors;
        const NewtonDirection dc = newton_direction(z, z.mu_bar, lp);
        Step sc = step_to(z, dc, cfg.theta, cfg.step_tol);
        if (cfg.check_segments)
          detail::check_segment(z, dc, sc.alpha, cfg.theta);
        z = sc.z;
        traj.steps.push_back({"corrector", sc.alpha.to_double(), z});
      }
      z = reproject(lp, z);
    }
    check(in_wide_neighborhood(z, cfg.theta),
          "run_ipm: iterate left the wide neighborhood");
    check(z.mu_bar < traj.iterates.back().mu_bar,
          "run_ipm: duality measure failed to decrease");
    traj.iterates.push_back(z);
  }
  return traj;
}

// Strictly feasible seed near mu = t^lambda_start. Primal coordinates are
// the monomial lifts alpha_j t^{x^lambda} of the tropical central path with
// alpha_j = 2^{-(j+1)} on the pair (x_{2j+1}, x_{2j+2}); slacks close
// A x + w = b exactly. The dual side lifts y_i = beta_i t^{lambda - w^lambda_i}
// with beta_i = 4^{-(level_i + 1)} (level = block index of w_i), which keeps a
// positive leading coefficient in every column of s = c + A^T y, and s closes
// dual feasibility exactly.
inline PDPoint tropical_warm_start(const RealLP& lp, const Rat& lambda_start) {
  require(lp.r >= 1,
          "tropical_warm_start: instance was not built from an LW spec");
  require(lambda_start >= 0, "tropical_warm_start: lambda_start must be >= 0");
  const mpfr_prec_t p = lp.precision_bits;
  const TropCPPoint cp = trop_path_point(lp.r, lambda_start);
  BFVec x(lp.n), y(lp.m);
  for (size_t j = 0; j < lp.n; ++j) {
    const long pair = static_cast<long>(j) / 2;
    x[j] = BigFloat::from_rat(pow2(-(pair + 1)), p) * pow_rat(lp.t, cp.x[j]);
  }
  for (size_t i = 0; i < lp.m; ++i) {
    const long level = i < 2 ? 0 : static_cast<long>(i - 2) / 3 + 1;
    y[i] =
        BigFloat::from_rat(pow2(-2 * (level + 1)), p) * pow_rat(lp.t, cp.y[i]);
  }
  auto [w, s] = detail::close_equalities(lp, x, y);
  auto z = detail::try_pd_point(std::move(x), std::move(w), std::move(s),
                                std::move(y));
  if (!z)
    throw NumericError(
        "tropical_warm_start: lift is not strictly feasible; raise t");
  return *std::move(z);
}

inline PDPoint tropical_warm_start(const LWSpec& spec, const BigFloat& t,
                                   const Rat& lambda_start,
                                   mpfr_prec_t precision_bits) {
  const RealLP lp = evaluate_lp(
      build_lw(spec), t.at_prec(std::max(precision_bits, t.prec())));
  return tropical_warm_start(lp, lambda_start);
}

// Relative complementarity residual max_k |(xs; wy)_k - mu| / mu.
inline BigFloat complementarity_gap(const PDPoint& z, const BigFloat& mu) {
  BigFloat worst(mu.prec());
  for (size_t j = 0; j < z.n(); ++j)
    worst = max(worst, abs(z.x[j] * z.s[j] - mu));
  for (size_t i = 0; i < z.m(); ++i)
    worst = max(worst, abs(z.w[i] * z.y[i] - mu));
  return worst / mu;
}

// Componentwise-relative residual of A x + w = b, measured with 32 guard
// bits so the measurement error stays below the residual being reported.
inline BigFloat primal_residual(const RealLP& lp, const PDPoint& z) {
  const mpfr_prec_t q = lp.precision_bits + 32;
  BigFloat worst(lp.precision_bits);
  for (size_t i = 0; i < lp.m; ++i) {
    BigFloat res = -(lp.b[i].at_prec(q)), scale = abs(lp.b[i]);
    for (size_t j = 0; j < lp.n; ++j) {
      const BigFloat term = lp.A(i, j).at_prec(q) * z.x[j];
      res = res + term;
      scale = scale + abs(term);
    }
    res = res + z.w[i];
    scale = scale + z.w[i];
    worst = max(worst, abs(res) / scale);
  }
  return worst;
}

// Componentwise-relative residual of s - A^T y = c, same guard bits.
inline BigFloat dual_residual(const RealLP& lp, const PDPoint& z) {
  const mpfr_prec_t q = lp.precision_bits + 32;
  BigFloat worst(lp.precision_bits);
  for (size_t j = 0; j < lp.n; ++j) {
    BigFloat res = z.s[j].at_prec(q) - lp.c[j], scale = z.s[j] + abs(lp.c[j]);
    for (size_t i = 0; i < lp.m; ++i) {
      const BigFloat term = lp.A(i, j).at_prec(q) * z.y[i];
      res = res - term;
      scale = scale + abs(term);
    }
    worst = max(worst, abs(res) / scale);
  }
  return worst;
}

// Damped Newton iteration at fixed mu until the relative complementarity
// residual drops below tol. Feasibility is linear along the step, so the
// merit needs the complementarity block only.
inline PDPoint center_point(const RealLP& lp, PDPoint z, const BigFloat& mu,
                            const BigFloat& tol, int max_steps = 200) {
  require(mu.sgn() > 0, "center_point: mu must be positive");
  require(tol.sgn() > 0, "center_point: tol must be positive");
  const mpfr_prec_t p = lp.precision_bits;
  const BigFloat one = BigFloat::from_long(1, p);
  const BigFloat damping = BigFloat::from_double(0.995, p);
  const BigFloat half = BigFloat::from_double(0.5, p);
  const BigFloat tiny = detail::pow2_bf(-80);
  for (int step = 0; step < max_steps; ++step) {
    const BigFloat merit = complementarity_gap(z, mu);
    if (merit <= tol) return z;
    const NewtonDirection dz = newton_direction(z, mu, lp);
    BigFloat bound = one / damping;
    auto cap = [&bound](const BFVec& v, const BFVec& d) {
      for (size_t k = 0; k < v.size(); ++k)
        if (d[k].sgn() < 0) bound = min(bound, v[k] / -d[k]);
    };
    cap(z.x, dz.dx);
    cap(z.w, dz.dw);
    cap(z.s, dz.ds);
    cap(z.y, dz.dy);
    BigFloat alpha = min(one, damping * bound);
    for (;;) {
      auto cand = detail::advance(z, dz, alpha);
      if (cand && complementarity_gap(*cand, mu) < merit) {
        z = *std::move(cand);
        break;
      }
      alpha = alpha * half;
      if (alpha < tiny)
        throw NumericError("center_point: damped Newton step stalled");
    }
  }
  throw NumericError(
      "center_point: no convergence within the damped-step limit");
}

// Seed for duality-measure runs: warm start at lambda = 2 + 1/4, bumped in
// 1/4 steps until mu_bar >= 2 mu_floor, then centered into N_theta_inner.
// Centering at constant mu keeps mu_bar pinned, so the returned point still
// satisfies mu_bar >= mu_floor.
inline PDPoint centered_start(const RealLP& lp, const BigFloat& mu_floor,
                              double theta_inner) {
  require(mu_floor.sgn() > 0, "centered_start: mu_floor must be positive");
  require(theta_inner > 0.0 && theta_inner < 1.0,
          "centered_start: need 0 < theta_inner < 1");
  const mpfr_prec_t p = lp.precision_bits;
  Rat lambda = make_rat(9, 4);
  PDPoint z = tropical_warm_start(lp, lambda);
  const BigFloat two = BigFloat::from_long(2, p);
  int bumps = 0;
  while (z.mu_bar < two * mu_floor) {
    if (++bumps > 64)
      throw NumericError(
          "centered_start: could not reach the requested duality measure");
    lambda += make_rat(1, 4);
    z = tropical_warm_start(lp, lambda);
  }
  const BigFloat mu_c = z.mu_bar;
  z = center_point(lp, z, mu_c,
                   BigFloat::from_double(theta_inner * 0.5, p));
  z = reproject(lp, z);
  check(in_wide_neighborhood(z, theta_inner),
        "centered_start: centering missed the inner neighborhood");
  check(z.mu_bar >= mu_floor, "centered_start: duality measure slipped");
  return z;
}

// One accepted sample of the central-path tracer.
struct CPSample {
  Rat lambda;
  BigFloat mu;
  PDPoint z;
  BigFloat residual;         // complementarity_gap(z, mu)
  BigFloat primal_residual;  // componentwise-relative |A x + w - b|
  BigFloat dual_residual;    // componentwise-relative |s - A^T y - c|
};

inline BigFloat default_cp_tolerance(mpfr_prec_t precision_bits) {
  return BigFloat::from_rat(pow2(-static_cast<long>(precision_bits) / 4), 64);
}

// Follows the central path down a strictly decreasing lambda grid
// (mu = t^lambda). Each grid point is reached through substeps of at most
// 1/16 in lambda, each polished by damped Newton to the residual tolerance.
// The walk starts from the supplied (lambda, point) seed or, by default,
// from the tropical warm start slightly above the grid.
inline std::vector<CPSample> trace_central_path(
    const RealLP& lp, const std::vector<Rat>& lambda_grid, const BigFloat& tol,
    std::optional<std::pair<Rat, PDPoint>> start = std::nullopt) {
  require(!lambda_grid.empty(), "trace_central_path: empty lambda grid");
  for (size_t k = 1; k < lambda_grid.size(); ++k)
    require(lambda_grid[k] < lambda_grid[k - 1],
            "trace_central_path: grid must be strictly decreasing");
  require(tol.sgn() > 0, "trace_central_path: tol must be positive");
  const Rat substep = make_rat(1, 16);
  Rat lambda_cur;
  std::optional<PDPoint> cur;
  if (start) {
    require(start->first >= lambda_grid.front(),
            "trace_central_path: seed lies below the first grid point");
    lambda_cur = start->first;
    cur = start->second;
  } else {
    lambda_cur =
        Rat(lambda_grid.front() < 2 ? Rat(2) : lambda_grid.front()) +
        make_rat(1, 4);
    cur = tropical_warm_start(lp, lambda_cur);
  }
  PDPoint z = center_point(lp, *std::move(cur), pow_rat(lp.t, lambda_cur), tol);
  std::vector<CPSample> out;
  out.reserve(lambda_grid.size());
  for (const Rat& target : lambda_grid) {
    while (lambda_cur > target) {
      lambda_cur = (lambda_cur - substep > target) ? Rat(lambda_cur - substep)
                                                   : target;
      z = center_point(lp, z, pow_rat(lp.t, lambda_cur), tol);
    }
    z = reproject(lp, z);
    const BigFloat mu = pow_rat(lp.t, target);
    BigFloat res = complementarity_gap(z, mu);
    if (res > tol) {
      z = reproject(lp, center_point(lp, z, mu, tol));
      res = complementarity_gap(z, mu);
    }
    check(res <= tol,
          "trace_central_path: accepted sample violates the residual bound");
    out.push_back(
        CPSample{target, mu, z, res, primal_residual(lp, z),
                 dual_residual(lp, z)});
  }
  return out;
}

inline std::vector<CPSample> trace_central_path(
    const RealLP& lp, const std::vector<Rat>& lambda_grid) {
  return trace_central_path(lp, lambda_grid,
                            default_cp_tolerance(lp.precision_bits));
}

// Angles at the interior vertices of a polygonal curve: differences taken in
// working precision and rescaled by their sup norm, the final arccos in
// double with the ratio clamped to [-1, 1].
inline std::vector<double> polygonal_angles(const std::vector<BFVec>& pts) {
  require(pts.size() >= 3, "polygonal curvature needs at least 3 points");
  const size_t d = pts.front().size();
  for (const BFVec& q : pts)
    require(q.size() == d, "polygonal curvature: mixed dimensions");
  std::vector<BFVec> diffs;
  diffs.reserve(pts.size() - 1);
  for (size_t k = 1; k < pts.size(); ++k) {
    BFVec u(d);
    for (size_t i = 0; i < d; ++i) u[i] = pts[k][i] - pts[k - 1][i];
    const BigFloat norm = inf_norm(u);
    require(norm.sgn() > 0, "polygonal curvature: duplicate consecutive points");
    for (BigFloat& c : u) c = c / norm;
    diffs.push_back(std::move(u));
  }
  std::vector<double> angles;
  angles.reserve(diffs.size() - 1);
  for (size_t k = 1; k < diffs.size(); ++k) {
    const BigFloat num = dot(diffs[k - 1], diffs[k]);
    const BigFloat den =
        sqrt(dot(diffs[k - 1], diffs[k - 1]) * dot(diffs[k], diffs[k]));
    const double ratio = (num / den).to_double();
    angles.push_back(std::acos(std::clamp(ratio, -1.0, 1.0)));
  }
  return angles;
}

inline double polygonal_curvature(const std::vector<BFVec>& pts) {
  double total = 0.0;
  for (double a : polygonal_angles(pts)) total += a;
  return total;
}

inline std::vector<BFVec> lift_points(
    const std::vector<std::vector<double>>& pts) {
  std::vector<BFVec> lifted;
  lifted.reserve(pts.size());
  for (const auto& q : pts) {
    BFVec v;
    v.reserve(q.size());
    for (double c : q) v.push_back(BigFloat::from_double(c, 64));
    lifted.push_back(std::move(v));
  }
  return lifted;
}

inline std::vector<double> polygonal_angles(
    const std::vector<std::vector<double>>& pts) {
  return polygonal_angles(lift_points(pts));
}

inline double polygonal_curvature(const std::vector<std::vector<double>>& pts) {
  return polygonal_curvature(lift_points(pts));
}

// log_t of every coordinate, ordered (x, w, s, y) to match
// TropCPPoint::full_coords.
inline BFVec log_t_coords(const PDPoint& z, const BigFloat& t) {
  BFVec out;
  out.reserve(2 * z.N());
  for (const BFVec* blk : {&z.x, &z.w, &z.s, &z.y})
    for (const BigFloat& v : *blk) out.push_back(log_base(v, t));
  return out;
}

}  // namespace lw
