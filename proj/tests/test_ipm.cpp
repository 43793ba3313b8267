#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lw/ipm.hpp"

using namespace lw;

namespace {

BigFloat bf(long v, mpfr_prec_t p = 256) { return BigFloat::from_long(v, p); }

RealLP lw_real(int r, long t_long) {
  const BigFloat probe = BigFloat::from_long(t_long, 64);
  const mpfr_prec_t bits = default_precision_bits(r, probe);
  return evaluate_lp(build_lw({r}), BigFloat::from_long(t_long, bits));
}

// min x s.t. x + w = b, x, w >= 0: the central path solves x s = w y = mu
// with s = 1 + y in closed form.
RealLP one_var_lp(long b, mpfr_prec_t p) {
  RealLP lp;
  lp.r = 0;
  lp.n = 1;
  lp.m = 1;
  lp.N = 2;
  lp.A = Matrix<BigFloat>(1, 1, bf(1, p));
  lp.b = {bf(b, p)};
  lp.c = {bf(1, p)};
  lp.t = bf(10, p);
  lp.precision_bits = p;
  return lp;
}

BigFloat one_var_x(const RealLP& lp, const BigFloat& mu) {
  const BigFloat b = lp.b[0];
  const mpfr_prec_t p = lp.precision_bits;
  const BigFloat two = bf(2, p), four = bf(4, p);
  const BigFloat lin = b + two * mu;
  return (lin - sqrt(lin * lin - four * mu * b)) / two;
}

PDPoint one_var_central(const RealLP& lp, const BigFloat& mu) {
  const BigFloat x = one_var_x(lp, mu);
  const BigFloat w = lp.b[0] - x;
  const BigFloat s = mu / x;
  const BigFloat y = s - lp.c[0];
  return make_pd_point({x}, {w}, {s}, {y});
}

NewtonDirection zero_direction(const PDPoint& z) {
  const mpfr_prec_t p = z.mu_bar.prec();
  return NewtonDirection{BFVec(z.n(), BigFloat(p)), BFVec(z.m(), BigFloat(p)),
                         BFVec(z.n(), BigFloat(p)), BFVec(z.m(), BigFloat(p))};
}

BigFloat direction_inf_norm(const NewtonDirection& d) {
  return max(max(inf_norm(d.dx), inf_norm(d.dw)),
             max(inf_norm(d.ds), inf_norm(d.dy)));
}

// x = 1, w = 1, s = 1, y = 3: products (1, 3), mu_bar = 2, so the first
// product sits exactly on the theta = 1/2 boundary.
PDPoint boundary_point(mpfr_prec_t p = 256) {
  return make_pd_point({bf(1, p)}, {bf(1, p)}, {bf(1, p)}, {bf(3, p)});
}

}  // namespace

TEST_CASE("duality measure averages all complementarity products", "[ipm]") {
  const PDPoint z = make_pd_point({bf(2)}, {bf(1)}, {bf(3)}, {bf(4)});
  CHECK(z.mu_bar == bf(5));
  CHECK(duality_measure(z) == bf(5));

  // Perfectly centered dyadic point: every product equals 3.
  const mpfr_prec_t p = 256;
  const PDPoint c = make_pd_point(
      {bf(2, p), bf(4, p)}, {bf(8, p)},
      {BigFloat::from_rat(make_rat(3, 2), p), BigFloat::from_rat(make_rat(3, 4), p)},
      {BigFloat::from_rat(make_rat(3, 8), p)});
  CHECK(c.mu_bar == bf(3, p));

  CHECK_THROWS_AS(make_pd_point({bf(1)}, {bf(1)}, {BigFloat(64)}, {bf(1)}),
                  AssertError);
  CHECK_THROWS_AS(make_pd_point({bf(1)}, {bf(1)}, {-bf(1)}, {bf(1)}),
                  AssertError);
  CHECK_THROWS_AS(make_pd_point({bf(1), bf(1)}, {bf(1)}, {bf(1)}, {bf(1)}),
                  AssertError);
}

TEST_CASE("duality measure is affine along feasible segments", "[ipm]") {
  const RealLP lp = lw_real(2, 100);
  const mpfr_prec_t p = lp.precision_bits;
  const PDPoint za = tropical_warm_start(lp, make_rat(9, 4));
  const PDPoint zb = tropical_warm_start(lp, Rat(3));
  const BigFloat tol = BigFloat::from_rat(pow2(32 - static_cast<long>(p)), 64);
  const BigFloat one = bf(1, p);
  for (const Rat& alpha : {make_rat(1, 8), make_rat(1, 3), make_rat(7, 8)}) {
    const BigFloat a = BigFloat::from_rat(alpha, p);
    BFVec x(lp.n), w(lp.m), s(lp.n), y(lp.m);
    for (size_t j = 0; j < lp.n; ++j) {
      x[j] = (one - a) * za.x[j] + a * zb.x[j];
      s[j] = (one - a) * za.s[j] + a * zb.s[j];
    }
    for (size_t i = 0; i < lp.m; ++i) {
      w[i] = (one - a) * za.w[i] + a * zb.w[i];
      y[i] = (one - a) * za.y[i] + a * zb.y[i];
    }
    const PDPoint mix = make_pd_point(x, w, s, y);
    const BigFloat affine = (one - a) * za.mu_bar + a * zb.mu_bar;
    CHECK(abs(mix.mu_bar - affine) <= tol * affine);
  }
}

TEST_CASE("wide neighborhood membership is closed at the boundary", "[ipm]") {
  const PDPoint z = boundary_point();
  CHECK(in_wide_neighborhood(z, 0.5));   // product == (1 - theta) mu_bar
  CHECK(in_wide_neighborhood(z, 0.6));
  CHECK_FALSE(in_wide_neighborhood(z, 0.4));

  // Nudging one product below the boundary flips the closed test.
  const mpfr_prec_t p = 256;
  const PDPoint below =
      make_pd_point({bf(1, p)}, {bf(1, p)},
                    {BigFloat::from_rat(Rat(1) - pow2(-50), p)}, {bf(3, p)});
  CHECK_FALSE(in_wide_neighborhood(below, 0.5));

  const RealLP lp = one_var_lp(3, 256);
  const PDPoint central = one_var_central(lp, BigFloat::from_rat(make_rat(1, 2), 256));
  CHECK(in_wide_neighborhood(central, 0.01));
  CHECK(in_wide_neighborhood(central, 0.5));
  CHECK(in_wide_neighborhood(central, 0.99));

  CHECK_THROWS_AS(in_wide_neighborhood(z, 0.0), ConfigError);
  CHECK_THROWS_AS(in_wide_neighborhood(z, 1.0), ConfigError);
  CHECK_THROWS_AS(in_wide_neighborhood(z, -0.3), ConfigError);
}

TEST_CASE("newton direction vanishes on the central path", "[ipm]") {
  const RealLP lp = one_var_lp(3, 256);
  const PDPoint z = one_var_central(lp, BigFloat::from_rat(make_rat(1, 2), 256));
  const NewtonDirection d = newton_direction(z, z.mu_bar, lp);
  CHECK(direction_inf_norm(d) <= BigFloat::from_rat(pow2(-200), 64));
}

TEST_CASE("newton direction matches the one-variable closed form", "[ipm]") {
  const mpfr_prec_t p = 256;
  const RealLP lp = one_var_lp(3, p);
  const BigFloat mu = BigFloat::from_rat(make_rat(1, 2), p);
  const PDPoint z = one_var_central(lp, mu);

  SECTION("explicit 2x2 elimination") {
    const BigFloat mu_goal = BigFloat::from_rat(make_rat(1, 4), p);
    const NewtonDirection d = newton_direction(z, mu_goal, lp);
    // Eliminating dw = -dx, dy = ds leaves
    //   s dx + x ds = g1,  -y dx + w ds = g2.
    const BigFloat g1 = mu_goal - z.x[0] * z.s[0];
    const BigFloat g2 = mu_goal - z.w[0] * z.y[0];
    const BigFloat det = z.s[0] * z.w[0] + z.x[0] * z.y[0];
    const BigFloat dx_exact = (g1 * z.w[0] - z.x[0] * g2) / det;
    const BigFloat tol = BigFloat::from_rat(pow2(-200), 64);
    CHECK(abs(d.dx[0] - dx_exact) <= tol * abs(dx_exact));
    CHECK(abs(d.dw[0] + d.dx[0]) <= tol);
    CHECK(abs(d.dy[0] - d.ds[0]) <= tol);
  }

  SECTION("small centering steps track the analytic path derivative") {
    const BigFloat h = mu * BigFloat::from_rat(pow2(-20), p);
    const NewtonDirection d = newton_direction(z, mu - h, lp);
    const BigFloat secant = one_var_x(lp, mu - h) - one_var_x(lp, mu);
    // Newton linearizes the path: the mismatch is second order in h.
    CHECK(abs(d.dx[0] - secant) <= bf(10, p) * h * h);
    CHECK(d.dx[0].sgn() < 0);
  }
}

TEST_CASE("newton direction keeps both linear blocks and orthogonality",
          "[ipm]") {
  const RealLP lp = lw_real(2, 1000);
  const mpfr_prec_t p = lp.precision_bits;
  const PDPoint z = tropical_warm_start(lp, make_rat(9, 4));
  const BigFloat tol = BigFloat::from_rat(pow2(16 - static_cast<long>(p)), 64);
  for (const BigFloat& goal :
       {BigFloat(p), BigFloat::from_double(0.5, p) * z.mu_bar, z.mu_bar}) {
    const NewtonDirection d = newton_direction(z, goal, lp);
    BigFloat cross(p), scale(p);
    for (size_t j = 0; j < lp.n; ++j) {
      cross = cross + d.dx[j] * d.ds[j];
      scale = scale + abs(d.dx[j] * d.ds[j]);
    }
    for (size_t i = 0; i < lp.m; ++i) {
      cross = cross + d.dw[i] * d.dy[i];
      scale = scale + abs(d.dw[i] * d.dy[i]);
    }
    CHECK(abs(cross) <= tol * scale);
    BigFloat prim(p);
    for (size_t i = 0; i < lp.m; ++i) {
      BigFloat res(p);
      for (size_t j = 0; j < lp.n; ++j) res = res + lp.A(i, j) * d.dx[j];
      prim = max(prim, abs(res + d.dw[i]));
    }
    CHECK(prim <= tol * (bf(1, p) + inf_norm(d.dx)));
  }
}

TEST_CASE("step_to accepts the full step for a zero direction", "[ipm]") {
  const PDPoint z = boundary_point();
  const Step st = step_to(z, zero_direction(z), 0.5);
  CHECK(st.alpha == bf(1));
  CHECK(st.z.x[0] == z.x[0]);
  CHECK(st.z.mu_bar == z.mu_bar);
}

TEST_CASE("step_to finds a certified long step", "[ipm]") {
  const mpfr_prec_t p = 256;
  const RealLP lp = one_var_lp(3, p);
  const BigFloat mu = BigFloat::from_rat(make_rat(1, 2), p);
  const PDPoint z = one_var_central(lp, mu);
  const BigFloat sigma = BigFloat::from_rat(make_rat(1, 10), p);
  const NewtonDirection d = newton_direction(z, sigma * z.mu_bar, lp);
  const Step st = step_to(z, d, 0.5);
  CHECK(st.alpha.sgn() > 0);
  CHECK(st.alpha <= bf(1, p));
  CHECK(in_wide_neighborhood(st.z, 0.5));
  // mu_bar is affine in the step length: mu(alpha) = (1 - 0.9 alpha) mu.
  const BigFloat predicted =
      (bf(1, p) - (bf(1, p) - sigma) * st.alpha) * z.mu_bar;
  CHECK(abs(st.z.mu_bar - predicted) <=
        BigFloat::from_rat(pow2(32 - static_cast<long>(p)), 64) * z.mu_bar);
  // Interior points of the accepted segment stay inside as well.
  for (const Rat& f : {make_rat(1, 4), make_rat(1, 2), make_rat(3, 4)}) {
    auto mid = detail::advance(z, d, st.alpha * BigFloat::from_rat(f, p));
    REQUIRE(mid.has_value());
    CHECK(in_wide_neighborhood(*mid, 0.5));
  }
}

TEST_CASE("step_to rejects directions that exit immediately", "[ipm]") {
  const mpfr_prec_t p = 256;
  const PDPoint z = boundary_point(p);
  // ds = -1/2 shrinks the boundary product faster than mu_bar: every
  // positive step leaves the closed neighborhood.
  NewtonDirection d = zero_direction(z);
  d.ds[0] = -BigFloat::from_rat(make_rat(1, 2), p);
  CHECK_THROWS_AS(step_to(z, d, 0.5), AssertError);

  // Starting outside the neighborhood is a broken upstream invariant.
  const PDPoint outside =
      make_pd_point({bf(1, p)}, {bf(3, p)}, {bf(1, p)}, {bf(3, p)});
  CHECK_THROWS_AS(step_to(outside, zero_direction(outside), 0.5), AssertError);
}

TEST_CASE("tropical warm start lifts the r=1 path exactly", "[ipm]") {
  const RealLP lp = lw_real(1, 100);
  const mpfr_prec_t p = lp.precision_bits;
  const PDPoint z = tropical_warm_start(lp, Rat(2));
  // x = (t^2/2, t/2), w = b - x, y = (1/4, t/4), s = c + y.
  CHECK(z.x[0] == bf(5000, p));
  CHECK(z.x[1] == bf(50, p));
  CHECK(z.w[0] == bf(5000, p));
  CHECK(z.w[1] == bf(50, p));
  CHECK(z.y[0] == BigFloat::from_rat(make_rat(1, 4), p));
  CHECK(z.y[1] == bf(25, p));
  CHECK(z.s[0] == BigFloat::from_rat(make_rat(5, 4), p));
  CHECK(z.s[1] == bf(25, p));
  CHECK(z.mu_bar == bf(2500, p));

  CHECK_THROWS_AS(tropical_warm_start(lp, make_rat(-1, 2)), ConfigError);
  CHECK_THROWS_AS(tropical_warm_start(one_var_lp(3, 256), Rat(2)),
                  ConfigError);
}

TEST_CASE("tropical warm start closes both equality systems", "[ipm]") {
  for (int r : {1, 2, 3}) {
    const RealLP lp = lw_real(r, 50);
    const mpfr_prec_t p = lp.precision_bits;
    const PDPoint z = tropical_warm_start(lp, make_rat(5, 2));
    const BigFloat bound =
        BigFloat::from_rat(pow2(1 - static_cast<long>(p)), 64);
    CHECK(primal_residual(lp, z) <= bound);
    CHECK(dual_residual(lp, z) <= bound);
  }
}

TEST_CASE("tropical warm start spec-shaped overload matches", "[ipm]") {
  const RealLP lp = lw_real(1, 100);
  const PDPoint a = tropical_warm_start(lp, Rat(2));
  const PDPoint b =
      tropical_warm_start(LWSpec{1}, BigFloat::from_long(100, 64), Rat(2),
                          lp.precision_bits);
  REQUIRE(a.n() == b.n());
  CHECK(a.x[0] == b.x[0]);
  CHECK(a.mu_bar == b.mu_bar);
}

TEST_CASE("one centering pass lands the r=2 lift deep inside the cone",
          "[ipm]") {
  const RealLP lp = lw_real(2, 1000000);
  const PDPoint z = tropical_warm_start(lp, Rat(2));
  const NewtonDirection d = newton_direction(z, z.mu_bar, lp);
  auto centered = detail::advance(z, d, bf(1, lp.precision_bits));
  REQUIRE(centered.has_value());
  CHECK(in_wide_neighborhood(*centered, 0.99));
}

TEST_CASE("centered start reaches the requested duality measure", "[ipm]") {
  const RealLP lp = lw_real(2, 1000);
  const BigFloat mu_floor = pow_rat(lp.t, Rat(2));
  const PDPoint z = centered_start(lp, mu_floor, 0.25);
  CHECK(z.mu_bar >= mu_floor);
  CHECK(in_wide_neighborhood(z, 0.25));
  CHECK(in_wide_neighborhood(z, 0.5));
}

namespace {

void check_trajectory(const RealLP& lp, const Trajectory& traj,
                      const IPMConfig& cfg) {
  const mpfr_prec_t p = lp.precision_bits;
  const BigFloat feas_bound =
      BigFloat::from_rat(pow2(24 - static_cast<long>(p)), 64);
  REQUIRE(traj.iterates.size() >= 2);
  for (size_t k = 0; k < traj.iterates.size(); ++k) {
    const PDPoint& z = traj.iterates[k];
    CHECK(in_wide_neighborhood(z, cfg.theta));
    CHECK(primal_residual(lp, z) <= feas_bound);
    CHECK(dual_residual(lp, z) <= feas_bound);
    if (k > 0) CHECK(z.mu_bar < traj.iterates[k - 1].mu_bar);
  }
  CHECK(traj.iterates.back().mu_bar <= cfg.mu_target);
  // Correctors hold the duality measure fixed (the goal equals mu_bar).
  const BigFloat mu_tol = BigFloat::from_rat(pow2(32 - static_cast<long>(p)), 64);
  for (size_t k = 1; k < traj.steps.size(); ++k)
    if (traj.steps[k].phase == "corrector")
      CHECK(abs(traj.steps[k].z.mu_bar - traj.steps[k - 1].z.mu_bar) <=
            mu_tol * traj.steps[k - 1].z.mu_bar);
}

}  // namespace

TEST_CASE("predictor-corrector run drives mu below the target", "[ipm]") {
  const RealLP lp = lw_real(1, 100);
  IPMConfig cfg;
  cfg.variant = IPMVariant::PredictorCorrector;
  cfg.mu_target = bf(1, lp.precision_bits);
  cfg.check_segments = true;
  const PDPoint z0 = centered_start(lp, pow_rat(lp.t, Rat(2)), cfg.theta_inner);
  const Trajectory traj = run_ipm(lp, cfg, z0);
  check_trajectory(lp, traj, cfg);
  CHECK(traj.steps.front().phase == "predictor");
  CHECK(traj.p() >= 1);
}

TEST_CASE("long-step run drives mu below the target", "[ipm]") {
  const RealLP lp = lw_real(1, 100);
  IPMConfig cfg;
  cfg.variant = IPMVariant::LongStep;
  cfg.mu_target = bf(1, lp.precision_bits);
  cfg.check_segments = true;
  const PDPoint z0 = centered_start(lp, pow_rat(lp.t, Rat(2)), 0.25);
  const Trajectory traj = run_ipm(lp, cfg, z0);
  check_trajectory(lp, traj, cfg);
  for (const StepRecord& st : traj.steps) CHECK(st.phase == "long-step");
}

TEST_CASE("iteration counts grow with the instance size", "[ipm]") {
  size_t p2 = 0, p3 = 0;
  {
    const RealLP lp = lw_real(2, 1000000);
    IPMConfig cfg;
    cfg.mu_target = bf(1, lp.precision_bits);
    cfg.check_segments = true;
    const Trajectory traj =
        run_ipm(lp, cfg, centered_start(lp, pow_rat(lp.t, Rat(2)), 0.25));
    check_trajectory(lp, traj, cfg);
    p2 = traj.p();
  }
  {
    const RealLP lp = lw_real(3, 1000000);
    IPMConfig cfg;
    cfg.mu_target = bf(1, lp.precision_bits);
    const Trajectory traj =
        run_ipm(lp, cfg, centered_start(lp, pow_rat(lp.t, Rat(2)), 0.25));
    p3 = traj.p();
  }
  CHECK(p2 >= 2);
  CHECK(p3 > p2);
}

TEST_CASE("run_ipm validates its configuration", "[ipm]") {
  const RealLP lp = one_var_lp(3, 256);
  const PDPoint z = one_var_central(lp, bf(1, 256));
  IPMConfig bad;
  bad.theta = 1.5;
  CHECK_THROWS_AS(run_ipm(lp, bad, z), ConfigError);
  bad = IPMConfig{};
  bad.theta_inner = 0.7;  // must stay below theta
  CHECK_THROWS_AS(run_ipm(lp, bad, z), ConfigError);
  bad = IPMConfig{};
  bad.sigma = 0.005;  // below sigma_min
  CHECK_THROWS_AS(run_ipm(lp, bad, z), ConfigError);
  bad = IPMConfig{};
  bad.max_iters = 0;
  CHECK_THROWS_AS(run_ipm(lp, bad, z), ConfigError);
  IPMConfig starved;
  starved.mu_target = BigFloat::from_rat(pow2(-40), 256);
  starved.max_iters = 2;
  CHECK_THROWS_AS(run_ipm(lp, starved, z), NumericError);
}

TEST_CASE("central path tracer matches the one-variable oracle", "[ipm]") {
  const mpfr_prec_t p = 256;
  const RealLP lp = one_var_lp(3, p);
  const std::vector<Rat> grid = {Rat(1), make_rat(1, 2), Rat(0),
                                 make_rat(-1, 2)};
  const Rat seed_lambda = make_rat(5, 4);
  const PDPoint seed = one_var_central(lp, pow_rat(lp.t, seed_lambda));
  const auto samples = trace_central_path(
      lp, grid, default_cp_tolerance(p), std::make_pair(seed_lambda, seed));
  REQUIRE(samples.size() == grid.size());
  const BigFloat xtol = BigFloat::from_rat(pow2(-40), 64);
  const BigFloat feas_bound =
      BigFloat::from_rat(pow2(24 - static_cast<long>(p)), 64);
  for (size_t k = 0; k < samples.size(); ++k) {
    CHECK(samples[k].lambda == grid[k]);
    const BigFloat expect = one_var_x(lp, samples[k].mu);
    CHECK(abs(samples[k].z.x[0] - expect) <= xtol * expect);
    CHECK(samples[k].residual <= default_cp_tolerance(p));
    CHECK(samples[k].primal_residual <= feas_bound);
    CHECK(samples[k].dual_residual <= feas_bound);
  }
}

TEST_CASE("central path tracer lands near the tropical limit", "[ipm]") {
  const RealLP lp = lw_real(1, 1000000);
  const auto samples = trace_central_path(lp, {Rat(5)});
  REQUIRE(samples.size() == 1);
  const BFVec logs = log_t_coords(samples[0].z, lp.t);
  const TropCPPoint cp = trop_path_point(1, Rat(5));
  const std::vector<Rat> expect = cp.full_coords();
  REQUIRE(logs.size() == expect.size());
  // Theorem-level budget: log_t(2N/(1-theta)) + 2 log_t((2N+1)^2 ((2N)!)^4).
  const double lt = std::log(1e6);
  const double budget =
      (std::log(2 * 4 / 0.5) + 2 * (2 * std::log(9.0) + 4 * std::log(40320.0))) /
      lt;
  double dinf = 0.0;
  for (size_t k = 0; k < logs.size(); ++k)
    dinf = std::max(dinf,
                    std::abs(logs[k].to_double() - rat_to_double(expect[k])));
  CHECK(dinf <= budget);
  CHECK(dinf <= 0.5);  // at t = 10^6 the lift coefficients cost ~0.1
}

TEST_CASE("central path tracer rejects bad grids", "[ipm]") {
  const RealLP lp = one_var_lp(3, 256);
  CHECK_THROWS_AS(trace_central_path(lp, {}), ConfigError);
  CHECK_THROWS_AS(trace_central_path(lp, {Rat(1), Rat(1)}), ConfigError);
  CHECK_THROWS_AS(trace_central_path(lp, {Rat(1), Rat(2)}), ConfigError);
  CHECK_THROWS_AS(
      trace_central_path(lp, {Rat(1)}, BigFloat(64)), ConfigError);
}

TEST_CASE("polygonal curvature of elementary curves", "[ipm]") {
  using P = std::vector<std::vector<double>>;
  CHECK(polygonal_curvature(P{{0, 0}, {1, 1}, {2, 2}}) <= 1e-12);
  CHECK(polygonal_curvature(P{{0, 0}, {1, 0}, {1, 1}}) ==
        Catch::Approx(std::acos(0.0)).epsilon(1e-9));
  CHECK(polygonal_curvature(P{{0, 0}, {1, 0}, {1, 1}, {0, 1}}) ==
        Catch::Approx(2 * std::acos(0.0)).epsilon(1e-9));
  const auto angles = polygonal_angles(P{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  REQUIRE(angles.size() == 2);
  CHECK(angles[0] == Catch::Approx(std::acos(0.0)).epsilon(1e-9));

  CHECK_THROWS_AS(polygonal_curvature(P{{0, 0}, {1, 0}}), ConfigError);
  CHECK_THROWS_AS(polygonal_curvature(P{{0, 0}, {0, 0}, {1, 0}}), ConfigError);
  CHECK_THROWS_AS(polygonal_curvature(P{{0, 0}, {1, 0}, {1}}), ConfigError);
}
