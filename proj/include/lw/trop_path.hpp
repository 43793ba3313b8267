#pragma once

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lw/errors.hpp"
#include "lw/instances.hpp"
#include "lw/rational.hpp"
#include "lw/tropical.hpp"

namespace lw {

// ---------------------------------------------------------------------------
// Tropical central path of LW(r): exact recursion over rationals.
// ---------------------------------------------------------------------------

struct TropCPPoint {
  Rat lambda;
  RatVec x;  // dim 2r
  RatVec w;  // dim 3r-1
  RatVec s;  // dim 2r
  RatVec y;  // dim 3r-1

  size_t n() const { return x.size(); }
  size_t m() const { return w.size(); }
  size_t pairs() const { return n() + m(); }

  TropPoint x_trop() const { return trop_point(x); }
  TropPoint w_trop() const { return trop_point(w); }
  TropPoint s_trop() const { return trop_point(s); }
  TropPoint y_trop() const { return trop_point(y); }

  // (x, w): the primal half, dim N.
  RatVec primal_coords() const {
    RatVec v;
    v.reserve(pairs());
    v.insert(v.end(), x.begin(), x.end());
    v.insert(v.end(), w.begin(), w.end());
    return v;
  }
  // (x, w, s, y): the full point, dim 2N.
  RatVec full_coords() const {
    RatVec v = primal_coords();
    v.reserve(2 * pairs());
    v.insert(v.end(), s.begin(), s.end());
    v.insert(v.end(), y.begin(), y.end());
    return v;
  }
  TropPoint primal() const { return trop_point(primal_coords()); }
  TropPoint full() const { return trop_point(full_coords()); }
};

// x1 = min(lambda, 2); x2 = 1;
// x_{2j+1} = 1 + min(x_{2j-1}, x_{2j});
// x_{2j+2} = (1 - 1/2^j) + max(x_{2j-1}, x_{2j}).
inline RatVec trop_path_x_coords(int r, const Rat& lambda) {
  require(r >= 1, "trop_path: r must be >= 1");
  RatVec x(static_cast<size_t>(2 * r));
  x[0] = lambda < 2 ? lambda : Rat(2);
  x[1] = 1;
  for (int j = 1; j < r; ++j) {
    const Rat& a = x[2 * j - 2];
    const Rat& b = x[2 * j - 1];
    x[2 * j] = Rat(1) + (a < b ? a : b);
    x[2 * j + 1] = Rat(Rat(1) - pow2(-j)) + (a < b ? b : a);
  }
  return x;
}

// w1 = 2; w2 = 1; w_{3j} = 1 + x_{2j-1}; w_{3j+1} = 1 + x_{2j}; w_{3j+2} = x_{2j+2}.
inline RatVec trop_path_w_coords(int r, const RatVec& x) {
  require(r >= 1 && x.size() == static_cast<size_t>(2 * r), "trop_path: bad x for w");
  RatVec w(static_cast<size_t>(3 * r - 1));
  w[0] = 2;
  w[1] = 1;
  for (int j = 1; j < r; ++j) {
    w[3 * j - 1] = Rat(1) + x[2 * j - 2];
    w[3 * j] = Rat(1) + x[2 * j - 1];
    w[3 * j + 1] = x[2 * j + 1];
  }
  return w;
}

inline TropPoint trop_path_x(int r, const Rat& lambda) {
  return trop_point(trop_path_x_coords(r, lambda));
}

inline TropPoint trop_path_w(int r, const Rat& lambda) {
  return trop_point(trop_path_w_coords(r, trop_path_x_coords(r, lambda)));
}

// Full point: s_j = lambda - x_j and y_i = lambda - w_i, so that
// x_j + s_j = lambda = w_i + y_i holds identically.
inline TropCPPoint trop_path_point(int r, const Rat& lambda) {
  TropCPPoint z;
  z.lambda = lambda;
  z.x = trop_path_x_coords(r, lambda);
  z.w = trop_path_w_coords(r, z.x);
  z.s.resize(z.x.size());
  z.y.resize(z.w.size());
  for (size_t j = 0; j < z.x.size(); ++j) z.s[j] = lambda - z.x[j];
  for (size_t i = 0; i < z.w.size(); ++i) z.y[i] = lambda - z.w[i];
  return z;
}

// Tropical duality gap: max over all complementary pairs of coordinate sums.
inline TropRat tgap(const TropPoint& x, const TropPoint& w, const TropPoint& s,
                    const TropPoint& y) {
  require(x.size() == s.size() && w.size() == y.size(), "tgap: dimension mismatch");
  TropRat g = TropRat::neg_inf();
  for (size_t j = 0; j < x.size(); ++j) g = trop_add(g, trop_mul(x[j], s[j]));
  for (size_t i = 0; i < w.size(); ++i) g = trop_add(g, trop_mul(w[i], y[i]));
  return g;
}

inline Rat tgap(const TropCPPoint& z) {
  require(!z.x.empty(), "tgap: empty point");
  Rat g = z.x[0] + z.s[0];
  for (size_t j = 1; j < z.x.size(); ++j) {
    const Rat v = Rat(z.x[j] + z.s[j]);
    if (v > g) g = v;
  }
  for (size_t i = 0; i < z.w.size(); ++i) {
    const Rat v = Rat(z.w[i] + z.y[i]);
    if (v > g) g = v;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Tropical feasibility reports.
//
// Tropicalizing row i of Ax + w = b yields, for every variable on the
// left-hand side, an inequality against the max of the right-hand terms:
//     x_j + val(A_ij) <= rhs_i   (A_ij > 0),     w_i <= rhs_i,
//     rhs_i = max(val(b_i), max_{A_ik < 0} (val(A_ik) + x_k)),
// plus the objective cap x_j + val(c_j) <= lambda for c_j != 0.
// ---------------------------------------------------------------------------

struct MembershipRow {
  std::string row_id;    // "w1".."w{m}" for matrix rows, "cap" for the objective
  std::string relation;  // human-readable inequality
  Rat lhs;
  Rat rhs;
  bool tight = false;
  bool violated = false;
};

struct MembershipReport {
  bool ok = true;
  bool slack_rows_all_tight = true;  // every w_i-inequality holds with equality
  std::vector<MembershipRow> rows;
  std::vector<std::string> violations;
};

namespace detail {

inline std::string trop_term_str(const Rat& val, const std::string& var) {
  if (val == 0) return var;
  return rat_str(val) + " + " + var;
}

inline std::string trop_max_str(const std::vector<std::string>& terms) {
  if (terms.size() == 1) return terms[0];
  std::string out = "max(";
  for (size_t i = 0; i < terms.size(); ++i) out += (i ? ", " : "") + terms[i];
  return out + ")";
}

}  // namespace detail

inline MembershipReport verify_membership(const SlackLP& lp, const TropCPPoint& z) {
  require(z.x.size() == lp.n && z.w.size() == lp.m, "verify_membership: dims");
  MembershipReport rep;
  auto add = [&rep](std::string row_id, std::string relation, const Rat& lhs,
                    const Rat& rhs, bool slack_row) {
    MembershipRow row{std::move(row_id), std::move(relation), lhs, rhs,
                      lhs == rhs, lhs > rhs};
    if (row.violated) {
      rep.ok = false;
      rep.violations.push_back(row.row_id + ": " + row.relation);
    }
    if (slack_row && !row.tight) rep.slack_rows_all_tight = false;
    rep.rows.push_back(std::move(row));
  };

  for (size_t i = 0; i < lp.m; ++i) {
    bool seen = false;
    Rat rhs(0);
    std::vector<std::string> rhs_terms;
    if (!lp.b[i].is_zero()) {
      rhs = lp.b[i].val().v;
      seen = true;
      rhs_terms.push_back(rat_str(rhs));
    }
    for (size_t k = 0; k < lp.n; ++k) {
      const auto& e = lp.A(i, k);
      if (e.is_zero() || e.lc() > 0) continue;
      const Rat term = Rat(e.val().v + z.x[k]);
      rhs_terms.push_back(
          detail::trop_term_str(e.val().v, "x" + std::to_string(k + 1)));
      if (!seen || term > rhs) rhs = term;
      seen = true;
    }
    check(seen, "verify_membership: row " + std::to_string(i + 1) +
                    " has no right-hand terms");
    const std::string rhs_str = detail::trop_max_str(rhs_terms);
    const std::string id = "w" + std::to_string(i + 1);
    for (size_t j = 0; j < lp.n; ++j) {
      const auto& e = lp.A(i, j);
      if (e.is_zero() || e.lc() < 0) continue;
      const std::string var = "x" + std::to_string(j + 1);
      add(id, detail::trop_term_str(e.val().v, var) + " <= " + rhs_str,
          Rat(z.x[j] + e.val().v), rhs, false);
    }
    add(id, id + " <= " + rhs_str, z.w[i], rhs, true);
  }
  for (size_t j = 0; j < lp.n; ++j) {
    if (lp.c[j].is_zero()) continue;
    const std::string var = "x" + std::to_string(j + 1);
    add("cap", detail::trop_term_str(lp.c[j].val().v, var) + " <= lambda",
        Rat(z.x[j] + lp.c[j].val().v), z.lambda, false);
  }
  return rep;
}

inline MembershipReport verify_membership(const TropCPPoint& z) {
  require(z.n() % 2 == 0 && z.m() + 1 == 3 * (z.n() / 2),
          "verify_membership: dims do not match any LW instance");
  return verify_membership(build_lw({static_cast<int>(z.n() / 2)}), z);
}

inline MembershipReport verify_membership(int r, const Rat& lambda) {
  return verify_membership(build_lw({r}), trop_path_point(r, lambda));
}

// Dual-side tropical feasibility. Tropicalizing column j of s - A^T y = c
// gives a two-sided balance:
//     max(s_j, max_{A_ij < 0} (val(A_ij) + y_i))
//       = max(val(c_j), max_{A_ij > 0} (val(A_ij) + y_i)),
// and the objective side of the gap caps y_i + val(b_i) <= lambda.
struct DualMembershipReport {
  bool ok = true;
  std::vector<std::string> violations;
};

inline DualMembershipReport verify_dual_membership(const SlackLP& lp,
                                                   const TropCPPoint& z) {
  require(z.s.size() == lp.n && z.y.size() == lp.m, "verify_dual_membership: dims");
  DualMembershipReport rep;
  for (size_t j = 0; j < lp.n; ++j) {
    Rat lhs = z.s[j];
    bool rhs_seen = false;
    Rat rhs(0);
    if (!lp.c[j].is_zero()) {
      rhs = lp.c[j].val().v;
      rhs_seen = true;
    }
    for (size_t i = 0; i < lp.m; ++i) {
      const auto& e = lp.A(i, j);
      if (e.is_zero()) continue;
      const Rat term = Rat(e.val().v + z.y[i]);
      if (e.lc() < 0) {
        if (term > lhs) lhs = term;
      } else if (!rhs_seen || term > rhs) {
        rhs = term;
        rhs_seen = true;
      }
    }
    check(rhs_seen, "verify_dual_membership: column without level terms");
    if (lhs != rhs) {
      rep.ok = false;
      rep.violations.push_back("column x" + std::to_string(j + 1) +
                               " balance: " + rat_str(lhs) + " != " + rat_str(rhs));
    }
  }
  for (size_t i = 0; i < lp.m; ++i) {
    if (lp.b[i].is_zero()) continue;
    if (Rat(z.y[i] + lp.b[i].val().v) > z.lambda) {
      rep.ok = false;
      rep.violations.push_back("cap y" + std::to_string(i + 1) + ": " +
                               rat_str(z.y[i]) + " + " + rat_str(lp.b[i].val().v) +
                               " > lambda");
    }
  }
  return rep;
}

inline DualMembershipReport verify_dual_membership(const TropCPPoint& z) {
  require(z.n() % 2 == 0 && z.m() + 1 == 3 * (z.n() / 2),
          "verify_dual_membership: dims do not match any LW instance");
  return verify_dual_membership(build_lw({static_cast<int>(z.n() / 2)}), z);
}

// ---------------------------------------------------------------------------
// Random feasible samples with tropical gap <= lambda.
//
// The primal pass walks variables in column order; each column's upper bound
// only references earlier columns (the instance is forward-triangular), so
// sampling any value at or below the bound keeps every inequality valid.
// Slack coordinates are forced to the row maximum unless the x-term attains
// it. The dual pass mirrors this: each y_i is capped by the headroom of the
// column balances it feeds (all of whose levels are already fixed), and s_j
// closes its column balance exactly.
// ---------------------------------------------------------------------------

namespace detail {

inline Rat sample_shrink(std::mt19937_64& rng, int r) {
  const unsigned u = static_cast<unsigned>(rng() % 6);
  if (u <= 1) return Rat(0);
  if (u <= 4)
    return Rat(Rat(1 + static_cast<long>(rng() % 8)) * pow2(-(r + 1)));
  return Rat(Rat(1) + Rat(static_cast<long>(rng() % 9)) * make_rat(1, 4));
}

}  // namespace detail

inline TropCPPoint sample_feasible(const SlackLP& lp, const Rat& lambda,
                                   std::mt19937_64& rng) {
  TropCPPoint z;
  z.lambda = lambda;
  z.x.assign(lp.n, Rat(0));
  z.w.assign(lp.m, Rat(0));
  z.s.assign(lp.n, Rat(0));
  z.y.assign(lp.m, Rat(0));

  auto row_rhs = [&](size_t i) -> Rat {
    bool seen = false;
    Rat best(0);
    if (!lp.b[i].is_zero()) {
      best = lp.b[i].val().v;
      seen = true;
    }
    for (size_t k = 0; k < lp.n; ++k) {
      const auto& e = lp.A(i, k);
      if (e.is_zero() || e.lc() > 0) continue;
      const Rat cand = Rat(e.val().v + z.x[k]);
      if (!seen || cand > best) best = cand;
      seen = true;
    }
    check(seen, "sample_feasible: row without right-hand terms");
    return best;
  };

  for (size_t j = 0; j < lp.n; ++j) {
    bool seen = false;
    Rat ub(0);
    if (!lp.c[j].is_zero()) {
      ub = Rat(lambda - lp.c[j].val().v);
      seen = true;
    }
    for (size_t i = 0; i < lp.m; ++i) {
      const auto& e = lp.A(i, j);
      if (e.is_zero() || e.lc() < 0) continue;
      for (size_t k = j; k < lp.n; ++k)
        check(lp.A(i, k).is_zero() || lp.A(i, k).lc() > 0,
              "sample_feasible: instance is not forward-triangular");
      const Rat cand = Rat(row_rhs(i) - e.val().v);
      if (!seen || cand < ub) ub = cand;
      seen = true;
    }
    check(seen, "sample_feasible: unbounded variable");
    z.x[j] = ub - detail::sample_shrink(rng, lp.r);
  }

  for (size_t i = 0; i < lp.m; ++i) {
    const Rat rhs = row_rhs(i);
    bool attained = false;
    for (size_t j = 0; j < lp.n; ++j) {
      const auto& e = lp.A(i, j);
      if (!e.is_zero() && e.lc() > 0 && Rat(z.x[j] + e.val().v) == rhs)
        attained = true;
    }
    z.w[i] = attained ? Rat(rhs - detail::sample_shrink(rng, lp.r)) : rhs;
  }

  auto col_level = [&](size_t j) -> Rat {
    bool seen = false;
    Rat best(0);
    if (!lp.c[j].is_zero()) {
      best = lp.c[j].val().v;
      seen = true;
    }
    for (size_t i = 0; i < lp.m; ++i) {
      const auto& e = lp.A(i, j);
      if (e.is_zero() || e.lc() < 0) continue;
      const Rat cand = Rat(e.val().v + z.y[i]);
      if (!seen || cand > best) best = cand;
      seen = true;
    }
    check(seen, "sample_feasible: column without level terms");
    return best;
  };

  for (size_t i = 0; i < lp.m; ++i) {
    bool seen = false;
    Rat cap(0);
    if (!lp.b[i].is_zero()) {
      cap = Rat(lambda - lp.b[i].val().v);
      seen = true;
    }
    for (size_t j = 0; j < lp.n; ++j) {
      const auto& e = lp.A(i, j);
      if (e.is_zero() || e.lc() > 0) continue;
      for (size_t i2 = i; i2 < lp.m; ++i2)
        check(lp.A(i2, j).is_zero() || lp.A(i2, j).lc() < 0,
              "sample_feasible: dual pass needs defining rows first");
      const Rat cand = Rat(col_level(j) - e.val().v);
      if (!seen || cand < cap) cap = cand;
      seen = true;
    }
    check(seen, "sample_feasible: dual variable without cap");
    z.y[i] = cap - detail::sample_shrink(rng, lp.r);
  }

  for (size_t j = 0; j < lp.n; ++j) {
    const Rat level = col_level(j);
    bool attained = false;
    for (size_t i = 0; i < lp.m; ++i) {
      const auto& e = lp.A(i, j);
      if (e.is_zero() || e.lc() > 0) continue;
      const Rat term = Rat(z.y[i] + e.val().v);
      check(term <= level, "sample_feasible: headroom cap arithmetic failed");
      if (term == level) attained = true;
    }
    z.s[j] = attained ? Rat(level - detail::sample_shrink(rng, lp.r)) : level;
  }
  return z;
}

inline TropCPPoint sample_feasible(int r, const Rat& lambda, std::mt19937_64& rng) {
  return sample_feasible(build_lw({r}), lambda, rng);
}

// ---------------------------------------------------------------------------
// Breakpoint decomposition.
//
// The path is sampled on the grid of step 2^{-r} (all kinks of the recursion
// lie on multiples of 2^{-(r-1)}; the finer grid certifies rather than
// assumes this). Each cell must pass two exact checks: the midpoint lies on
// the chord, and every primal coordinate moves with slope exactly 0 or 1.
// Cells with identical direction indicators are merged.
// ---------------------------------------------------------------------------

struct BreakpointDecomposition {
  int r = 0;
  std::vector<Rat> lambdas;                       // piece boundaries, endpoints included
  std::vector<TropCPPoint> vertices;              // path points at those lambdas
  std::vector<std::vector<uint8_t>> primal_dirs;  // per piece, indicator over (x, w)

  size_t pieces() const { return primal_dirs.size(); }

  // Direction over (x, w, s, y): the dual half moves exactly where the
  // primal half does not, because x_j + s_j = lambda = w_i + y_i.
  std::vector<uint8_t> full_dir(size_t piece) const {
    const auto& k = primal_dirs.at(piece);
    std::vector<uint8_t> out(2 * k.size());
    for (size_t i = 0; i < k.size(); ++i) {
      out[i] = k[i];
      out[k.size() + i] = static_cast<uint8_t>(1 - k[i]);
    }
    return out;
  }
};

namespace detail {

inline std::string primal_coord_name(size_t k, size_t n) {
  return k < n ? "x" + std::to_string(k + 1) : "w" + std::to_string(k - n + 1);
}

}  // namespace detail

inline BreakpointDecomposition breakpoints(int r, const Rat& lo, const Rat& hi) {
  require(r >= 1, "breakpoints: r must be >= 1");
  require(lo <= hi, "breakpoints: empty interval");
  BreakpointDecomposition out;
  out.r = r;
  if (lo == hi) {
    out.lambdas = {lo};
    out.vertices = {trop_path_point(r, lo)};
    return out;
  }

  std::vector<Rat> grid{lo};
  const Rat step = pow2(-r);
  mpz_class k = rat_ceil(Rat(lo / step));
  const mpz_class k_hi = rat_floor(Rat(hi / step));
  require(mpz_class(k_hi - k) <= (1 << 18), "breakpoints: grid too large");
  for (; k <= k_hi; ++k) {
    const Rat v = Rat(Rat(k) * step);
    if (v > lo && v < hi) grid.push_back(v);
  }
  grid.push_back(hi);

  const size_t n = static_cast<size_t>(2 * r);
  std::vector<TropCPPoint> pts;
  pts.reserve(grid.size());
  for (const Rat& l : grid) pts.push_back(trop_path_point(r, l));

  std::vector<std::vector<uint8_t>> cell_dirs(grid.size() - 1);
  for (size_t c = 0; c + 1 < grid.size(); ++c) {
    const Rat h = Rat(grid[c + 1] - grid[c]);
    const Rat mid = Rat(Rat(grid[c] + grid[c + 1]) / 2);
    const RatVec va = pts[c].primal_coords();
    const RatVec vb = pts[c + 1].primal_coords();
    const RatVec vm = trop_path_point(r, mid).primal_coords();
    std::vector<uint8_t> dir(va.size());
    for (size_t kk = 0; kk < va.size(); ++kk) {
      const std::string where = " on cell [" + rat_str(grid[c]) + ", " +
                                rat_str(grid[c + 1]) + "] at coordinate " +
                                detail::primal_coord_name(kk, n);
      check(Rat(2 * vm[kk]) == Rat(va[kk] + vb[kk]),
            "breakpoints: midpoint linearity certificate failed" + where);
      const Rat diff = Rat(vb[kk] - va[kk]);
      if (diff == 0) {
        dir[kk] = 0;
      } else if (diff == h) {
        dir[kk] = 1;
      } else {
        throw AssertError(
            "breakpoints: direction integrality certificate failed" + where);
      }
    }
    cell_dirs[c] = std::move(dir);
  }

  out.lambdas.push_back(grid[0]);
  out.vertices.push_back(pts[0]);
  for (size_t c = 0; c < cell_dirs.size(); ++c) {
    if (c > 0 && cell_dirs[c] == out.primal_dirs.back()) {
      out.lambdas.back() = grid[c + 1];
      out.vertices.back() = pts[c + 1];
      continue;
    }
    out.primal_dirs.push_back(cell_dirs[c]);
    out.lambdas.push_back(grid[c + 1]);
    out.vertices.push_back(pts[c + 1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polylines, projections, and the minimal tropical-segment count.
// ---------------------------------------------------------------------------

enum class PathProjection { full, primal, last_pair };

struct TropPolyline {
  std::vector<Rat> params;               // lambda at each vertex
  std::vector<TropPoint> vertices;       // size pieces()+1
  std::vector<std::vector<uint8_t>> dirs;  // per piece, support indicator

  size_t pieces() const { return dirs.size(); }
};

inline TropPolyline to_polyline(const BreakpointDecomposition& d,
                                PathProjection proj = PathProjection::full) {
  const size_t n = d.vertices.empty() ? 0 : d.vertices.front().n();
  auto extract_point = [&](const TropCPPoint& z) -> TropPoint {
    switch (proj) {
      case PathProjection::full:
        return z.full();
      case PathProjection::primal:
        return z.primal();
      case PathProjection::last_pair:
        return trop_point(RatVec{z.x[n - 2], z.x[n - 1]});
    }
    throw ConfigError("to_polyline: unknown projection");
  };
  auto extract_dir = [&](size_t piece) -> std::vector<uint8_t> {
    switch (proj) {
      case PathProjection::full:
        return d.full_dir(piece);
      case PathProjection::primal:
        return d.primal_dirs[piece];
      case PathProjection::last_pair:
        return {d.primal_dirs[piece][n - 2], d.primal_dirs[piece][n - 1]};
    }
    throw ConfigError("to_polyline: unknown projection");
  };

  TropPolyline out;
  if (d.vertices.empty()) return out;
  out.params.push_back(d.lambdas[0]);
  out.vertices.push_back(extract_point(d.vertices[0]));
  for (size_t p = 0; p < d.pieces(); ++p) {
    std::vector<uint8_t> dir = extract_dir(p);
    const bool moving =
        std::any_of(dir.begin(), dir.end(), [](uint8_t b) { return b != 0; });
    if (!moving) continue;  // projection is constant on this piece
    if (!out.dirs.empty() && dir == out.dirs.back()) {
      out.params.back() = d.lambdas[p + 1];
      out.vertices.back() = extract_point(d.vertices[p + 1]);
      continue;
    }
    out.dirs.push_back(std::move(dir));
    out.params.push_back(d.lambdas[p + 1]);
    out.vertices.push_back(extract_point(d.vertices[p + 1]));
  }
  return out;
}

namespace detail {

inline bool strict_superset(const std::vector<uint8_t>& small,
                            const std::vector<uint8_t>& big) {
  bool strictly = false;
  for (size_t k = 0; k < small.size(); ++k) {
    if (small[k] && !big[k]) return false;
    if (big[k] && !small[k]) strictly = true;
  }
  return strictly;
}

}  // namespace detail

// Minimal number of tropical segments whose concatenation is the path.
// A run of consecutive pieces forms a single tropical segment exactly when
// its direction supports are strictly nested increasing (an ascending
// segment switches coordinates on, never off, and moves all active ones at
// a common rate). Runs that are segment-feasible are closed under taking
// sub-runs, so the greedy maximal run is optimal.
inline size_t gamma_count(const TropPolyline& path) {
  const size_t q = path.pieces();
  require(path.vertices.size() == q + 1, "gamma_count: malformed polyline");
  if (q == 0) return 0;
  for (size_t p = 0; p < q; ++p) {
    const TropPoint& a = path.vertices[p];
    const TropPoint& b = path.vertices[p + 1];
    require(a.size() == b.size() && a.size() == path.dirs[p].size(),
            "gamma_count: dimension mismatch");
    bool any = false;
    Rat step(0);
    for (size_t k = 0; k < a.size(); ++k) {
      require(a[k].finite == b[k].finite,
              "gamma_count: support changes along a piece");
      if (!a[k].finite) {
        require(path.dirs[p][k] == 0, "gamma_count: direction on -inf coordinate");
        continue;
      }
      const Rat diff = Rat(b[k].v - a[k].v);
      require(diff >= 0, "gamma_count: path is not monotone");
      require((diff > 0) == (path.dirs[p][k] != 0),
              "gamma_count: direction support does not match the vertices");
      if (diff > 0) {
        require(!any || diff == step,
                "gamma_count: unequal coordinate increments within a piece");
        any = true;
        step = diff;
      }
    }
    require(any, "gamma_count: constant piece");
    if (p > 0)
      require(path.dirs[p] != path.dirs[p - 1],
              "gamma_count: consecutive pieces with identical direction");
  }
  size_t count = 1;
  for (size_t p = 1; p < q; ++p)
    if (!detail::strict_superset(path.dirs[p - 1], path.dirs[p])) ++count;
  return count;
}

inline size_t gamma_count(const BreakpointDecomposition& d,
                          PathProjection proj = PathProjection::full) {
  return gamma_count(to_polyline(d, proj));
}

// Projection of the path over [0, 2] onto the last primal pair
// (x_{2r-1}, x_{2r}): the staircase with 2^{r-1} alternating steps.
inline TropPolyline staircase(int r) {
  return to_polyline(breakpoints(r, Rat(0), Rat(2)), PathProjection::last_pair);
}

inline size_t staircase_pieces(int r) { return staircase(r).pieces(); }

// ---------------------------------------------------------------------------
// Weak tropical angles and the curvature lower bound.
// ---------------------------------------------------------------------------

// Returns the angle in quarter turns: 1 (= pi/2) iff
// max U < max V < max W strictly and argmax(V), argmax(W) are disjoint.
inline int weak_tropical_angle(const TropPoint& u, const TropPoint& v,
                               const TropPoint& w) {
  require(u.size() == v.size() && v.size() == w.size(),
          "weak_tropical_angle: dimension mismatch");
  auto top = [](const TropPoint& p) {
    TropRat t = TropRat::neg_inf();
    for (const auto& c : p) t = trop_add(t, c);
    return t;
  };
  const TropRat mu = top(u), mv = top(v), mw = top(w);
  if (!(mu < mv && mv < mw)) return 0;
  for (size_t k = 0; k < v.size(); ++k)
    if (v[k] == mv && w[k] == mw) return 0;
  return 1;
}

struct TropCurvature {
  long quarter_turns = 0;
  double radians() const {
    return static_cast<double>(quarter_turns) * std::numbers::pi / 2;
  }
  std::string exact_str() const {
    return std::to_string(quarter_turns) + "*pi/2";
  }
};

// Sum of weak tropical angles of the full primal-dual path points over the
// grid. Needs at least two grid points (a two-point grid has no interior
// vertex and contributes zero).
inline TropCurvature trop_curvature_lower_bound(int r,
                                                const std::vector<Rat>& grid) {
  require(r >= 1, "trop_curvature_lower_bound: r must be >= 1");
  require(grid.size() >= 2, "trop_curvature_lower_bound: grid too short");
  for (size_t k = 1; k < grid.size(); ++k)
    require(grid[k - 1] < grid[k],
            "trop_curvature_lower_bound: grid must be strictly increasing");
  std::vector<TropPoint> pts;
  pts.reserve(grid.size());
  for (const Rat& l : grid) pts.push_back(trop_path_point(r, l).full());
  TropCurvature out;
  for (size_t k = 1; k + 1 < pts.size(); ++k)
    out.quarter_turns += weak_tropical_angle(pts[k - 1], pts[k], pts[k + 1]);
  return out;
}

// The canonical grid lambda_k = 4k / 2^{r-1}, k = 0 .. 2^{r-2}, on which the
// path exhibits one quarter turn at every interior vertex.
inline std::vector<Rat> make_curvature_grid(int r) {
  require(r >= 2 && r <= 24, "make_curvature_grid: need 2 <= r <= 24");
  std::vector<Rat> grid;
  const long count = 1L << (r - 2);
  const Rat step = pow2(3 - r);  // 4 / 2^{r-1}
  for (long k = 0; k <= count; ++k) grid.push_back(Rat(Rat(k) * step));
  return grid;
}

inline Rat epsilon0(int r) {
  require(r >= 2, "epsilon0: r must be >= 2");
  return Rat(Rat(1) / Rat(Rat(3) * pow2(r - 1)));
}

}  // namespace lw
