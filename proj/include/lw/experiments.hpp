#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lw/instances.hpp"
#include "lw/io.hpp"
#include "lw/ipm.hpp"
#include "lw/thresholds.hpp"
#include "lw/trop_path.hpp"

namespace lw {

inline constexpr const char* kToolVersion = "lw 1.0.0";

// ---------------------------------------------------------------------------
// Experiment grid: the cross product of instance sizes and scale parameters
// one invocation sweeps, plus the solver knobs shared by every cell.
// ---------------------------------------------------------------------------

struct ExperimentGrid {
  std::vector<int> r_values;          // instance sizes, 2 <= r <= 12
  std::vector<std::string> t_values;  // integer decimal strings, each > 1
  IPMVariant variant = IPMVariant::PredictorCorrector;
  Rat theta = make_rat(1, 2);         // wide-neighborhood radius
  Rat lambda_lo = Rat(0);             // sampling window of mu = t^lambda
  Rat lambda_hi = Rat(2);
  long lambda_steps = 16;             // intervals; the grid has steps+1 samples
  mpfr_prec_t precision_bits = 0;     // 0 = per-instance default
  unsigned long seed = 1;
  std::string csv_out, json_out;      // optional output paths
};

inline mpz_class parse_t_integer(const std::string& s) {
  require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
          "t must be a positive integer decimal string: " + s);
  const mpz_class z(s, 10);
  require(z > 1, "t must exceed 1: " + s);
  return z;
}

inline void validate_grid(const ExperimentGrid& g) {
  require(!g.r_values.empty(), "experiment grid: empty r list");
  for (int r : g.r_values)
    require(r >= 2 && r <= 12, "experiment grid: r must be in [2, 12]");
  require(!g.t_values.empty(), "experiment grid: empty t list");
  for (const std::string& t : g.t_values) parse_t_integer(t);
  require(g.theta > 0 && g.theta < 1, "experiment grid: need 0 < theta < 1");
  require(g.lambda_hi > g.lambda_lo,
          "experiment grid: need lambda_lo < lambda_hi");
  require(g.lambda_steps >= 1, "experiment grid: need at least one interval");
  require(g.precision_bits == 0 || g.precision_bits >= 64,
          "experiment grid: precision_bits must be 0 (auto) or >= 64");
}

// Canonical dump; its FNV-1a fingerprint is the config hash behind each cell.
inline std::string grid_echo(const ExperimentGrid& g) {
  Json lambda{{"lo", rat_str(g.lambda_lo)},
              {"hi", rat_str(g.lambda_hi)},
              {"steps", g.lambda_steps}};
  Json j{{"r", g.r_values},
         {"t", g.t_values},
         {"variant", g.variant == IPMVariant::LongStep ? "long-step" : "pc"},
         {"theta", rat_str(g.theta)},
         {"lambda", std::move(lambda)},
         {"precision_bits", static_cast<long>(g.precision_bits)},
         {"seed", g.seed}};
  return j.dump();
}

// ---------------------------------------------------------------------------
// Report records. One flat cell schema serves all three experiments; fields
// that do not apply to a cell's kind stay at their zero values. Every claimed
// flag is re-derivable from the stored raw numbers next to it.
// ---------------------------------------------------------------------------

struct ReportCell {
  std::string kind;            // "iterations" | "convergence" | "curvature"
  int r = 0;
  std::string t;               // decimal string
  std::string lambda;          // convergence cells: the sample parameter
  long iterations = 0;         // p
  long iter_lower_bound = 0;   // 2^{r-1}
  bool iter_bound_met = false;
  bool threshold_met = false;  // t >= min_valid_t(r, theta)
  long threshold_digits = 0;   // digit count of min_valid_t(r, theta)
  long gamma = 0;              // minimal tropical-segment count of the staircase
  double curvature = 0.0;      // measured polygonal curvature (radians)
  double curvature_bound = 0.0;  // (2^{r-2}-1) pi/2
  std::vector<double> corner_angles;  // window sums at the staircase corners
  double max_dinf = 0.0;
  double dinf_budget = 0.0;
  bool bound_guaranteed = false;
  bool pass = false;
  std::string invocation;      // exact CLI line replaying this cell
  std::string config_hash;
  std::string detail;

  friend bool operator==(const ReportCell&, const ReportCell&) = default;
};

struct Report {
  std::string tool_version = kToolVersion;
  std::string invocation;   // the CLI line that produced the whole report
  std::string config_hash;  // fnv1a64_hex(config_echo)
  std::string config_echo;  // canonical grid dump
  std::vector<ReportCell> cells;

  friend bool operator==(const Report&, const Report&) = default;
};

inline Json cell_to_json(const ReportCell& c) {
  return Json{{"kind", c.kind},
              {"r", c.r},
              {"t", c.t},
              {"lambda", c.lambda},
              {"iterations", c.iterations},
              {"iter_lower_bound", c.iter_lower_bound},
              {"iter_bound_met", c.iter_bound_met},
              {"threshold_met", c.threshold_met},
              {"threshold_digits", c.threshold_digits},
              {"gamma", c.gamma},
              {"curvature", c.curvature},
              {"curvature_bound", c.curvature_bound},
              {"corner_angles", c.corner_angles},
              {"max_dinf", c.max_dinf},
              {"dinf_budget", c.dinf_budget},
              {"bound_guaranteed", c.bound_guaranteed},
              {"pass", c.pass},
              {"invocation", c.invocation},
              {"config_hash", c.config_hash},
              {"detail", c.detail}};
}

inline ReportCell cell_from_json(const Json& j) {
  ReportCell c;
  c.kind = j.at("kind").get<std::string>();
  c.r = j.at("r").get<int>();
  c.t = j.at("t").get<std::string>();
  c.lambda = j.at("lambda").get<std::string>();
  c.iterations = j.at("iterations").get<long>();
  c.iter_lower_bound = j.at("iter_lower_bound").get<long>();
  c.iter_bound_met = j.at("iter_bound_met").get<bool>();
  c.threshold_met = j.at("threshold_met").get<bool>();
  c.threshold_digits = j.at("threshold_digits").get<long>();
  c.gamma = j.at("gamma").get<long>();
  c.curvature = j.at("curvature").get<double>();
  c.curvature_bound = j.at("curvature_bound").get<double>();
  c.corner_angles = j.at("corner_angles").get<std::vector<double>>();
  c.max_dinf = j.at("max_dinf").get<double>();
  c.dinf_budget = j.at("dinf_budget").get<double>();
  c.bound_guaranteed = j.at("bound_guaranteed").get<bool>();
  c.pass = j.at("pass").get<bool>();
  c.invocation = j.at("invocation").get<std::string>();
  c.config_hash = j.at("config_hash").get<std::string>();
  c.detail = j.at("detail").get<std::string>();
  return c;
}

inline Json report_to_json(const Report& rep) {
  Json cells = Json::array();
  for (const ReportCell& c : rep.cells) cells.push_back(cell_to_json(c));
  return Json{{"tool_version", rep.tool_version},
              {"invocation", rep.invocation},
              {"config_hash", rep.config_hash},
              {"config_echo", rep.config_echo},
              {"cells", std::move(cells)}};
}

inline Report report_from_json(const Json& j) {
  Report rep;
  rep.tool_version = j.at("tool_version").get<std::string>();
  rep.invocation = j.at("invocation").get<std::string>();
  rep.config_hash = j.at("config_hash").get<std::string>();
  rep.config_echo = j.at("config_echo").get<std::string>();
  rep.cells.clear();
  for (const Json& c : j.at("cells")) rep.cells.push_back(cell_from_json(c));
  return rep;
}

inline std::string emit_report_json(const Report& rep) {
  return report_to_json(rep).dump(2) + "\n";
}

inline Report parse_report_json(const std::string& text) {
  return report_from_json(Json::parse(text));
}

inline const std::vector<std::string>& report_csv_columns() {
  static const std::vector<std::string> cols{
      "kind",          "r",
      "t",             "lambda",
      "iterations",    "iter_lower_bound",
      "iter_bound_met", "threshold_met",
      "threshold_digits", "gamma",
      "curvature",     "curvature_bound",
      "corner_angles", "max_dinf",
      "dinf_budget",   "bound_guaranteed",
      "pass",          "invocation",
      "config_hash",   "detail"};
  return cols;
}

inline std::string emit_report_csv(const Report& rep) {
  std::vector<CsvRow> rows;
  rows.push_back({"tool_version", rep.tool_version});
  rows.push_back({"invocation", rep.invocation});
  rows.push_back({"config_hash", rep.config_hash});
  rows.push_back({"config_echo", rep.config_echo});
  rows.push_back(report_csv_columns());
  for (const ReportCell& c : rep.cells)
    rows.push_back({c.kind, std::to_string(c.r), c.t, c.lambda,
                    std::to_string(c.iterations),
                    std::to_string(c.iter_lower_bound),
                    c.iter_bound_met ? "1" : "0", c.threshold_met ? "1" : "0",
                    std::to_string(c.threshold_digits), std::to_string(c.gamma),
                    double_str(c.curvature), double_str(c.curvature_bound),
                    join_doubles(c.corner_angles), double_str(c.max_dinf),
                    double_str(c.dinf_budget), c.bound_guaranteed ? "1" : "0",
                    c.pass ? "1" : "0", c.invocation, c.config_hash, c.detail});
  return emit_csv(rows);
}

inline Report parse_report_csv(const std::string& text) {
  const std::vector<CsvRow> rows = parse_csv(text);
  require(rows.size() >= 5, "report csv: missing preamble rows");
  auto kv = [&rows](size_t i, const char* key) {
    require(rows[i].size() == 2 && rows[i][0] == key,
            std::string("report csv: expected a '") + key + "' row");
    return rows[i][1];
  };
  Report rep;
  rep.tool_version = kv(0, "tool_version");
  rep.invocation = kv(1, "invocation");
  rep.config_hash = kv(2, "config_hash");
  rep.config_echo = kv(3, "config_echo");
  require(rows[4] == report_csv_columns(), "report csv: bad header row");
  for (size_t i = 5; i < rows.size(); ++i) {
    const CsvRow& row = rows[i];
    require(row.size() == report_csv_columns().size(),
            "report csv: wrong field count in row " + std::to_string(i + 1));
    ReportCell c;
    c.kind = row[0];
    c.r = static_cast<int>(parse_long(row[1]));
    c.t = row[2];
    c.lambda = row[3];
    c.iterations = parse_long(row[4]);
    c.iter_lower_bound = parse_long(row[5]);
    c.iter_bound_met = parse_bool01(row[6]);
    c.threshold_met = parse_bool01(row[7]);
    c.threshold_digits = parse_long(row[8]);
    c.gamma = parse_long(row[9]);
    c.curvature = parse_double(row[10]);
    c.curvature_bound = parse_double(row[11]);
    c.corner_angles = split_doubles(row[12]);
    c.max_dinf = parse_double(row[13]);
    c.dinf_budget = parse_double(row[14]);
    c.bound_guaranteed = parse_bool01(row[15]);
    c.pass = parse_bool01(row[16]);
    c.invocation = row[17];
    c.config_hash = row[18];
    c.detail = row[19];
    rep.cells.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Shared per-cell machinery.
// ---------------------------------------------------------------------------

namespace detail {

struct CellSetup {
  int r = 0;
  std::string t_str;
  mpz_class t_int;
  mpfr_prec_t bits = 0;
  RealLP lp;
};

inline CellSetup make_cell_setup(int r, const std::string& t_str,
                                 mpfr_prec_t bits_override) {
  CellSetup s;
  s.r = r;
  s.t_str = t_str;
  s.t_int = parse_t_integer(t_str);
  const BigFloat probe = BigFloat::from_decimal(t_str, 64);
  s.bits = bits_override ? bits_override : default_precision_bits(r, probe);
  s.lp = evaluate_lp(build_lw({r}), BigFloat::from_decimal(t_str, s.bits));
  return s;
}

// Cells are assembled in (r, t) order regardless of how the grid lists them.
inline std::vector<int> sorted_r(const std::vector<int>& rs) {
  std::vector<int> out = rs;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::string> sorted_t(const std::vector<std::string>& ts) {
  std::vector<std::pair<mpz_class, std::string>> keyed;
  keyed.reserve(ts.size());
  for (const std::string& t : ts) keyed.emplace_back(parse_t_integer(t), t);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (size_t k = 0; k < keyed.size(); ++k)
    if (k == 0 || keyed[k].first != keyed[k - 1].first)
      out.push_back(keyed[k].second);
  return out;
}

inline const char* variant_flag(IPMVariant v) {
  return v == IPMVariant::LongStep ? "long-step" : "pc";
}

}  // namespace detail

// Ascending sampling grid lambda_lo .. lambda_hi with lambda_steps intervals.
inline std::vector<Rat> lambda_grid_of(const ExperimentGrid& g) {
  std::vector<Rat> grid;
  grid.reserve(static_cast<size_t>(g.lambda_steps) + 1);
  const Rat span = Rat(g.lambda_hi - g.lambda_lo);
  for (long k = 0; k <= g.lambda_steps; ++k)
    grid.push_back(
        Rat(g.lambda_lo + Rat(Rat(Rat(k) * span) / Rat(g.lambda_steps))));
  return grid;
}

// ---------------------------------------------------------------------------
// Iteration-count experiment: run the solver from mu_bar >= t^2 down to
// mu_bar <= 1 and record p against the 2^{r-1} segment bound. The bound is a
// theorem only above min_valid_t(r, theta) — astronomically large — so each
// cell also records honestly whether its t reaches that threshold.
// ---------------------------------------------------------------------------

// Duality-measure endpoint: either "t^<rational>" or a decimal literal.
inline BigFloat parse_mu_spec(const std::string& spec, const RealLP& lp) {
  if (spec.rfind("t^", 0) == 0)
    return pow_rat(lp.t, parse_rat(spec.substr(2)));
  return BigFloat::from_decimal(spec, lp.precision_bits);
}

struct IterationsCell {
  ReportCell cell;
  Trajectory traj;
};

inline IterationsCell run_iterations_cell(const ExperimentGrid& grid, int r,
                                          const std::string& t_str,
                                          const std::string& config_hash,
                                          const std::string& mu_start = "t^2",
                                          const std::string& mu_end = "1",
                                          long max_iters = 500) {
  const detail::CellSetup cell = detail::make_cell_setup(
      r, t_str, grid.precision_bits);
  const BigFloat mu0 = parse_mu_spec(mu_start, cell.lp);
  const BigFloat mu1 = parse_mu_spec(mu_end, cell.lp);
  require(mu1.sgn() > 0 && mu0 > mu1,
          "run_iterations_cell: need mu_start > mu_end > 0");
  IPMConfig cfg;
  cfg.variant = grid.variant;
  cfg.theta = rat_to_double(grid.theta);
  cfg.theta_inner = cfg.theta / 2;
  cfg.mu_target = mu1;
  cfg.max_iters = max_iters;
  const PDPoint z0 = centered_start(cell.lp, mu0, cfg.theta_inner);
  IterationsCell res;
  res.traj = run_ipm(cell.lp, cfg, z0);
  ReportCell& out = res.cell;
  out.kind = "iterations";
  out.r = r;
  out.t = t_str;
  out.iterations = static_cast<long>(res.traj.p());
  out.iter_lower_bound = 1L << (r - 1);
  out.iter_bound_met = out.iterations >= out.iter_lower_bound;
  out.threshold_met = cell.t_int >= min_valid_t_exact(r, grid.theta);
  out.threshold_digits =
      static_cast<long>(min_valid_t_digits(r, grid.theta));
  out.gamma = static_cast<long>(gamma_count(staircase(r)));
  out.pass = !out.threshold_met || out.iter_bound_met;
  out.config_hash = config_hash;
  {
    std::ostringstream os;
    os << "lw run-ipm --r " << r << " --t " << t_str << " --theta "
       << rat_str(grid.theta) << " --variant "
       << detail::variant_flag(grid.variant) << " --mu-start " << mu_start
       << " --mu-end " << mu_end << " --precision-bits " << cell.bits;
    out.invocation = os.str();
  }
  {
    std::ostringstream os;
    os << "p=" << out.iterations << " vs 2^(r-1)=" << out.iter_lower_bound
       << (out.iter_bound_met ? " (met)" : " (not met)")
       << "; guarantee threshold is a " << out.threshold_digits
       << "-digit t, " << (out.threshold_met ? "met" : "not met")
       << " at this scale";
    out.detail = os.str();
  }
  return res;
}

inline Report experiment_iterations(const ExperimentGrid& grid,
                                    const std::string& invocation = "",
                                    const std::string& mu_start = "t^2",
                                    const std::string& mu_end = "1",
                                    long max_iters = 500) {
  validate_grid(grid);
  Report rep;
  rep.config_echo = grid_echo(grid);
  rep.config_hash = fnv1a64_hex(rep.config_echo);
  rep.invocation = invocation.empty() ? "lw run-ipm" : invocation;
  for (int r : detail::sorted_r(grid.r_values))
    for (const std::string& t_str : detail::sorted_t(grid.t_values))
      rep.cells.push_back(run_iterations_cell(grid, r, t_str, rep.config_hash,
                                              mu_start, mu_end, max_iters)
                              .cell);
  return rep;
}

// Per-phase solver trace: one row per accepted phase, coordinates in
// log_t scale (doubles) with the duality measure kept as a decimal string.
inline std::string emit_ipm_trace_csv(const Trajectory& traj,
                                      const RealLP& lp) {
  require(!traj.iterates.empty(), "emit_ipm_trace_csv: empty trajectory");
  std::vector<CsvRow> rows;
  CsvRow header{"iter", "phase", "alpha", "mu_bar"};
  auto coord_block = [&header](const char* stem, size_t count) {
    for (size_t k = 1; k <= count; ++k)
      header.push_back("logt_" + std::string(stem) + std::to_string(k));
  };
  coord_block("x", lp.n);
  coord_block("w", lp.m);
  coord_block("s", lp.n);
  coord_block("y", lp.m);
  rows.push_back(header);
  auto add_row = [&rows, &lp](long iter, const std::string& phase,
                              double alpha, const PDPoint& z) {
    CsvRow row{std::to_string(iter), phase, double_str(alpha),
               z.mu_bar.to_decimal()};
    for (const BigFloat& c : log_t_coords(z, lp.t))
      row.push_back(double_str(c.to_double()));
    rows.push_back(std::move(row));
  };
  add_row(0, "start", 0.0, traj.iterates.front());
  long iter = 0;
  for (const StepRecord& s : traj.steps) {
    if (s.phase != "corrector") ++iter;  // correctors extend the iteration
    add_row(iter, s.phase, s.alpha, s.z);
  }
  return emit_csv(rows);
}

// Central-path plot data, ascending in lambda: the staircase projection
// (lambda, x_{2r-1}, x_{2r}) in log_t scale plus per-sample diagnostics.
inline std::string emit_cp_plot_csv(const std::vector<CPSample>& samples,
                                    const RealLP& lp) {
  std::vector<CsvRow> rows;
  rows.push_back({"lambda", "logt_x" + std::to_string(lp.n - 1),
                  "logt_x" + std::to_string(lp.n), "mu_bar", "residual"});
  for (auto it = samples.rbegin(); it != samples.rend(); ++it)
    rows.push_back({rat_str(it->lambda),
                    double_str(log_base(it->z.x[lp.n - 2], lp.t).to_double()),
                    double_str(log_base(it->z.x[lp.n - 1], lp.t).to_double()),
                    it->z.mu_bar.to_decimal(), it->residual.to_decimal()});
  return emit_csv(rows);
}

// ---------------------------------------------------------------------------
// Convergence experiment: trace the central path over the lambda window and
// compare every sample's distance to the tropical limit against the budget
// log_t(2N/(1-theta)) + delta_bound(r, t). One cell per sample.
// ---------------------------------------------------------------------------

inline Report experiment_convergence(const ExperimentGrid& grid,
                                     const std::string& invocation = "") {
  validate_grid(grid);
  Report rep;
  rep.config_echo = grid_echo(grid);
  rep.config_hash = fnv1a64_hex(rep.config_echo);
  rep.invocation = invocation.empty() ? "lw convergence" : invocation;
  const std::vector<Rat> ascending = lambda_grid_of(grid);
  std::vector<Rat> descending(ascending.rbegin(), ascending.rend());
  for (int r : detail::sorted_r(grid.r_values)) {
    const long gamma = static_cast<long>(gamma_count(staircase(r)));
    for (const std::string& t_str : detail::sorted_t(grid.t_values)) {
      const detail::CellSetup cell = detail::make_cell_setup(
          r, t_str, grid.precision_bits);
      const BigFloat tol = default_cp_tolerance(cell.bits);
      const std::vector<CPSample> samples =
          trace_central_path(cell.lp, descending, tol);
      const double budget =
          dinf_budget(r, rat_to_double(grid.theta), cell.lp.t);
      const bool guaranteed = delta_guaranteed(r, cell.lp.t);
      for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
        const RatVec trop = trop_path_point(r, it->lambda).full_coords();
        const BFVec logs = log_t_coords(it->z, cell.lp.t);
        double dev = 0.0;
        for (size_t k = 0; k < trop.size(); ++k)
          dev = std::max(dev,
                         std::abs(logs[k].to_double() - rat_to_double(trop[k])));
        ReportCell out;
        out.kind = "convergence";
        out.r = r;
        out.t = t_str;
        out.lambda = rat_str(it->lambda);
        out.gamma = gamma;
        out.max_dinf = dev;
        out.dinf_budget = budget;
        out.bound_guaranteed = guaranteed;
        out.pass = dev <= budget;
        out.config_hash = rep.config_hash;
        {
          std::ostringstream os;
          os << "lw trace-cp --r " << r << " --t " << t_str
             << " --lambda-from " << rat_str(it->lambda) << " --lambda-to "
             << rat_str(it->lambda) << " --samples 1 --precision-bits "
             << cell.bits;
          out.invocation = os.str();
        }
        {
          std::ostringstream os;
          os << "d_inf=" << fmt_g(dev) << " budget=" << fmt_g(budget)
             << " residual=" << fmt_g(it->residual.to_double())
             << (guaranteed ? "; delta bound guaranteed"
                            : "; delta bound heuristic at this t");
          out.detail = os.str();
        }
        rep.cells.push_back(std::move(out));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Curvature experiment. The tropical staircase of LW(r) lives in the last
// coordinate pair (x_{2r-1}, x_{2r}); the traced path is projected there in
// log_t scale and its polygonal curvature measured on the canonical grid
// lambda_k = 4k/2^{r-1} refined eightfold (spacing 2^{-r} on [0, 2]).
// ---------------------------------------------------------------------------

struct CurvatureMeasurement {
  long pieces = 0;     // tropical staircase pieces: 2^{r-1}
  long gamma = 0;      // minimal tropical-segment count
  double total = 0.0;  // measured polygonal curvature, radians
  double bound = 0.0;  // tropical lower bound (2^{r-2}-1) pi/2
  std::vector<Rat> corner_lambdas;    // staircase corners, ascending
  std::vector<double> corner_angles;  // turning within each corner window
};

inline CurvatureMeasurement measure_curvature(const RealLP& lp) {
  const int r = lp.r;
  require(r >= 2, "measure_curvature: instance must have r >= 2");
  require(r <= 10, "measure_curvature: grid would be excessive beyond r = 10");
  const TropPolyline stair = staircase(r);
  CurvatureMeasurement out;
  out.pieces = static_cast<long>(stair.pieces());
  out.gamma = static_cast<long>(gamma_count(stair));
  out.bound = trop_curvature_lower_bound(r, make_curvature_grid(r)).radians();

  const Rat step = pow2(-r);
  const long count = 1L << (r + 1);
  std::vector<Rat> descending;
  descending.reserve(static_cast<size_t>(count) + 1);
  for (long j = count; j >= 0; --j) descending.push_back(Rat(Rat(j) * step));
  const std::vector<CPSample> samples = trace_central_path(lp, descending);

  std::vector<std::vector<double>> pts;  // ascending in lambda
  pts.reserve(samples.size());
  for (auto it = samples.rbegin(); it != samples.rend(); ++it)
    pts.push_back({log_base(it->z.x[2 * r - 2], lp.t).to_double(),
                   log_base(it->z.x[2 * r - 1], lp.t).to_double()});
  const std::vector<double> angles = polygonal_angles(pts);
  for (double a : angles) out.total += a;

  // Interior vertex i+1 of the sampled polygon sits at lambda = (i+1) 2^{-r};
  // each staircase corner claims the half-open window [c - h, c + h) of
  // half-width h = 2^{1-r}, so the windows partition the corner range. The
  // left-closed choice matters: at finite t the smoothed corner is displaced
  // slightly toward smaller lambda, so its turning leaks onto the left
  // boundary vertex, never the right one.
  const Rat half = pow2(1 - r);
  for (size_t c = 1; c + 1 < stair.params.size(); ++c) {
    const Rat& corner = stair.params[c];
    double sum = 0.0;
    for (size_t a = 0; a < angles.size(); ++a) {
      const Rat off = Rat(Rat(Rat(static_cast<long>(a) + 1) * step) - corner);
      if (off >= -half && off < half) sum += angles[a];
    }
    out.corner_lambdas.push_back(corner);
    out.corner_angles.push_back(sum);
  }
  return out;
}

inline Report experiment_curvature(const ExperimentGrid& grid,
                                   const std::string& invocation = "") {
  validate_grid(grid);
  Report rep;
  rep.config_echo = grid_echo(grid);
  rep.config_hash = fnv1a64_hex(rep.config_echo);
  rep.invocation = invocation.empty() ? "lw curvature" : invocation;
  for (int r : detail::sorted_r(grid.r_values)) {
    for (const std::string& t_str : detail::sorted_t(grid.t_values)) {
      const detail::CellSetup cell = detail::make_cell_setup(
          r, t_str, grid.precision_bits);
      const CurvatureMeasurement m = measure_curvature(cell.lp);
      ReportCell out;
      out.kind = "curvature";
      out.r = r;
      out.t = t_str;
      out.gamma = m.gamma;
      out.curvature = m.total;
      out.curvature_bound = m.bound;
      out.corner_angles = m.corner_angles;
      out.pass = m.total + 1e-12 >= 0.9 * m.bound;
      out.config_hash = rep.config_hash;
      {
        std::ostringstream os;
        os << "lw curvature --r " << r << " --t " << t_str
           << " --precision-bits " << cell.bits;
        out.invocation = os.str();
      }
      {
        std::ostringstream os;
        os << "measured " << fmt_g(m.total) << " rad vs tropical bound "
           << fmt_g(m.bound) << " (" << m.pieces << " staircase pieces)";
        out.detail = os.str();
      }
      rep.cells.push_back(std::move(out));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Verification suite: the repository's acceptance gate. Each criterion runs
// in isolation, reports pass/fail with a one-line summary, and never stops
// the suite. The fast level skips every run with t >= 10^12.
// ---------------------------------------------------------------------------

enum class VerifyLevel { Fast, Full };

inline VerifyLevel parse_verify_level(const std::string& s) {
  if (s == "fast") return VerifyLevel::Fast;
  if (s == "full") return VerifyLevel::Full;
  throw ConfigError("verify level must be 'fast' or 'full', got: " + s);
}

struct CriterionResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

template <class Body>
inline void run_criterion(std::vector<CriterionResult>& results,
                          const std::string& id, const std::string& name,
                          Body&& body) {
  CriterionResult res{id, name, false, "", 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    res.passed = body(res.detail);
  } catch (const std::exception& e) {
    res.passed = false;
    res.detail = std::string("exception: ") + e.what();
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  results.push_back(std::move(res));
}

inline RealLP real_lw(int r, const std::string& t_str,
                      mpfr_prec_t bits_override = 0) {
  const BigFloat probe = BigFloat::from_decimal(t_str, 64);
  const mpfr_prec_t bits =
      bits_override ? bits_override : default_precision_bits(r, probe);
  return evaluate_lp(build_lw({r}), BigFloat::from_decimal(t_str, bits));
}

inline std::vector<bool> moving_support(const TropPoint& a,
                                        const TropPoint& b) {
  std::vector<bool> s(a.size(), false);
  for (size_t k = 0; k < a.size(); ++k)
    s[k] = a[k].finite && b[k].finite && a[k].v != b[k].v;
  return s;
}

inline bool strict_subset(const std::vector<bool>& a,
                          const std::vector<bool>& b) {
  bool proper = false;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k] && !b[k]) return false;
    if (!a[k] && b[k]) proper = true;
  }
  return proper;
}

}  // namespace detail

inline std::vector<CriterionResult> verify_suite(
    VerifyLevel level, const std::string& golden_min_valid_t = "",
    unsigned long seed = 0) {
  std::vector<CriterionResult> results;
  const double pi_half = std::numbers::pi / 2;

  detail::run_criterion(
      results, "C1", "closed-form table of the recursion (r = 2..6, exact)",
      [](std::string& detail) {
        long checks = 0;
        for (int r = 2; r <= 6; ++r)
          for (int j = 1; j < r; ++j) {
            const long kmax = j == 1 ? 0 : (1L << (j - 1)) - 2;
            for (long k = 0; k <= kmax; k += 2)
              for (int ci = 0; ci < 5; ++ci) {
                const Rat lambda = Rat(Rat(4 * k + 2 * ci) * pow2(-j));
                if (lambda > 2) continue;
                const RatVec x = trop_path_x_coords(r, lambda);
                const RatVec w = trop_path_w_coords(r, x);
                const long ox_odd[5] = {2 * k, 2 * k + 2, 2 * k + 2,
                                        2 * k + 4, 2 * k + 4};
                const long ox_even[5] = {2 * k + 1, 2 * k + 1, 2 * k + 3,
                                         2 * k + 3, 2 * k + 5};
                const long ow_a[5] = {2 * k, 2 * k + 2, 2 * k + 4, 2 * k + 4,
                                      2 * k + 4};
                const long ow_b[5] = {2 * k + 2, 2 * k + 2, 2 * k + 2,
                                      2 * k + 4, 2 * k + 6};
                auto expected = [&](long off) {
                  return Rat(Rat(j) + Rat(off) * pow2(-j));
                };
                const bool ok = x[2 * j] == expected(ox_odd[ci]) &&
                                x[2 * j + 1] == expected(ox_even[ci]) &&
                                w[3 * j - 1] == expected(ow_a[ci]) &&
                                w[3 * j] == expected(ow_b[ci]) &&
                                w[3 * j + 1] == expected(ox_even[ci]);
                if (!ok) {
                  detail = "mismatch at r=" + std::to_string(r) +
                           " j=" + std::to_string(j) +
                           " lambda=" + rat_str(lambda);
                  return false;
                }
                checks += 5;
              }
          }
        detail = std::to_string(checks) + " table entries matched exactly";
        return true;
      });

  detail::run_criterion(
      results, "C2", "staircase pieces and segment count (r = 2..8, exact)",
      [](std::string& detail) {
        std::ostringstream os;
        for (int r = 2; r <= 8; ++r) {
          const TropPolyline stair = staircase(r);
          const long want = 1L << (r - 1);
          if (static_cast<long>(stair.pieces()) != want) {
            detail = "r=" + std::to_string(r) + ": " +
                     std::to_string(stair.pieces()) + " pieces, expected " +
                     std::to_string(want);
            return false;
          }
          for (size_t p = 0; p < stair.dirs.size(); ++p) {
            const auto& dir = stair.dirs[p];
            if (dir.size() != 2 || dir[0] + dir[1] != 1) {
              detail = "r=" + std::to_string(r) + ": piece " +
                       std::to_string(p) + " is not axis-parallel";
              return false;
            }
            if (p > 0 && dir == stair.dirs[p - 1]) {
              detail = "r=" + std::to_string(r) + ": pieces " +
                       std::to_string(p - 1) + "," + std::to_string(p) +
                       " do not alternate";
              return false;
            }
          }
          const size_t gamma = gamma_count(stair);
          if (gamma < static_cast<size_t>(want)) {
            detail = "r=" + std::to_string(r) +
                     ": gamma=" + std::to_string(gamma) + " < " +
                     std::to_string(want);
            return false;
          }
          os << (r > 2 ? " " : "") << "r" << r << ":" << want << "/"
             << gamma;
        }
        detail = "pieces/gamma " + os.str();
        return true;
      });

  detail::run_criterion(
      results, "C3", "tropical curvature count (r = 3..8, exact)",
      [](std::string& detail) {
        for (int r = 3; r <= 8; ++r) {
          const TropCurvature tc =
              trop_curvature_lower_bound(r, make_curvature_grid(r));
          const long want = (1L << (r - 2)) - 1;
          if (tc.quarter_turns != want) {
            detail = "r=" + std::to_string(r) + ": " + tc.exact_str() +
                     ", expected " + std::to_string(want) + "*pi/2";
            return false;
          }
        }
        detail = "quarter turns equal 2^(r-2)-1 for every r";
        return true;
      });

  detail::run_criterion(
      results, "C4", "tropical barycenter dominance (r = 2..3, randomized)",
      [seed](std::string& detail) {
        long tested = 0;
        for (int r = 2; r <= 3; ++r) {
          const SlackLP lp = build_lw({r});
          std::mt19937_64 rng(0xACCE5501ULL + seed +
                              static_cast<unsigned long>(r));
          for (int lam_trial = 0; lam_trial < 20; ++lam_trial) {
            const long num = static_cast<long>(rng() % 73) - 24;  // [-24, 48]
            const Rat lambda = make_rat(num, 16);                 // [-3/2, 3]
            const TropCPPoint path = trop_path_point(r, lambda);
            if (!verify_membership(lp, path).ok) {
              detail = "recursion point fails membership at r=" +
                       std::to_string(r) + " lambda=" + rat_str(lambda);
              return false;
            }
            const TropPoint path_full = path.full();
            std::vector<TropPoint> cloud{path_full};
            for (int trial = 0; trial < 500; ++trial) {
              const TropCPPoint z = sample_feasible(lp, lambda, rng);
              if (!(tgap(z) <= lambda)) {
                detail = "sampled point exceeds the duality-gap cap at r=" +
                         std::to_string(r) + " lambda=" + rat_str(lambda);
                return false;
              }
              const TropPoint zf = z.full();
              if (!trop_leq(zf, path_full)) {
                detail = "sampled point not dominated at r=" +
                         std::to_string(r) + " lambda=" + rat_str(lambda);
                return false;
              }
              cloud.push_back(zf);
              ++tested;
            }
            if (!(pointwise_barycenter(cloud) == path_full)) {
              detail = "barycenter drifts from the recursion point at r=" +
                       std::to_string(r) + " lambda=" + rat_str(lambda);
              return false;
            }
          }
        }
        detail = std::to_string(tested) + " sampled points dominated exactly";
        return true;
      });

  detail::run_criterion(
      results, "C5", "central-path convergence bound (r = 2, 1024-bit)",
      [level](std::string& detail) {
        const mpfr_prec_t bits = 1024;
        const std::vector<Rat> grid{Rat(2), make_rat(3, 2), Rat(1),
                                    make_rat(1, 2), Rat(0)};
        std::vector<std::string> ts{"10000", "100000000"};
        if (level == VerifyLevel::Full) ts.push_back("10000000000000000");
        std::ostringstream os;
        double prev = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < ts.size(); ++i) {
          const RealLP lp = detail::real_lw(2, ts[i], bits);
          const std::vector<CPSample> samples =
              trace_central_path(lp, grid, default_cp_tolerance(bits));
          double maxdev = 0.0;
          for (const CPSample& s : samples) {
            const RatVec trop = trop_path_point(2, s.lambda).full_coords();
            const BFVec logs = log_t_coords(s.z, lp.t);
            for (size_t k = 0; k < trop.size(); ++k)
              maxdev = std::max(
                  maxdev,
                  std::abs(logs[k].to_double() - rat_to_double(trop[k])));
          }
          const double budget = dinf_budget(2, 0.5, lp.t);
          const bool last = i + 1 == ts.size() && level == VerifyLevel::Full;
          const bool within = last ? maxdev * 1.1 <= budget : maxdev <= budget;
          os << (i ? "; " : "") << "t(10^" << ts[i].size() - 1
             << "): d=" << fmt_g(maxdev) << " budget=" << fmt_g(budget);
          if (!within) {
            detail = os.str() + " — bound violated";
            return false;
          }
          if (!(maxdev < prev)) {
            detail = os.str() + " — deviation not strictly decreasing";
            return false;
          }
          prev = maxdev;
        }
        if (level == VerifyLevel::Fast) os << "; t=10^16 skipped (fast)";
        detail = os.str();
        return true;
      });

  detail::run_criterion(
      results, "C6", "iteration-count trend (predictor-corrector)",
      [level](std::string& detail) {
        auto iterations_for = [](int r, const std::string& t_str) -> long {
          const RealLP lp = detail::real_lw(r, t_str);
          IPMConfig cfg;
          cfg.variant = IPMVariant::PredictorCorrector;
          cfg.theta = 0.5;
          cfg.theta_inner = 0.25;
          cfg.mu_target = BigFloat::from_long(1, lp.precision_bits);
          const PDPoint z0 =
              centered_start(lp, pow_rat(lp.t, Rat(2)), cfg.theta_inner);
          return static_cast<long>(run_ipm(lp, cfg, z0).p());
        };
        std::ostringstream os;
        const long p2_8 = iterations_for(2, "100000000");
        os << "r=2 t=10^8: p=" << p2_8;
        if (p2_8 < 2) {
          detail = os.str() + " < 2";
          return false;
        }
        if (level == VerifyLevel::Full) {
          const long p2 = iterations_for(2, "1000000000000");
          const long p3 = iterations_for(3, "1000000000000");
          const long p4 = iterations_for(4, "1000000000000");
          os << "; t=10^12: p(r=2,3,4)=" << p2 << "," << p3 << "," << p4;
          if (p3 < 4) {
            detail = os.str() + " — r=3 below 4";
            return false;
          }
          if (!(p2 <= p3 && p3 <= p4)) {
            detail = os.str() + " — not nondecreasing in r";
            return false;
          }
        } else {
          os << "; t=10^12 cells skipped (fast)";
        }
        detail = os.str();
        return true;
      });

  detail::run_criterion(
      results, "C7", "classical total curvature of the traced path",
      [level, pi_half](std::string& detail) {
        const RealLP lp3 = detail::real_lw(3, "100000000");
        const CurvatureMeasurement m3 = measure_curvature(lp3);
        double at_one = std::numeric_limits<double>::quiet_NaN();
        for (size_t c = 0; c < m3.corner_lambdas.size(); ++c)
          if (m3.corner_lambdas[c] == 1) at_one = m3.corner_angles[c];
        std::ostringstream os;
        os << "r=3 t=10^8: total=" << fmt_g(m3.total) << " rad (bound "
           << fmt_g(0.9 * m3.bound) << "), corner(1)=" << fmt_g(at_one);
        if (!(m3.total >= 0.9 * m3.bound)) {
          detail = os.str() + " — total below 0.9x bound";
          return false;
        }
        if (!(std::abs(at_one - pi_half) <= 0.15)) {
          detail = os.str() + " — corner angle off pi/2 by more than 0.15";
          return false;
        }
        if (level == VerifyLevel::Full) {
          const RealLP lp4 = detail::real_lw(4, "1000000000000");
          const CurvatureMeasurement m4 = measure_curvature(lp4);
          os << "; r=4 t=10^12: total=" << fmt_g(m4.total) << " rad (bound "
             << fmt_g(0.9 * m4.bound) << ")";
          if (!(m4.total >= 0.9 * m4.bound)) {
            detail = os.str() + " — total below 0.9x bound";
            return false;
          }
        } else {
          os << "; r=4 (t=10^12) skipped (fast)";
        }
        detail = os.str();
        return true;
      });

  detail::run_criterion(
      results, "C8", "interior-point structural invariants",
      [](std::string& detail) {
        const RealLP lp = detail::real_lw(2, "1000000");
        const mpfr_prec_t bits = lp.precision_bits;
        const double cap = std::ldexp(1.0, 32 - static_cast<int>(bits));
        const PDPoint z = tropical_warm_start(lp, make_rat(9, 4));
        double worst_affine = 0.0, worst_orth = 0.0;
        for (double frac : {0.0, 0.5, 1.0}) {
          const BigFloat goal = BigFloat::from_double(frac, bits) * z.mu_bar;
          const NewtonDirection d = newton_direction(z, goal, lp);
          const BigFloat cross = dot(d.dx, d.ds) + dot(d.dw, d.dy);
          const BigFloat scale =
              z.mu_bar * BigFloat::from_long(static_cast<long>(z.N()), bits);
          worst_orth =
              std::max(worst_orth, (abs(cross) / scale).to_double());
          for (double alpha : {0.125, 0.5, 0.875}) {
            const auto zn =
                detail::advance(z, d, BigFloat::from_double(alpha, bits));
            if (!zn) {
              detail = "interior step left the positive orthant unexpectedly";
              return false;
            }
            const BigFloat predicted =
                z.mu_bar +
                BigFloat::from_double(alpha, bits) * (goal - z.mu_bar);
            worst_affine = std::max(
                worst_affine,
                (abs(zn->mu_bar - predicted) / z.mu_bar).to_double());
          }
        }
        std::ostringstream os;
        os << "affinity err=" << fmt_g(worst_affine)
           << ", orthogonality err=" << fmt_g(worst_orth) << " (cap "
           << fmt_g(cap) << ")";
        if (worst_affine > cap || worst_orth > cap) {
          detail = os.str() + " — exceeded";
          return false;
        }
        // Interior segment membership is asserted inside every accepted
        // step (16 interior points per phase) when check_segments is on.
        long phases = 0;
        for (int r : {2, 3}) {
          const RealLP lpr = detail::real_lw(r, "1000000");
          IPMConfig cfg;
          cfg.check_segments = true;
          cfg.mu_target = BigFloat::from_long(1, lpr.precision_bits);
          const PDPoint z0 =
              centered_start(lpr, pow_rat(lpr.t, Rat(2)), cfg.theta_inner);
          phases += static_cast<long>(run_ipm(lpr, cfg, z0).steps.size());
        }
        os << "; " << phases << " phases segment-checked";
        // Trace residuals stay below tolerance, feasibility stays closed.
        const BigFloat tol = default_cp_tolerance(bits);
        const BigFloat feas_cap = detail::pow2_bf(24 - static_cast<long>(bits));
        const std::vector<CPSample> samples = trace_central_path(
            lp, {Rat(2), make_rat(3, 2), Rat(1), make_rat(1, 2), Rat(0)}, tol);
        for (const CPSample& s : samples) {
          if (s.residual > tol || s.primal_residual > feas_cap ||
              s.dual_residual > feas_cap) {
            detail = os.str() + "; trace residual above tolerance at lambda=" +
                     rat_str(s.lambda);
            return false;
          }
        }
        os << "; " << samples.size() << " trace samples within tolerance";
        detail = os.str();
        return true;
      });

  detail::run_criterion(
      results, "C9", "valuation and metric lemmas (randomized)",
      [seed](std::string& detail) {
        std::mt19937_64 rng(0x5E915EEDULL + seed);
        auto rand_rat = [&rng](long lo, long hi) {
          std::uniform_int_distribution<long> num(lo, hi);
          std::uniform_int_distribution<long> den_pow(0, 3);
          return make_rat(num(rng), 1L << den_pow(rng));
        };
        auto rand_series = [&](bool positive) {
          std::uniform_int_distribution<int> nterms(0, 4);
          std::vector<PuiseuxTerm> ts;
          const int n = nterms(rng);
          for (int i = 0; i < n; ++i) {
            const Rat c = rand_rat(-9, 9);
            if (c == 0) continue;
            ts.push_back({c, rand_rat(-8, 8)});
          }
          PuiseuxSeries s(std::move(ts));
          if (positive && s.sign() < 0) s = -s;
          if (positive && s.is_zero()) s = PuiseuxSeries::constant(Rat(1));
          return s;
        };
        // Valuation is a homomorphism onto the max-plus semifield.
        for (int it = 0; it < 1000; ++it) {
          const PuiseuxSeries f = rand_series(false), h = rand_series(false);
          if ((f * h).val() != trop_mul(f.val(), h.val())) {
            detail = "val(f*g) != val(f)+val(g)";
            return false;
          }
          if (trop_add(f.val(), h.val()) < (f + h).val()) {
            detail = "val(f+g) exceeds max(val f, val g)";
            return false;
          }
          const PuiseuxSeries fp = rand_series(true), hp = rand_series(true);
          if ((fp + hp).val() != trop_add(fp.val(), hp.val())) {
            detail = "positive-series val(f+g) != max(val f, val g)";
            return false;
          }
        }
        // Determinant log bracket on unit monomial matrices.
        const mpfr_prec_t prec = 320;
        int det_tested = 0;
        std::uniform_int_distribution<int> zero_coin(0, 4), sign_coin(0, 1);
        for (int it = 0; it < 600 && det_tested < 100; ++it) {
          const size_t d = 2 + static_cast<size_t>(it % 4);
          SeriesMatrix m(d, d);
          for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
              if (zero_coin(rng) == 0) continue;
              m(i, j) = PuiseuxSeries::monomial(Rat(sign_coin(rng) ? 1 : -1),
                                                rand_rat(-8, 8));
            }
          if (det(m).is_zero()) continue;
          const ExtReal<Rat> gap = eta(m);
          double t = 16.0;
          if (!gap.infinite) {
            double log_fact = 0.0;
            for (size_t i = 2; i <= d; ++i)
              log_fact += std::log(static_cast<double>(i));
            t = std::max(t, 2 * std::exp(log_fact / gap.v.get_d()));
          }
          if (t > 1e12) continue;
          const DetLogBounds bounds = det_log_bounds(m, t);
          if (!bounds.lower_guaranteed) continue;
          Matrix<BigFloat> num(d, d, BigFloat(prec));
          const BigFloat tb = BigFloat::from_double(t, prec);
          for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) num(i, j) = m(i, j).evaluate(tb);
          const BigFloat det_num =
              det_laplace(num, BigFloat::from_long(1, prec));
          if (det_num.is_zero()) {
            detail = "numeric determinant vanished against a nonzero symbol";
            return false;
          }
          const double observed =
              std::log(std::abs(det_num.to_double())) / std::log(t);
          if (!(bounds.lower <= observed + 1e-9 &&
                observed <= bounds.upper + 1e-9)) {
            detail = "determinant bracket missed: " + fmt_g(bounds.lower) +
                     " / " + fmt_g(observed) + " / " + fmt_g(bounds.upper);
            return false;
          }
          ++det_tested;
        }
        if (det_tested < 100) {
          detail = "only " + std::to_string(det_tested) +
                   " determinant brackets admitted";
          return false;
        }
        // Nested direction chain of comparable tropical segments.
        for (int it = 0; it < 1000; ++it) {
          const size_t d = 1 + static_cast<size_t>(it % 8);
          TropPoint u;
          for (size_t k = 0; k < d; ++k) u.emplace_back(rand_rat(-20, 20));
          TropPoint v = u;
          for (size_t k = 0; k < d; ++k)
            v[k] = TropRat(Rat(v[k].v + rand_rat(0, 6)));
          const PolygonalPath path = trop_segment(u, v);
          if (path.pieces() > d || !(path.breakpoints.front() == u) ||
              !(path.breakpoints.back() == v)) {
            detail = "tropical segment shape violated";
            return false;
          }
          for (size_t i = 0; i + 1 < path.pieces(); ++i) {
            const auto ki = detail::moving_support(path.breakpoints[i],
                                                   path.breakpoints[i + 1]);
            const auto kj = detail::moving_support(path.breakpoints[i + 1],
                                                   path.breakpoints[i + 2]);
            if (!detail::strict_subset(ki, kj)) {
              detail = "direction supports not strictly nested";
              return false;
            }
          }
          for (const TropPoint& bp : path.breakpoints)
            if (!trop_leq(u, bp) || !trop_leq(bp, v)) {
              detail = "segment breakpoint escapes the order interval";
              return false;
            }
        }
        // Log-image of a classical segment hugs the tropical segment.
        std::uniform_real_distribution<double> coord(-3.0, 3.0);
        for (int it = 0; it < 100; ++it) {
          const size_t d = 2 + static_cast<size_t>(it % 5);
          std::vector<double> u(d), v(d);
          for (size_t k = 0; k < d; ++k) {
            u[k] = coord(rng);
            v[k] = coord(rng);
          }
          for (double t : {100.0, 1e6}) {
            const TropPointD ut = trop_point(u), vt = trop_point(v);
            const PolygonalPathD tseg = trop_segment(ut, vt);
            std::vector<TropPointD> samples;
            for (int i = 0; i <= 32; ++i) {
              const double beta = i / 32.0;
              TropPointD p;
              for (size_t k = 0; k < d; ++k)
                p.emplace_back(
                    std::log((1 - beta) * std::pow(t, u[k]) +
                             beta * std::pow(t, v[k])) /
                    std::log(t));
              samples.push_back(std::move(p));
            }
            const ExtReal<double> dist =
                directed_hausdorff(samples, tseg, TropMetric::dInf);
            if (dist.infinite ||
                dist.v > std::log(2.0) / std::log(t) + 1e-9) {
              detail = "log-image strays beyond log_t 2 at t=" + fmt_g(t);
              return false;
            }
          }
        }
        detail =
            "1000 valuation pairs, 100 determinant brackets, 1000 nested "
            "chains, 200 log-image segments";
        return true;
      });

  detail::run_criterion(
      results, "C10", "threshold formulas against the committed oracle",
      [&golden_min_valid_t](std::string& detail) {
        mpz_class f19 = factorial_z(19);
        mpz_class pow24;
        mpz_pow_ui(pow24.get_mpz_t(), f19.get_mpz_t(), 24);
        const mpz_class inner = 8 * pow24;
        const mpz_class expect = inner * inner;
        std::ostringstream os;
        const Rat half = make_rat(1, 2);
        if (min_valid_t_exact(2, half) != expect) {
          detail = "min_valid_t(2,1/2) differs from (8*(19!)^24)^2";
          return false;
        }
        os << "min_valid_t(2,1/2): " << min_valid_t_digits(2, half)
           << " digits, matches (8*(19!)^24)^2";
        if (!golden_min_valid_t.empty()) {
          const Json g = Json::parse(read_text_file(golden_min_valid_t));
          if (min_valid_t(2, half) !=
              g.at("min_valid_t").at("decimal").get<std::string>()) {
            detail = "decimal differs from the committed golden value";
            return false;
          }
          if (static_cast<long>(min_valid_t_digits(2, half)) !=
              g.at("min_valid_t").at("digits").get<long>()) {
            detail = "digit count differs from the committed golden value";
            return false;
          }
          for (const auto& [key, val] : g.at("epsilon0").items())
            if (rat_str(epsilon0(std::stoi(key))) !=
                val.get<std::string>()) {
              detail = "epsilon0(" + key + ") differs from the golden value";
              return false;
            }
          os << "; golden file matched";
        } else {
          os << "; golden file not supplied (closed form only)";
        }
        for (int r = 2; r <= 8; ++r) {
          if (epsilon0(r) != Rat(Rat(1) / Rat(Rat(3) * pow2(r - 1)))) {
            detail = "epsilon0(" + std::to_string(r) + ") != 1/(3*2^(r-1))";
            return false;
          }
        }
        detail = os.str();
        return true;
      });

  return results;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.passed) return false;
  return true;
}

// JUnit-style XML so CI dashboards can ingest the verification run directly.
inline std::string junit_xml(const std::vector<CriterionResult>& results,
                             const std::string& suite_name = "verify") {
  auto escape = [](const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
      }
    }
    return out;
  };
  size_t failures = 0;
  double total = 0.0;
  for (const CriterionResult& r : results) {
    if (!r.passed) ++failures;
    total += r.seconds;
  }
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuite name=\"" << escape(suite_name) << "\" tests=\""
     << results.size() << "\" failures=\"" << failures << "\" errors=\"0\" "
     << "time=\"" << fmt_g(total, 6) << "\">\n";
  for (const CriterionResult& r : results) {
    os << "  <testcase classname=\"" << escape(suite_name) << "\" name=\""
       << escape(r.id + " " + r.name) << "\" time=\"" << fmt_g(r.seconds, 6)
       << "\"";
    if (r.passed) {
      os << "/>\n";
    } else {
      os << ">\n    <failure message=\"" << escape(r.detail)
         << "\"/>\n  </testcase>\n";
    }
  }
  os << "</testsuite>\n";
  return os.str();
}

}  // namespace lw
