// lw — command-line front end: instance generation, tropical reference data,
// solver runs, central-path traces, experiment reports, and the verification
// suite. Exit codes: 0 ok, 1 assertion failure, 2 config error, 3 numeric
// failure.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lw/experiments.hpp"

namespace {

using namespace lw;

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    const std::string a = argv[i];
    out += a.find(' ') == std::string::npos ? a : "'" + a + "'";
  }
  return out;
}

void emit_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text_file(out_path, text);
  }
}

std::string resolve_format(const std::string& flag, const char* natural) {
  const std::string fmt = flag.empty() ? natural : flag;
  require(fmt == "csv" || fmt == "json", "format must be csv or json");
  return fmt;
}

// Small tabular outputs: CSV with a header row, or a JSON array of objects
// with every value kept as a string (exact rationals and decimals survive).
std::string emit_table(const CsvRow& header, const std::vector<CsvRow>& rows,
                       const std::string& fmt) {
  if (fmt == "csv") {
    std::vector<CsvRow> all{header};
    all.insert(all.end(), rows.begin(), rows.end());
    return emit_csv(all);
  }
  Json arr = Json::array();
  for (const CsvRow& row : rows) {
    require(row.size() == header.size(), "emit_table: ragged row");
    Json obj;
    for (size_t k = 0; k < header.size(); ++k) obj[header[k]] = row[k];
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string emit_report(const Report& rep, const std::string& fmt) {
  return fmt == "csv" ? emit_report_csv(rep) : emit_report_json(rep);
}

RealLP make_lp(int r, const std::string& t_str, mpfr_prec_t bits_override) {
  const BigFloat probe = BigFloat::from_decimal(t_str, 64);
  const mpfr_prec_t bits =
      bits_override ? bits_override : default_precision_bits(r, probe);
  return evaluate_lp(build_lw({r}), BigFloat::from_decimal(t_str, bits));
}

IPMVariant parse_variant(const std::string& s) {
  if (s == "pc") return IPMVariant::PredictorCorrector;
  if (s == "long-step") return IPMVariant::LongStep;
  throw ConfigError("variant must be 'pc' or 'long-step', got: " + s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lw — tropical central-path laboratory for the LW(r,t) family"};
  app.require_subcommand(1);

  std::string out, format;
  unsigned long seed = 0;
  long precision_bits = 0;
  app.add_option("--out", out, "write output to this path (default: stdout)");
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed offset for randomized property tests");
  app.add_option("--precision-bits", precision_bits,
                 "working precision (0 = per-instance default)")
      ->check(CLI::Range(0L, 65536L));

  const std::string invocation = join_args(argc, argv);
  int exit_code = 0;

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "emit an LW(r) instance as JSON");
  gen->fallthrough();
  int gen_r = 2;
  gen->add_option("--r", gen_r, "instance size")->required();
  gen->callback([&] {
    require(format.empty() || format == "json",
            "gen: instances serialize as JSON only");
    emit_output(out, instance_to_json(build_lw({gen_r})).dump(2) + "\n");
  });

  // ---- trop-path ----------------------------------------------------------
  auto* tp = app.add_subcommand(
      "trop-path", "exact tropical central path of LW(r)");
  tp->fallthrough();
  int tp_r = 2;
  std::string tp_lambda, tp_from = "0", tp_to = "2";
  long tp_samples = 0;
  tp->add_option("--r", tp_r, "instance size")->required();
  auto* tp_lam_opt = tp->add_option(
      "--lambda", tp_lambda, "single parameter: emit every coordinate");
  tp->add_option("--lambda-from", tp_from, "range start (staircase table)");
  tp->add_option("--lambda-to", tp_to, "range end");
  tp->add_option("--samples", tp_samples,
                 "number of range samples (0 = corner-resolving default)");
  tp->callback([&] {
    const std::string fmt = resolve_format(format, "csv");
    if (!tp_lambda.empty()) {
      (void)tp_lam_opt;
      const Rat lambda = parse_rat(tp_lambda);
      const RatVec x = trop_path_x_coords(tp_r, lambda);
      const RatVec w = trop_path_w_coords(tp_r, x);
      CsvRow header{"lambda"};
      CsvRow row{rat_str(lambda)};
      for (size_t k = 0; k < x.size(); ++k) {
        header.push_back("x" + std::to_string(k + 1));
        row.push_back(rat_str(x[k]));
      }
      for (size_t k = 0; k < w.size(); ++k) {
        header.push_back("w" + std::to_string(k + 1));
        row.push_back(rat_str(w[k]));
      }
      emit_output(out, emit_table(header, {row}, fmt));
      return;
    }
    const Rat lo = parse_rat(tp_from), hi = parse_rat(tp_to);
    require(hi > lo, "trop-path: need lambda-from < lambda-to");
    const long samples =
        tp_samples ? tp_samples : (1L << (tp_r + 1)) + 1;
    require(samples >= 2, "trop-path: need at least two samples");
    const size_t n = static_cast<size_t>(2 * tp_r);
    CsvRow header{"lambda", "x" + std::to_string(n - 1),
                  "x" + std::to_string(n)};
    std::vector<CsvRow> rows;
    for (long k = 0; k < samples; ++k) {
      const Rat lambda =
          Rat(lo + Rat(Rat(Rat(k) * Rat(hi - lo)) / Rat(samples - 1)));
      const RatVec x = trop_path_x_coords(tp_r, lambda);
      rows.push_back(
          {rat_str(lambda), rat_str(x[n - 2]), rat_str(x[n - 1])});
    }
    emit_output(out, emit_table(header, rows, fmt));
  });

  // ---- gamma --------------------------------------------------------------
  auto* ga = app.add_subcommand(
      "gamma", "staircase pieces and minimal tropical-segment count");
  ga->fallthrough();
  std::vector<int> ga_r;
  ga->add_option("--r", ga_r, "instance sizes")->required();
  ga->callback([&] {
    const std::string fmt = resolve_format(format, "csv");
    std::vector<CsvRow> rows;
    for (int r : ga_r) {
      const TropPolyline stair = staircase(r);
      const size_t gamma = gamma_count(stair);
      const long bound = 1L << (r - 1);
      rows.push_back({std::to_string(r), std::to_string(stair.pieces()),
                      std::to_string(gamma), std::to_string(bound),
                      gamma >= static_cast<size_t>(bound) ? "1" : "0"});
    }
    emit_output(out, emit_table({"r", "staircase_pieces", "gamma",
                                 "lower_bound", "bound_met"},
                                rows, fmt));
  });

  // ---- trop-curvature -------------------------------------------------------
  auto* tc = app.add_subcommand(
      "trop-curvature", "tropical curvature lower bound on the canonical grid");
  tc->fallthrough();
  std::vector<int> tc_r;
  tc->add_option("--r", tc_r, "instance sizes")->required();
  tc->callback([&] {
    const std::string fmt = resolve_format(format, "csv");
    std::vector<CsvRow> rows;
    for (int r : tc_r) {
      const std::vector<Rat> grid = make_curvature_grid(r);
      const TropCurvature bound = trop_curvature_lower_bound(r, grid);
      rows.push_back({std::to_string(r), std::to_string(grid.size()),
                      std::to_string(bound.quarter_turns), bound.exact_str(),
                      double_str(bound.radians())});
    }
    emit_output(out, emit_table({"r", "grid_points", "quarter_turns", "exact",
                                 "radians"},
                                rows, fmt));
  });

  // ---- run-ipm --------------------------------------------------------------
  auto* ri = app.add_subcommand(
      "run-ipm", "run the solver over an (r, t) grid; report iteration counts");
  ri->fallthrough();
  std::vector<int> ri_r;
  std::vector<std::string> ri_t;
  std::string ri_theta = "1/2", ri_variant = "pc";
  std::string ri_mu_start = "t^2", ri_mu_end = "1", ri_trace;
  long ri_max_iters = 500;
  ri->add_option("--r", ri_r, "instance sizes")->required();
  ri->add_option("--t", ri_t, "scale parameters (decimal integers)")
      ->required();
  ri->add_option("--theta", ri_theta, "neighborhood radius (rational)");
  ri->add_option("--variant", ri_variant, "pc or long-step")
      ->check(CLI::IsMember({"pc", "long-step"}));
  ri->add_option("--mu-start", ri_mu_start,
                 "initial duality measure: t^<rational> or decimal");
  ri->add_option("--mu-end", ri_mu_end, "target duality measure");
  ri->add_option("--max-iters", ri_max_iters, "iteration cap");
  ri->add_option("--trace", ri_trace,
                 "write a per-phase trace CSV (single cell only)");
  ri->callback([&] {
    const std::string fmt = resolve_format(format, "json");
    ExperimentGrid grid;
    grid.r_values = ri_r;
    grid.t_values = ri_t;
    grid.theta = parse_rat(ri_theta);
    grid.variant = parse_variant(ri_variant);
    grid.precision_bits = static_cast<mpfr_prec_t>(precision_bits);
    grid.seed = seed;
    validate_grid(grid);
    if (!ri_trace.empty())
      require(ri_r.size() == 1 && ri_t.size() == 1,
              "run-ipm: --trace needs exactly one (r, t) cell");
    Report rep;
    rep.config_echo = grid_echo(grid);
    rep.config_hash = fnv1a64_hex(rep.config_echo);
    rep.invocation = invocation;
    for (int r : grid.r_values)
      for (const std::string& t_str : grid.t_values) {
        IterationsCell res =
            run_iterations_cell(grid, r, t_str, rep.config_hash, ri_mu_start,
                                ri_mu_end, ri_max_iters);
        if (!ri_trace.empty()) {
          const RealLP lp = make_lp(r, t_str, grid.precision_bits);
          write_text_file(ri_trace, emit_ipm_trace_csv(res.traj, lp));
        }
        rep.cells.push_back(std::move(res.cell));
      }
    emit_output(out, emit_report(rep, fmt));
  });

  // ---- trace-cp ---------------------------------------------------------------
  auto* tr = app.add_subcommand(
      "trace-cp", "trace the central path; emit staircase plot data");
  tr->fallthrough();
  int tr_r = 2;
  std::string tr_t, tr_from = "0", tr_to = "2", tr_tol;
  long tr_samples = 33;
  tr->add_option("--r", tr_r, "instance size")->required();
  tr->add_option("--t", tr_t, "scale parameter")->required();
  tr->add_option("--lambda-from", tr_from, "range start");
  tr->add_option("--lambda-to", tr_to, "range end");
  tr->add_option("--samples", tr_samples, "number of samples");
  tr->add_option("--tol", tr_tol,
                 "residual tolerance (decimal; default scales with precision)");
  tr->callback([&] {
    const std::string fmt = resolve_format(format, "csv");
    const RealLP lp =
        make_lp(tr_r, tr_t, static_cast<mpfr_prec_t>(precision_bits));
    const Rat lo = parse_rat(tr_from), hi = parse_rat(tr_to);
    require(tr_samples >= 1, "trace-cp: need at least one sample");
    if (tr_samples == 1)
      require(lo == hi, "trace-cp: one sample needs lambda-from == lambda-to");
    else
      require(hi > lo, "trace-cp: need lambda-from < lambda-to");
    std::vector<Rat> grid;  // strictly decreasing for the tracer
    for (long k = tr_samples - 1; k >= 0; --k)
      grid.push_back(
          tr_samples == 1
              ? lo
              : Rat(lo + Rat(Rat(Rat(k) * Rat(hi - lo)) / Rat(tr_samples - 1))));
    const BigFloat tol = tr_tol.empty()
                             ? default_cp_tolerance(lp.precision_bits)
                             : BigFloat::from_decimal(tr_tol, 64);
    const std::vector<CPSample> samples = trace_central_path(lp, grid, tol);
    if (fmt == "csv") {
      emit_output(out, emit_cp_plot_csv(samples, lp));
      return;
    }
    Json arr = Json::array();
    for (auto it = samples.rbegin(); it != samples.rend(); ++it)
      arr.push_back(Json{
          {"lambda", rat_str(it->lambda)},
          {"logt_x" + std::to_string(lp.n - 1),
           log_base(it->z.x[lp.n - 2], lp.t).to_double()},
          {"logt_x" + std::to_string(lp.n),
           log_base(it->z.x[lp.n - 1], lp.t).to_double()},
          {"mu_bar", it->z.mu_bar.to_decimal()},
          {"residual", it->residual.to_decimal()}});
    emit_output(out, arr.dump(2) + "\n");
  });

  // ---- convergence ------------------------------------------------------------
  auto* cv = app.add_subcommand(
      "convergence", "distance of the traced path to its tropical limit");
  cv->fallthrough();
  std::vector<int> cv_r;
  std::vector<std::string> cv_t;
  std::string cv_theta = "1/2", cv_from = "0", cv_to = "2";
  long cv_steps = 16;
  cv->add_option("--r", cv_r, "instance sizes")->required();
  cv->add_option("--t", cv_t, "scale parameters")->required();
  cv->add_option("--theta", cv_theta, "neighborhood radius (rational)");
  cv->add_option("--lambda-from", cv_from, "sampling window start");
  cv->add_option("--lambda-to", cv_to, "sampling window end");
  cv->add_option("--lambda-steps", cv_steps, "sampling intervals");
  cv->callback([&] {
    const std::string fmt = resolve_format(format, "json");
    ExperimentGrid grid;
    grid.r_values = cv_r;
    grid.t_values = cv_t;
    grid.theta = parse_rat(cv_theta);
    grid.lambda_lo = parse_rat(cv_from);
    grid.lambda_hi = parse_rat(cv_to);
    grid.lambda_steps = cv_steps;
    grid.precision_bits = static_cast<mpfr_prec_t>(precision_bits);
    grid.seed = seed;
    emit_output(out, emit_report(experiment_convergence(grid, invocation), fmt));
  });

  // ---- curvature ---------------------------------------------------------------
  auto* cu = app.add_subcommand(
      "curvature", "polygonal curvature of the traced path vs tropical bound");
  cu->fallthrough();
  std::vector<int> cu_r;
  std::vector<std::string> cu_t;
  cu->add_option("--r", cu_r, "instance sizes")->required();
  cu->add_option("--t", cu_t, "scale parameters")->required();
  cu->callback([&] {
    const std::string fmt = resolve_format(format, "json");
    ExperimentGrid grid;
    grid.r_values = cu_r;
    grid.t_values = cu_t;
    grid.precision_bits = static_cast<mpfr_prec_t>(precision_bits);
    grid.seed = seed;
    emit_output(out, emit_report(experiment_curvature(grid, invocation), fmt));
  });

  // ---- thresholds ----------------------------------------------------------------
  auto* th = app.add_subcommand(
      "thresholds", "guarantee thresholds and perturbation bounds");
  th->fallthrough();
  int th_from = 2, th_to = 8;
  std::string th_theta = "1/2", th_t;
  bool th_decimal = false;
  th->add_option("--r-from", th_from, "first instance size");
  th->add_option("--r-to", th_to, "last instance size");
  th->add_option("--theta", th_theta, "neighborhood radius (rational)");
  th->add_option("--t", th_t, "also evaluate t-dependent bounds at this t");
  th->add_flag("--decimal", th_decimal,
               "include the full min_valid_t decimal expansion");
  th->callback([&] {
    const std::string fmt = resolve_format(format, "csv");
    require(2 <= th_from && th_from <= th_to && th_to <= 12,
            "thresholds: need 2 <= r-from <= r-to <= 12");
    const Rat theta = parse_rat(th_theta);
    CsvRow header{"r", "theta", "min_valid_t_digits", "epsilon0"};
    if (th_decimal) header.push_back("min_valid_t");
    std::optional<BigFloat> tb;
    if (!th_t.empty()) {
      const mpfr_prec_t bits = precision_bits ? precision_bits : 256;
      tb = BigFloat::from_decimal(th_t, bits);
      header.insert(header.end(),
                    {"delta_bound", "delta_guaranteed", "dinf_budget"});
    }
    std::vector<CsvRow> rows;
    for (int r = th_from; r <= th_to; ++r) {
      CsvRow row{std::to_string(r), rat_str(theta),
                 std::to_string(min_valid_t_digits(r, theta)),
                 rat_str(epsilon0(r))};
      if (th_decimal) row.push_back(min_valid_t(r, theta));
      if (tb) {
        row.push_back(double_str(delta_bound(r, *tb)));
        row.push_back(delta_guaranteed(r, *tb) ? "1" : "0");
        row.push_back(double_str(dinf_budget(r, rat_to_double(theta), *tb)));
      }
      rows.push_back(std::move(row));
    }
    emit_output(out, emit_table(header, rows, fmt));
  });

  // ---- verify -----------------------------------------------------------------
  auto* ve = app.add_subcommand(
      "verify", "run the acceptance criteria; nonzero exit on failure");
  ve->fallthrough();
  std::string ve_level = "fast", ve_golden;
  ve->add_option("level", ve_level, "fast (skips t >= 10^12 runs) or full")
      ->check(CLI::IsMember({"fast", "full"}));
  ve->add_option("--golden", ve_golden,
                 "golden threshold file (default: tests/golden/min_valid_t.json "
                 "when present)");
  ve->callback([&] {
    if (ve_golden.empty() &&
        std::filesystem::exists("tests/golden/min_valid_t.json"))
      ve_golden = "tests/golden/min_valid_t.json";
    const std::vector<CriterionResult> results =
        verify_suite(parse_verify_level(ve_level), ve_golden, seed);
    for (const CriterionResult& res : results)
      std::printf("[%s] %s %s (%.2fs): %s\n", res.passed ? "PASS" : "FAIL",
                  res.id.c_str(), res.name.c_str(), res.seconds,
                  res.detail.c_str());
    if (!out.empty())
      write_text_file(out, junit_xml(results, "verify." + ve_level));
    if (!all_passed(results)) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return 2;
  } catch (const AssertError& e) {
    std::fprintf(stderr, "assertion failure: %s\n", e.what());
    return 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  }
  return exit_code;
}
