// Command-line surface: problem-spec files in, reports and plot-ready
// tables out. Subcommands: ops, radius, solve, classify, schwarz, bridge,
// check. Exit codes: 0 ok, 2 parse error, 3 evaluation singularity,
// 4 no convergence, 5 initial-value compatibility failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracdisc/geometry.hpp"
#include "fracdisc/real_line_bridge.hpp"
#include "fracdisc/schwarz.hpp"
#include "fracdisc/spec_file.hpp"

namespace {

using namespace fracdisc;

constexpr int kExitParse = 2;
constexpr int kExitSingularity = 3;
constexpr int kExitNoConvergence = 4;
constexpr int kExitIncompatible = 5;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(cplx v) { return "(" + fmt(v.real()) + ", " + fmt(v.imag()) + ")"; }

struct Writer {
  std::string format = "report";  // or "csv"
  std::ostringstream out;

  bool csv() const { return format == "csv"; }
  void line(const std::string& s) { out << s << "\n"; }
  void kv(const std::string& key, const std::string& value) {
    out << (csv() ? key + "," + value : key + " = " + value) << "\n";
  }
  void kv(const std::string& key, double v) { kv(key, fmt(v)); }
  void kv(const std::string& key, int v) { kv(key, std::to_string(v)); }
  void kv(const std::string& key, bool v) { kv(key, std::string(v ? "1" : "0")); }
  void kvc(const std::string& key, cplx v) {
    if (csv()) {
      kv(key + "_re", v.real());
      kv(key + "_im", v.imag());
    } else {
      kv(key, fmt(v));
    }
  }
};

void emit(const Writer& w, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(w.out.str().c_str(), stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << w.out.str();
  }
}

cplx parse_complex_arg(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(in >> re)) throw CLI::ValidationError("expected 're[,im]' value: " + text);
  if (in >> sep) {
    if (sep != ',' || !(in >> im))
      throw CLI::ValidationError("expected 're,im' value: " + text);
  }
  return {re, im};
}

std::vector<cplx> parse_points_arg(const std::string& text) {
  std::vector<cplx> pts;
  std::istringstream in(text);
  std::string chunk;
  while (std::getline(in, chunk, ';'))
    if (!chunk.empty()) pts.push_back(parse_complex_arg(chunk));
  if (pts.empty()) throw CLI::ValidationError("no evaluation points given");
  return pts;
}

std::pair<int, int> parse_grid_arg(const std::string& text) {
  auto x = text.find('x');
  if (x == std::string::npos) x = text.find('X');
  if (x == std::string::npos) throw CLI::ValidationError("grid must look like NxM");
  return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

const char* cert_name(Certificate c) {
  return c == Certificate::proven ? "proven" : "inconclusive";
}

// Shared option state.
struct Common {
  std::string spec_path;
  std::string out_path;
  std::string format = "report";
  std::string grid_text;
  int n_quad = 0;  // 0: keep the document / built-in default
  double tol = 0.0;
  int max_iter = 0;
  int threads = 1;
};

SolverConfig merged_config(const SpecFile& sf, const Common& c) {
  SolverConfig cfg = sf.solver;
  if (c.n_quad > 0) cfg.n_quad = c.n_quad;
  if (c.tol > 0.0) cfg.tol = c.tol;
  if (c.max_iter > 0) cfg.max_iter = c.max_iter;
  cfg.threads = c.threads;
  if (!c.grid_text.empty()) cfg.m_gridN = std::max(parse_grid_arg(c.grid_text).first, 8);
  return cfg;
}

void write_compatibility(Writer& w, const CompatibilityReport& rep) {
  w.kv("compatibility_pass", rep.pass);
  w.kv("regularity_ok", rep.regularity_ok);
  w.kvc("observed_limit", rep.observed_limit);
  w.kvc("target", rep.target);
  w.kv("worst_dev", rep.worst_dev);
  if (!rep.message.empty()) w.kv("note", rep.message);
}

// ---------------------------------------------------------------- ops ----

struct OpsOptions {
  std::string op;          // I or D
  std::string then_op;     // optional second operator
  double q = 0.5;
  std::string b_text = "0";
  std::string expr_text;
  std::string coeffs_text;
  double series_radius = 1.0;
  std::string points_text;
  double cauchy_radius = 0.1;
};

int run_ops(const OpsOptions& opt, const Common& common) {
  if (!(opt.q > 0.0 && opt.q < 1.0))
    throw CLI::ValidationError("--q must lie strictly between 0 and 1");
  FracOrder q(opt.q);
  cplx b = parse_complex_arg(opt.b_text);
  std::vector<cplx> points = parse_points_arg(opt.points_text);
  int n = common.n_quad > 0 ? common.n_quad : 48;

  std::vector<cplx> values(points.size());
  if (!opt.coeffs_text.empty()) {
    std::vector<cplx> coeffs = parse_points_arg(opt.coeffs_text);
    PowerSeries u(coeffs, opt.series_radius);
    ScaledSeries stage = opt.op == "I" ? frac_integral_series(u, q)
                                       : frac_derivative_series(u, q);
    if (!opt.then_op.empty())
      stage = opt.then_op == "I" ? frac_integral_series(stage, q)
                                 : frac_derivative_series(stage, q);
    for (std::size_t i = 0; i < points.size(); ++i) values[i] = stage.eval(points[i]);
  } else if (!opt.expr_text.empty()) {
    expr::Ast ast = expr::parse(opt.expr_text);
    AnalyticFn u = [ast, qv = opt.q, b](cplx z) {
      return expr::eval(ast, expr::Env{z, {0.0, 0.0}, qv, b});
    };
    AnalyticFn du = [u, radius = opt.cauchy_radius](cplx z) {
      return cauchy_derivative(u, z, radius, 64);
    };
    ScaledFn stage = opt.op == "I" ? frac_integral_quad_fn({0.0, u, du}, q, n)
                                   : frac_derivative_quad_fn({0.0, u, du}, q, n);
    if (!opt.then_op.empty()) {
      if (!stage.dw && opt.then_op == "D")
        throw CLI::ValidationError("a derivative cannot follow a derivative here");
      stage = opt.then_op == "I" ? frac_integral_quad_fn(stage, q, n)
                                 : frac_derivative_quad_fn(stage, q, n);
    }
    for (std::size_t i = 0; i < points.size(); ++i) values[i] = eval_scaled(stage, points[i]);
  } else {
    throw CLI::ValidationError("give either --expr or --coeffs");
  }

  Writer w;
  w.format = common.format;
  if (w.csv()) {
    w.line("z_re,z_im,val_re,val_im");
    for (std::size_t i = 0; i < points.size(); ++i)
      w.line(fmt(points[i].real()) + "," + fmt(points[i].imag()) + "," +
             fmt(values[i].real()) + "," + fmt(values[i].imag()));
  } else {
    for (std::size_t i = 0; i < points.size(); ++i)
      w.line("z = " + fmt(points[i]) + "   value = " + fmt(values[i]));
  }
  emit(w, common.out_path);
  return 0;
}

// ------------------------------------------------------- radius / check ----

int run_radius(const Common& common, bool gate_only) {
  SpecFile sf = load_spec_file(common.spec_path);
  ProblemSpec spec = to_problem(sf);
  SolverConfig cfg = merged_config(sf, common);

  CompatibilityReport iv = check_compatibility(spec, cfg.compat_tol);
  Writer w;
  w.format = common.format;
  w.kv("q", spec.q.value());
  w.kvc("b", spec.b);
  w.kv("R", spec.R);
  w.kv("r", spec.r);
  write_compatibility(w, iv);

  if (!gate_only) {
    SupEstimate est = estimate_M(spec, cfg.m_gridN, cfg.threads);
    RadiusResult rr = radius_R0(est.M, spec.q, spec.R, spec.r);
    w.kv("M", est.M);
    w.kvc("argmax_z", est.argmax.first);
    w.kvc("argmax_t", est.argmax.second);
    w.kv("gamma2q", rr.gamma2q);
    w.kv("branch", std::string(rr.branch == RadiusBranch::full ? "full" : "shrunk"));
    w.kv("R0", rr.R0);
    if (spec.b == cplx(0.0, 0.0)) {
      PlainBallBound r22 = plain_ball_bound(spec, est.M);
      w.kv("plain_bound", r22.bound);
      w.kv("plain_bound_sufficient", r22.sufficient);
    }
  } else if (spec.b == cplx(0.0, 0.0)) {
    SupEstimate est = estimate_M(spec, cfg.m_gridN, cfg.threads);
    PlainBallBound r22 = plain_ball_bound(spec, est.M);
    w.kv("M", est.M);
    w.kv("plain_bound", r22.bound);
    w.kv("plain_bound_sufficient", r22.sufficient);
  }
  emit(w, common.out_path);
  return gate_only && !iv.pass ? kExitIncompatible : 0;
}

// -------------------------------------------------------------- solve ----

void write_solution(Writer& w, const ProblemSpec& spec, const Solution& sol) {
  w.kv("q", spec.q.value());
  w.kvc("b", spec.b);
  w.kv("R", spec.R);
  w.kv("r", spec.r);
  w.kv("M", sol.sup_bound.M);
  w.kv("gamma2q", sol.radius.gamma2q);
  w.kv("branch", std::string(sol.radius.branch == RadiusBranch::full ? "full" : "shrunk"));
  w.kv("R0", sol.R0);
  w.kv("iterations", sol.iterations);
  w.kv("residual", sol.residual);
  w.kv("converged", sol.converged);
  if (w.csv()) {
    w.line("# coefficients");
    w.line("index,re,im");
    for (std::size_t j = 0; j < sol.poly.coeffs.size(); ++j)
      w.line(std::to_string(j) + "," + fmt(sol.poly.coeffs[j].real()) + "," +
             fmt(sol.poly.coeffs[j].imag()));
    w.line("# grid");
    w.line("z_re,z_im,u_re,u_im");
    for (const auto& [z, u] : sol.grid)
      w.line(fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(u.real()) + "," +
             fmt(u.imag()));
  } else {
    for (std::size_t j = 0; j < sol.poly.coeffs.size(); ++j)
      w.kv("coef[" + std::to_string(j) + "]", fmt(sol.poly.coeffs[j]));
    w.kv("grid_points", int(sol.grid.size()));
  }
}

int run_solve(const Common& common) {
  SpecFile sf = load_spec_file(common.spec_path);
  ProblemSpec spec = to_problem(sf);
  SolverConfig cfg = merged_config(sf, common);
  Writer w;
  w.format = common.format;
  try {
    Solution sol = solve(spec, cfg);
    write_solution(w, spec, sol);
    emit(w, common.out_path);
    return sol.converged ? 0 : kExitNoConvergence;
  } catch (const IncompatibleProblem& e) {
    w.kv("q", spec.q.value());
    w.kvc("b", spec.b);
    write_compatibility(w, e.report);
    emit(w, common.out_path);
    std::cerr << "refused: " << e.what() << "\n";
    return kExitIncompatible;
  }
}

// ------------------------------------------------------------ classify ----

int run_classify(const Common& common) {
  SpecFile sf = load_spec_file(common.spec_path);
  FracOrder q(sf.q);
  cplx b = sf.b;

  AnalyticFn h;
  if (sf.h_text) {
    expr::Ast ast = expr::parse(*sf.h_text);
    if (expr::references(ast, 't'))
      throw CLI::ValidationError("'h' must be an expression in z only");
    h = [ast, qv = sf.q, b](cplx z) { return expr::eval(ast, expr::Env{z, {}, qv, b}); };
  } else {
    // derive h from f: z^q f(z,t) must not depend on t
    ProblemSpec spec = to_problem(sf);
    auto F = spec.F_fn();
    for (int k = 1; k <= 8; ++k) {
      cplx z = std::polar(0.11 * k, 0.7 * k);
      cplx va = F(z, {0.3, 0.1});
      cplx vb = F(z, {-0.7, -0.2});
      if (std::abs(va - vb) > 1e-10 * (1.0 + std::abs(va)))
        throw CLI::ValidationError("classification needs f of the form z^(-q) h(z)");
    }
    h = [F](cplx z) { return F(z, cplx(0.0, 0.0)); };
  }

  DiscGridSpec grid;
  if (!common.grid_text.empty()) {
    auto [nr, na] = parse_grid_arg(common.grid_text);
    grid.n_rad = nr;
    grid.n_ang = na;
  }
  int n_quad = common.n_quad > 0 ? common.n_quad : 48;
  ClassificationReport rep = classify_from_h(h, q, grid, n_quad, common.threads);

  Writer w;
  w.format = common.format;
  w.kv("q", q.value());
  w.kv("univalent", std::string(cert_name(rep.univalent.status)));
  w.kv("univalent_beta", rep.univalent.beta);
  w.kv("univalent_min_re", rep.univalent.min_re_rotated);
  w.kv("starlike", std::string(cert_name(rep.starlike)));
  w.kv("sup_uprime_dev", rep.sup_uprime_dev);
  w.kv("mocanu_bound_sqrt20_over_5", rep.mocanu_bound);
  w.kvc("h_prime_at_0", rep.h_checks.h_prime_at_0);
  w.kv("h_prime_matches_1_over_gamma2q", rep.h_checks.matches_1_over_gamma2q);
  w.kv("h_halfplane", std::string(cert_name(rep.h_checks.h_nw.status)));
  w.kv("h_halfplane_beta", rep.h_checks.h_nw.beta);
  w.kv("h_halfplane_min_re", rep.h_checks.h_nw.min_re_rotated);
  w.kv("h_linear_deviation", rep.h_checks.linear_deviation);
  w.kv("h_linear_deviation_ok", rep.h_checks.linear_deviation_ok);
  emit(w, common.out_path);
  return 0;
}

// ------------------------------------------------------------- schwarz ----

struct SchwarzOptions {
  std::string g_text;
  double M = 1.0;
  double R = 1.0;
  double r = 1.0;
  std::string b_text = "0";
  double q = 0.5;
  double tol = 1e-9;
};

int run_schwarz(const SchwarzOptions& opt, const Common& common) {
  expr::Ast ast = expr::parse(opt.g_text);
  cplx b = parse_complex_arg(opt.b_text);
  AnalyticFn2 g = [ast, qv = opt.q, b](cplx z, cplx t) {
    return expr::eval(ast, expr::Env{z, t, qv, b});
  };
  BidiscSpec spec{opt.R, opt.r, b};
  GridSpec grid;
  if (!common.grid_text.empty()) {
    auto [nr, na] = parse_grid_arg(common.grid_text);
    grid.n_rad = nr;
    grid.n_ang = na;
  }
  SchwarzReport rep = schwarz2_check(g, opt.M, spec, grid, opt.tol, common.threads);

  Writer w;
  w.format = common.format;
  w.kv("M", opt.M);
  w.kv("R", opt.R);
  w.kv("r", opt.r);
  w.kvc("b", b);
  w.kv("grid_rad", rep.grid.n_rad);
  w.kv("grid_ang", rep.grid.n_ang);
  w.kv("checked", int(rep.checked));
  w.kv("center_ok", rep.center_ok);
  w.kvc("center_value", rep.center_value);
  w.kv("worst_ratio", rep.worst_ratio);
  w.kvc("worst_z", rep.worst_point.first);
  w.kvc("worst_t", rep.worst_point.second);
  w.kv("pass", rep.pass);
  emit(w, common.out_path);
  return 0;
}

// -------------------------------------------------------------- bridge ----

int run_bridge(const Common& common, int n_x) {
  SpecFile sf = load_spec_file(common.spec_path);
  ProblemSpec spec = to_problem(sf);
  SolverConfig cfg = merged_config(sf, common);
  Writer w;
  w.format = common.format;
  try {
    RealSolution rs = bridge_solve(spec, cfg, n_x);
    w.kv("q", spec.q.value());
    w.kv("b", spec.b.real());
    w.kv("R0", rs.R0);
    w.kv("volterra_residual", rs.volterra_residual);
    w.kv("symmetric", rs.symmetric);
    w.kv("converged", rs.complex_solution.converged);
    if (w.csv()) {
      w.line("# table");
      w.line("x,u,defect");
      for (std::size_t j = 0; j < rs.xs.size(); ++j)
        w.line(fmt(rs.xs[j]) + "," + fmt(rs.us[j]) + "," + fmt(rs.defects[j]));
    } else {
      for (std::size_t j = 0; j < rs.xs.size(); ++j)
        w.line("x = " + fmt(rs.xs[j]) + "   u = " + fmt(rs.us[j]) +
               "   defect = " + fmt(rs.defects[j]));
    }
    emit(w, common.out_path);
    return rs.complex_solution.converged ? 0 : kExitNoConvergence;
  } catch (const IncompatibleProblem& e) {
    write_compatibility(w, e.report);
    emit(w, common.out_path);
    std::cerr << "refused: " << e.what() << "\n";
    return kExitIncompatible;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for fractional initial value problems on complex discs"};
  app.require_subcommand(1);

  Common common;
  OpsOptions ops_opt;
  SchwarzOptions schwarz_opt;
  int n_x = 33;

  auto add_common = [&](CLI::App* cmd, bool needs_spec, bool solver_flags = true) {
    if (needs_spec)
      cmd->add_option("--spec", common.spec_path, "problem-spec file")->required();
    cmd->add_option("--out", common.out_path, "write the report to a file instead of stdout");
    cmd->add_option("--format", common.format, "output format: report or csv")
        ->envname("FRACDISC_FORMAT")
        ->check(CLI::IsMember({"report", "csv"}));
    cmd->add_option("--n-quad", common.n_quad, "quadrature nodes")->envname("FRACDISC_N_QUAD");
    if (solver_flags) {
      cmd->add_option("--tol", common.tol, "solver tolerance")->envname("FRACDISC_TOL");
      cmd->add_option("--max-iter", common.max_iter, "iteration cap")
          ->envname("FRACDISC_MAX_ITER");
    }
    cmd->add_option("--threads", common.threads, "worker thread cap")
        ->envname("FRACDISC_THREADS");
    cmd->add_option("--grid", common.grid_text, "sampling grid, NxM")->envname("FRACDISC_GRID");
  };

  CLI::App* ops = app.add_subcommand("ops", "apply a fractional operator at points");
  ops->add_option("--op", ops_opt.op, "operator: I or D")->required()
      ->check(CLI::IsMember({"I", "D"}));
  ops->add_option("--then", ops_opt.then_op, "second operator to compose")
      ->check(CLI::IsMember({"I", "D"}));
  ops->add_option("--q", ops_opt.q, "fractional order in (0,1)")->required();
  ops->add_option("--b", ops_opt.b_text, "parameter b as re[,im]");
  ops->add_option("--expr", ops_opt.expr_text, "function of z (may use q, b)");
  ops->add_option("--coeffs", ops_opt.coeffs_text, "series coefficients re,im;re,im;...");
  ops->add_option("--radius", ops_opt.series_radius, "series disc radius");
  ops->add_option("--points", ops_opt.points_text, "evaluation points re,im;re,im;...")
      ->required();
  ops->add_option("--cauchy-radius", ops_opt.cauchy_radius,
                  "circle radius for numerical differentiation of --expr");
  add_common(ops, false);

  CLI::App* radius = app.add_subcommand("radius", "existence radius and sup-bound report");
  add_common(radius, true);

  CLI::App* slv = app.add_subcommand("solve", "solve the initial value problem on the disc");
  add_common(slv, true);

  CLI::App* classify = app.add_subcommand("classify", "univalence/starlikeness certificates");
  add_common(classify, true);

  CLI::App* schwarz = app.add_subcommand("schwarz", "two-variable bound verifier");
  schwarz->add_option("--g", schwarz_opt.g_text, "expression in z and t")->required();
  schwarz->add_option("--M", schwarz_opt.M, "modulus bound")->required();
  schwarz->add_option("--R", schwarz_opt.R, "z-disc radius");
  schwarz->add_option("--r", schwarz_opt.r, "t-ball radius");
  schwarz->add_option("--b", schwarz_opt.b_text, "t-ball center re[,im]");
  schwarz->add_option("--q", schwarz_opt.q, "value bound to q inside --g");
  schwarz->add_option("--tol", schwarz_opt.tol, "bound tolerance");
  add_common(schwarz, false, false);

  CLI::App* bridge = app.add_subcommand("bridge", "real-line solution via the disc problem");
  bridge->add_option("--n-x", n_x, "sample count on [0, R0]");
  add_common(bridge, true);

  CLI::App* check = app.add_subcommand("check", "initial-value compatibility gate");
  add_common(check, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ops->parsed()) return run_ops(ops_opt, common);
    if (radius->parsed()) return run_radius(common, false);
    if (slv->parsed()) return run_solve(common);
    if (classify->parsed()) return run_classify(common);
    if (schwarz->parsed()) return run_schwarz(schwarz_opt, common);
    if (bridge->parsed()) return run_bridge(common, n_x);
    if (check->parsed()) return run_radius(common, true);
  } catch (const expr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SpecFileError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitParse;
  } catch (const expr::EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitSingularity;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::domain_error& e) {
    // runtime singularities (zero-base negative powers, derivative at 0, ...)
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitSingularity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
