#include "fracdisc/real_line_bridge.hpp"

#include <cmath>
#include <stdexcept>

namespace fracdisc {

RealSolution bridge_solve(const ProblemSpec& spec, const SolverConfig& cfg, int n_x) {
  if (n_x < 2) throw std::invalid_argument("bridge_solve: need at least two sample points");
  if (spec.b.imag() != 0.0)
    throw std::invalid_argument("bridge_solve: initial value must be real");

  RealSolution out;
  out.complex_solution = solve(spec, cfg);
  const Solution& sol = out.complex_solution;
  out.R0 = sol.R0;

  auto F = spec.F_fn();
  AnalyticFn u = [&](cplx z) { return sol.poly.eval(z); };

  out.xs.resize(n_x);
  out.us.resize(n_x);
  out.defects.resize(n_x);
  double max_im = 0.0;
  for (int j = 0; j < n_x; ++j) {
    double x = sol.R0 * double(j) / (n_x - 1);
    out.xs[j] = x;
    cplx uz = j == 0 ? spec.b : u(cplx(x, 0.0));
    max_im = std::max(max_im, std::abs(uz.imag()));
    out.us[j] = uz.real();
    if (j == 0) {
      out.defects[j] = 0.0;  // the equation reduces to u(0) = b there
    } else {
      cplx tu = apply_T(F, u, spec.q, cplx(x, 0.0), cfg.n_quad);
      out.defects[j] = std::abs(uz - tu);
    }
    out.volterra_residual = std::max(out.volterra_residual, out.defects[j]);
  }
  out.symmetric = max_im <= 1e-8;
  return out;
}

}  // namespace fracdisc
