#include "fracdisc/volterra_solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fracdisc/detail/parallel.hpp"

namespace fracdisc {

namespace {

// Householder least squares for a column-major complex m x n matrix, m >= n.
// Deterministic; throws on rank deficiency.
std::vector<cplx> least_squares(std::vector<cplx> A, int m, int n, std::vector<cplx> rhs) {
  std::vector<cplx> diag(n);
  for (int k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (int i = k; i < m; ++i) norm2 += std::norm(A[i + std::size_t(k) * m]);
    double norm = std::sqrt(norm2);
    if (!(norm > 0.0)) throw std::runtime_error("least_squares: rank-deficient design");
    cplx akk = A[k + std::size_t(k) * m];
    double aakk = std::abs(akk);
    cplx phase = aakk == 0.0 ? cplx(1.0, 0.0) : akk / aakk;
    cplx alpha = -phase * norm;
    diag[k] = alpha;
    // v = x - alpha e_k stored in place of column k
    A[k + std::size_t(k) * m] = akk - alpha;
    double vnorm2 = 0.0;
    for (int i = k; i < m; ++i) vnorm2 += std::norm(A[i + std::size_t(k) * m]);
    if (!(vnorm2 > 0.0)) continue;
    double tau = 2.0 / vnorm2;
    for (int j = k + 1; j < n; ++j) {
      cplx s{0.0, 0.0};
      for (int i = k; i < m; ++i)
        s += std::conj(A[i + std::size_t(k) * m]) * A[i + std::size_t(j) * m];
      s *= tau;
      for (int i = k; i < m; ++i) A[i + std::size_t(j) * m] -= s * A[i + std::size_t(k) * m];
    }
    cplx s{0.0, 0.0};
    for (int i = k; i < m; ++i) s += std::conj(A[i + std::size_t(k) * m]) * rhs[i];
    s *= tau;
    for (int i = k; i < m; ++i) rhs[i] -= s * A[i + std::size_t(k) * m];
  }
  std::vector<cplx> x(n);
  for (int k = n - 1; k >= 0; --k) {
    cplx s = rhs[k];
    for (int j = k + 1; j < n; ++j) s -= A[k + std::size_t(j) * m] * x[j];
    x[k] = s / diag[k];
  }
  return x;
}

// Horner evaluation of coefficients in the scaled variable w = z / R0.
cplx eval_scaled_coeffs(const std::vector<cplx>& c, cplx w) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * w + c[i];
  return acc;
}

}  // namespace

std::vector<cplx> verification_grid(double R0, int n_theta, int n_rad) {
  const int nt = 2 * n_theta + 3;
  const int nr = n_rad + 5;
  std::vector<cplx> out;
  out.reserve(std::size_t(nt) * nr);
  for (int i = 0; i < nr; ++i) {
    double rho = R0 * double(i + 1) / nr;
    for (int j = 0; j < nt; ++j) {
      double th = 2.0 * std::numbers::pi * (j + 0.5) / nt;
      out.push_back(std::polar(rho, th));
    }
  }
  return out;
}

Solution solve(const ProblemSpec& spec, const SolverConfig& cfg) {
  if (cfg.degree < 1 || cfg.n_theta < 1 || cfg.n_rad < 1 || cfg.n_quad < 1 ||
      !(cfg.tol > 0.0) || cfg.max_iter < 1 || !(cfg.damping > 0.0 && cfg.damping <= 1.0))
    throw std::invalid_argument("solve: invalid solver configuration");
  const int n_nodes = cfg.n_theta * cfg.n_rad;
  if (n_nodes < cfg.degree + 1)
    throw std::invalid_argument("solve: collocation grid smaller than degree + 1");

  CompatibilityReport iv = check_compatibility(spec, cfg.compat_tol);
  if (!iv.pass) throw IncompatibleProblem(std::move(iv));

  Solution sol;
  sol.sup_bound = estimate_M(spec, cfg.m_gridN, cfg.threads);
  sol.radius = radius_R0(sol.sup_bound.M, spec.q, spec.R, spec.r);
  const double R0 = sol.radius.R0;
  sol.R0 = R0;

  // Collocation nodes: rays x Chebyshev radii in (0, R0].
  std::vector<cplx> nodes;
  nodes.reserve(n_nodes);
  for (int m = 0; m < cfg.n_rad; ++m) {
    double rho = R0 * std::cos(std::numbers::pi * m / (2.0 * cfg.n_rad));
    for (int j = 0; j < cfg.n_theta; ++j) {
      double th = 2.0 * std::numbers::pi * j / cfg.n_theta;
      nodes.push_back(std::polar(rho, th));
    }
  }

  // Design matrix in the scaled basis w^1..w^N, w = z / R0 (constant pinned).
  const int N = cfg.degree;
  std::vector<cplx> design(std::size_t(n_nodes) * N);
  for (int k = 0; k < n_nodes; ++k) {
    cplx w = nodes[k] / R0;
    cplx p = w;
    for (int j = 0; j < N; ++j) {
      design[k + std::size_t(j) * n_nodes] = p;
      p *= w;
    }
  }

  auto F = spec.F_fn();
  std::vector<cplx> coeffs(std::size_t(N) + 1, cplx(0.0, 0.0));
  coeffs[0] = spec.b;
  std::vector<cplx> best = coeffs;
  double best_change = std::numeric_limits<double>::infinity();
  const double guard = 1e8 * std::max({1.0, std::abs(spec.b), spec.r});

  sol.converged = false;
  int iter = 0;
  for (; iter < cfg.max_iter; ++iter) {
    AnalyticFn u = [&coeffs, R0](cplx z) { return eval_scaled_coeffs(coeffs, z / R0); };
    std::vector<cplx> target(n_nodes);
    bool bad = false;
    detail::parallel_for(std::size_t(n_nodes), cfg.threads, [&](std::size_t k) {
      target[k] = apply_T(F, u, spec.q, nodes[k], cfg.n_quad);
    });
    for (const cplx& v : target)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad = true;
    if (bad) break;

    std::vector<cplx> rhs(n_nodes);
    for (int k = 0; k < n_nodes; ++k) rhs[k] = target[k] - spec.b;
    std::vector<cplx> fit = least_squares(design, n_nodes, N, std::move(rhs));

    std::vector<cplx> next(coeffs.size());
    next[0] = spec.b;
    for (int j = 0; j < N; ++j)
      next[j + 1] = (1.0 - cfg.damping) * coeffs[j + 1] + cfg.damping * fit[j];

    double change = 0.0;
    double amplitude = 0.0;
    for (int k = 0; k < n_nodes; ++k) {
      cplx w = nodes[k] / R0;
      cplx delta = eval_scaled_coeffs(next, w) - eval_scaled_coeffs(coeffs, w);
      change = std::max(change, std::abs(delta));
      amplitude = std::max(amplitude, std::abs(eval_scaled_coeffs(next, w)));
    }
    coeffs = std::move(next);
    if (change < best_change) {
      best_change = change;
      best = coeffs;
    }
    if (amplitude > guard) break;  // diverging; keep the best iterate
    if (change <= cfg.tol) {
      sol.converged = true;
      ++iter;
      break;
    }
  }
  sol.iterations = iter;
  if (!sol.converged) coeffs = best;

  // Unscale coefficients: u(z) = sum c_j (z/R0)^j.
  std::vector<cplx> unscaled(coeffs.size());
  double scale = 1.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    unscaled[j] = coeffs[j] / scale;
    scale *= R0;
  }
  unscaled[0] = spec.b;
  sol.poly = PowerSeries(std::move(unscaled), R0);

  std::vector<cplx> vgrid = verification_grid(R0, cfg.n_theta, cfg.n_rad);
  AnalyticFn u_final = [&](cplx z) { return sol.poly.eval(z); };
  std::vector<cplx> uvals(vgrid.size()), tvals(vgrid.size());
  detail::parallel_for(vgrid.size(), cfg.threads, [&](std::size_t k) {
    uvals[k] = sol.poly.eval(vgrid[k]);
    tvals[k] = apply_T(F, u_final, spec.q, vgrid[k], cfg.n_quad);
  });
  double res = 0.0;
  sol.grid.reserve(vgrid.size());
  for (std::size_t k = 0; k < vgrid.size(); ++k) {
    res = std::max(res, std::abs(uvals[k] - tvals[k]));
    sol.grid.emplace_back(vgrid[k], uvals[k]);
  }
  sol.residual = res;
  if (sol.converged && !(res <= 10.0 * cfg.tol)) sol.converged = false;
  return sol;
}

double residual(const AnalyticFn& u, const ProblemSpec& spec, std::span<const cplx> grid,
                int n_quad) {
  auto F = spec.F_fn();
  double out = 0.0;
  for (const cplx& z : grid)
    out = std::max(out, std::abs(u(z) - apply_T(F, u, spec.q, z, n_quad)));
  return out;
}

BallCheck ball_invariance_check(const ProblemSpec& spec, const AnalyticFn& u,
                                std::span<const cplx> grid, int n_quad, double tol,
                                int threads) {
  auto F = spec.F_fn();
  std::vector<double> devs(grid.size());
  detail::parallel_for(grid.size(), threads, [&](std::size_t k) {
    devs[k] = std::abs(apply_T(F, u, spec.q, grid[k], n_quad) - spec.b);
  });
  BallCheck out;
  for (double d : devs) out.max_dev = std::max(out.max_dev, d);
  out.pass = out.max_dev <= spec.r + tol;
  return out;
}

}  // namespace fracdisc
