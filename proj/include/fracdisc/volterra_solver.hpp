#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracdisc/existence.hpp"

namespace fracdisc {

struct SolverConfig {
  int degree = 24;     // polynomial degree of the iterates
  int n_theta = 16;    // ray directions of the collocation grid
  int n_rad = 12;      // radii per ray (Chebyshev-clustered toward R0)
  int n_quad = 48;     // Gauss-Jacobi nodes per operator application
  double tol = 1e-10;  // sup-norm stopping threshold on node changes
  int max_iter = 200;
  double damping = 1.0;  // iterate mixing factor in (0, 1]
  int threads = 1;
  double compat_tol = 1e-6;  // admissibility-gate tolerance
  int m_gridN = 128;     // torus resolution for the sup-bound estimate
};

struct Solution {
  PowerSeries poly;  // constant term pinned to b exactly; radius = R0
  double R0 = 0.0;
  std::vector<std::pair<cplx, cplx>> grid;  // (z, u(z)) on the verification grid
  int iterations = 0;
  double residual = 0.0;  // sup of |u - T u| on the verification grid
  bool converged = false;
  RadiusResult radius{};
  SupEstimate sup_bound{};
};

/// Thrown when the admissibility gate fails: the problem is refused rather
/// than solved.
struct IncompatibleProblem : std::runtime_error {
  CompatibilityReport report;
  explicit IncompatibleProblem(CompatibilityReport rep)
      : std::runtime_error("initial-value compatibility failed: " + rep.message),
        report(std::move(rep)) {}
};

/// Picard iteration u_{k+1} = (1-damping) u_k + damping * fit[T u_k] on a
/// degree-N polynomial with constant term pinned to b, collocated on rays
/// times Chebyshev radii inside the R0-disc. Non-convergence is reported
/// honestly via converged = false on the best iterate; it is not an error.
Solution solve(const ProblemSpec& spec, const SolverConfig& cfg = {});

/// Defect sup of |u(z) - T u(z)| over the given points.
double residual(const AnalyticFn& u, const ProblemSpec& spec, std::span<const cplx> grid,
                int n_quad);

struct BallCheck {
  double max_dev = 0.0;  // sup over the grid of |T u(z) - b|
  bool pass = false;     // max_dev <= r + tol
};

/// The computable content of the invariance T(B_r) within B_r: evaluates
/// |T u - b| over the grid. Caller asserts u(0) = b and sup |u - b| <= r.
BallCheck ball_invariance_check(const ProblemSpec& spec, const AnalyticFn& u,
                                std::span<const cplx> grid, int n_quad = 48,
                                double tol = 1e-8, int threads = 1);

/// Verification grid for an R0-disc: angles offset from the collocation rays,
/// radii uniform in (0, R0].
std::vector<cplx> verification_grid(double R0, int n_theta, int n_rad);

}  // namespace fracdisc
