#pragma once

#include <vector>

#include "fracdisc/volterra_solver.hpp"

namespace fracdisc {

struct RealSolution {
  std::vector<double> xs;  // increasing, xs[0] = 0, last = R0
  std::vector<double> us;  // Re(u) at xs; us[0] = b
  std::vector<double> defects;  // per-point defect of the real integral equation
  double R0 = 0.0;
  double volterra_residual = 0.0;  // max of defects
  bool symmetric = false;  // conjugate symmetry of the complex solution held
  Solution complex_solution;
};

/// Extends a real-line problem (real b, real-coefficient f) to the disc by
/// reading x, y as z, t, solves there, and returns Re(u) on [0, R0] with a
/// defect check of the real weakly singular integral equation evaluated by
/// the same product quadrature restricted to the real axis.
RealSolution bridge_solve(const ProblemSpec& spec, const SolverConfig& cfg, int n_x);

}  // namespace fracdisc
