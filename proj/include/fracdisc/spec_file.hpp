#pragma once

#include <optional>
#include <string>
#include <utility>

#include "fracdisc/volterra_solver.hpp"

namespace fracdisc {

struct SpecFileError : std::runtime_error {
  int line;
  SpecFileError(const std::string& what, int line_no)
      : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"),
        line(line_no) {}
};

/// Problem-spec document: `key = value` lines, '#' comments, blank lines
/// ignored. Keys: q, b (one or two reals, re [im]), f (expression in z,t),
/// h (expression in z, classify input), R, r, and the solver overrides
/// degree, n_theta, n_rad, n_quad, tol, max_iter, damping, compat_tol, grid
/// ("NxM"). Unknown keys are rejected.
struct SpecFile {
  double q = 0.5;
  cplx b{0.0, 0.0};
  std::string f_text;
  std::optional<std::string> h_text;
  double R = 1.0;
  double r = 1.0;
  SolverConfig solver{};
  std::optional<std::pair<int, int>> grid;
};

SpecFile load_spec_file(const std::string& path);
SpecFile parse_spec_text(const std::string& text);

/// Builds the problem instance; requires an f expression.
ProblemSpec to_problem(const SpecFile& sf);

}  // namespace fracdisc
