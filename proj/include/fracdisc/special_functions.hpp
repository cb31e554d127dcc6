#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace fracdisc {

using cplx = std::complex<double>;

/// Argument of w normalized to (-pi, pi]; negative reals map to +pi.
double principal_arg(cplx w);

/// Principal-branch power |w|^a exp(i a Arg w), Arg in (-pi, pi].
/// At w = 0: returns 0 for a > 0, 1 for a == 0, throws std::domain_error for a < 0.
cplx ppow(cplx w, double a);

/// Principal-branch logarithm log|w| + i Arg w. Throws std::domain_error at w = 0.
cplx plog(cplx w);

/// Gamma function for real x > 0 (Lanczos approximation). Throws std::domain_error otherwise.
double gamma(double x);

/// log Gamma for real x > 0.
double log_gamma(double x);

/// Euler Beta B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b) for a, b > 0.
double beta(double a, double b);

/// Quadrature rule on [0,1] for weighted integrals
///     integral_0^1 f(t) t^beta (1-t)^alpha dt  ~=  sum_i w_i f(t_i).
/// Nodes are strictly increasing inside (0,1), weights positive,
/// sum of weights equals B(beta+1, alpha+1) up to roundoff.
struct QuadRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Weighted sum in ascending node order (deterministic).
  template <class F>
  auto apply(F&& f) const -> decltype(weights[0] * f(nodes[0])) {
    decltype(weights[0] * f(nodes[0])) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Gauss-Jacobi rule with n nodes for weight t^beta (1-t)^alpha on [0,1],
/// alpha > -1, beta > -1. Built from the Jacobi three-term recurrence via a
/// symmetric tridiagonal eigensolve (Golub-Welsch); exact for polynomial
/// degree <= 2n-1. Throws std::runtime_error if the eigensolve fails.
QuadRule jacobi_rule(double alpha, double beta, int n);

/// Memoized shared rules keyed on (alpha, beta, n). Thread-safe.
std::shared_ptr<const QuadRule> jacobi_rule_cached(double alpha, double beta, int n);

}  // namespace fracdisc
