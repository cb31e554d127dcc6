#pragma once

#include <functional>
#include <vector>

#include "fracdisc/special_functions.hpp"

namespace fracdisc {

/// Fractional order q, validated to lie in (0,1).
class FracOrder {
 public:
  explicit FracOrder(double q);
  double value() const { return q_; }

 private:
  double q_;
};

/// Truncated power series a0..aN about 0 with a nominal disc of validity.
/// Evaluation is Horner (deterministic summation order).
struct PowerSeries {
  std::vector<cplx> coeffs{cplx(0.0, 0.0)};
  double radius = 1.0;

  PowerSeries() = default;
  PowerSeries(std::vector<cplx> c, double r);

  int degree() const { return int(coeffs.size()) - 1; }
  cplx eval(cplx z) const;
  PowerSeries derivative() const;
};

/// z^exponent * series(z) with exponent in (-1, 1); carries the fractional
/// prefactors produced by the integral (z^q) and derivative (z^-q) paths.
struct ScaledSeries {
  double exponent = 0.0;
  PowerSeries series;

  /// At z = 0: 0 for exponent > 0, a0 for exponent == 0; for exponent < 0
  /// returns 0 when a0 == 0 (continuity) and throws otherwise.
  cplx eval(cplx z) const;
};

/// Caller asserts analyticity on the open disc in play, continuity on its closure.
using AnalyticFn = std::function<cplx(cplx)>;
using AnalyticFn2 = std::function<cplx(cplx, cplx)>;

/// z^exponent * w(z) with analytic w; dw = w' is required by derivative paths.
struct ScaledFn {
  double exponent = 0.0;
  AnalyticFn w;
  AnalyticFn dw;  // may be empty
};

cplx eval_scaled(const ScaledFn& f, cplx z);

// Series (spectral) path: exact term-wise action on monomials,
//   I^q z^m = Gamma(m+1)/Gamma(m+1+q) z^(m+q),
//   D^q z^m = Gamma(m+1)/Gamma(m+1-q) z^(m-q).
ScaledSeries frac_integral_series(const PowerSeries& u, FracOrder q);
ScaledSeries frac_integral_series(const ScaledSeries& u, FracOrder q);
ScaledSeries frac_derivative_series(const PowerSeries& u, FracOrder q);
ScaledSeries frac_derivative_series(const ScaledSeries& u, FracOrder q);

/// Quadrature path for the integral along the segment 0 -> z:
///   I^q u(z) = z^q/Gamma(q) * GJ(alpha=q-1, beta=0)[t -> u(z t)].
/// Returns 0 at z = 0.
cplx frac_integral_quad(const AnalyticFn& u, FracOrder q, cplx z, int n);

/// Quadrature path for the derivative via the regularized split
///   D^q u = u(0) z^-q / Gamma(1-q) + I^(1-q)[u'],
/// exact for analytic u. At z = 0 returns 0 when u(0) == 0 (continuity)
/// and throws std::domain_error otherwise.
cplx frac_derivative_quad(const AnalyticFn& u, const AnalyticFn& uprime, FracOrder q,
                          cplx z, int n);

// Exponent-aware quadrature ops: the Jacobi beta exponent absorbs the z^e
// prefactor, so integrands stay analytic and convergence stays geometric.
// Used for operator compositions and the z^-q * h(z) family.
ScaledFn frac_integral_quad_fn(const ScaledFn& u, FracOrder q, int n);
ScaledFn frac_derivative_quad_fn(const ScaledFn& u, FracOrder q, int n);

/// The fixed-point operator of the governing singular Volterra equation,
/// computed with F(z,t) := z^q f(z,t) after the substitution zeta = z t:
///   T u(z) = (1/Gamma(q)) * GJ(alpha=q-1, beta=-q)[t -> F(z t, u(z t))].
/// At z = 0 returns Gamma(1-q) * F(0, u(0)).
cplx apply_T(const AnalyticFn2& F, const AnalyticFn& u, FracOrder q, cplx z, int n);

}  // namespace fracdisc
