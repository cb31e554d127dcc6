#pragma once

#include <string>
#include <utility>

#include "fracdisc/expr.hpp"
#include "fracdisc/fractional_ops.hpp"

namespace fracdisc {

/// One full problem instance: D^q u = f(z, u), u(0) = b on the R-disc, with
/// the candidate solution ball |u - b| <= r. F = z^q * f is the analytic
/// product that all numerics evaluate; f itself is only divided out when
/// explicitly needed.
struct ProblemSpec {
  FracOrder q;
  cplx b{0.0, 0.0};
  expr::Ast f;  // expression in (z, t)
  expr::Ast F;  // derived: (z^q) * f
  double R = 1.0;
  double r = 1.0;

  static ProblemSpec make(FracOrder q, cplx b, expr::Ast f, double R, double r);

  /// (z,t) -> F(z,t) with q, b bound. Pure; safe to share across threads.
  AnalyticFn2 F_fn() const;

  /// The admissibility anchor b / Gamma(1-q).
  cplx target() const;
};

struct CompatibilityReport {
  bool pass = false;
  bool regularity_ok = true;  // no evaluation singularity approaching 0
  cplx observed_limit{0.0, 0.0};
  cplx target{0.0, 0.0};
  double worst_dev = 0.0;  // max per-angle deviation at the smallest radius
  std::string message;
};

/// Verifies z^q f(z, b) -> b / Gamma(1-q) as z -> 0 by sampling F(., b) at
/// radii {1e-3, 1e-5, 1e-7} * R over 8 angles. The limit is taken as the
/// angle average at the smallest radius (which cancels the low-order Taylor
/// modes); deviations must also decay across the radii. tol is relative to
/// max(1, |target|).
CompatibilityReport check_compatibility(const ProblemSpec& spec, double tol = 1e-6);

struct SupEstimate {
  double M = 0.0;
  std::pair<cplx, cplx> argmax{};
};

/// Maximizes |F(z,t) - b/Gamma(1-q)| over the distinguished boundary
/// |z| = R, |t-b| = r on a gridN x gridN angle grid, then refines the best
/// point by coordinate-wise golden-section sweeps. A sampled lower bound of
/// the true sup; the maximum principle puts the sup on this torus.
SupEstimate estimate_M(const ProblemSpec& spec, int gridN = 128, int threads = 1);

enum class RadiusBranch { full, shrunk };

struct RadiusResult {
  double R0 = 0.0;
  RadiusBranch branch = RadiusBranch::full;
  double M = 0.0;
  double gamma2q = 0.0;  // Gamma(2-q)
};

/// Existence radius: R when M*Gamma(2-q) <= r, else r*R/(M*Gamma(2-q)).
RadiusResult radius_R0(double M, FracOrder q, double R, double r);

struct PlainBallBound {
  double bound = 0.0;  // Msup * Gamma(1-q)
  bool sufficient = false;  // bound <= r
};

/// The plain sup-bound diagnostic for the b = 0 setting: |T u| <= Msup *
/// Gamma(1-q); sufficient only when that already fits inside the r-ball.
PlainBallBound plain_ball_bound(const ProblemSpec& spec, double Msup);

}  // namespace fracdisc
