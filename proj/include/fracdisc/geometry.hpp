#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "fracdisc/fractional_ops.hpp"

namespace fracdisc {

/// Certificates are sufficient-only: a check either proves the property on
/// the sampled data or reports nothing. There is no "disproven".
enum class Certificate { proven, inconclusive };

/// sqrt(20)/5 = 2/sqrt(5), the derivative-deviation threshold that forces
/// starlikeness.
inline double mocanu_starlike_bound() { return 2.0 / std::sqrt(5.0); }

/// Trapezoid Cauchy-integral derivative on the circle |zeta - z| = radius;
/// spectrally accurate for f analytic across the circle.
cplx cauchy_derivative(const AnalyticFn& f, cplx z, double radius, int m = 64);

/// Derivative of the unit-disc solution driven by z^-q h(z):
///   u'(z) = (1/Gamma(q)) * GJ(alpha=q-1, beta=1-q)[t -> h'(z t)].
cplx u_prime_from_h(const AnalyticFn& hprime, FracOrder q, cplx z, int n);

struct UnivalenceCheck {
  Certificate status = Certificate::inconclusive;
  double beta = 0.0;            // rotation witnessing positivity, in (-pi, pi]
  double min_re_rotated = 0.0;  // min over samples of Re(e^{i beta} u')
};

/// Searches a 720-point beta grid, golden-refines, and proves univalence
/// when min Re(e^{i beta} u') stays strictly positive over the samples
/// (equivalently: 0 lies strictly outside the hull of the u' samples).
UnivalenceCheck check_univalent(std::span<const cplx> uprime_samples, double tol = 1e-9);

struct StarlikeCheck {
  Certificate status = Certificate::inconclusive;
  double sup_uprime_dev = 0.0;  // sampled sup of |u' - 1|
};

/// Spectral-derivative path for series, Cauchy-integral path for callables
/// (circle radius min(0.1, 1 - |z|)). Proven when the sampled sup of
/// |u' - 1| stays within sqrt(20)/5.
StarlikeCheck check_starlike_mocanu(const PowerSeries& u, std::span<const cplx> grid,
                                    double tol = 1e-9);
StarlikeCheck check_starlike_mocanu(const AnalyticFn& u, std::span<const cplx> grid,
                                    double tol = 1e-9, int cauchy_nodes = 64);

struct HChecks {
  cplx h_prime_at_0{0.0, 0.0};
  bool matches_1_over_gamma2q = false;  // h'(0) = 1/Gamma(2-q)
  UnivalenceCheck h_nw{};               // half-plane certificate for h'
  double linear_deviation = 0.0;        // sup |Gamma(1-q) h(z) - z/(1-q)|
  bool linear_deviation_ok = false;     // linear_deviation <= sqrt(20)/5
};

/// Hypothesis battery for the z^-q h(z) family; requires h(0) = 0.
HChecks check_h_hypotheses(const AnalyticFn& h, FracOrder q, std::span<const cplx> grid,
                           double tol = 1e-8);

/// Sampled sup of |u(z) - z| where u is the solution driven by z^-q h(z),
/// evaluated directly by the singularity-absorbing quadrature.
double starlike_bound_from_h(const AnalyticFn& h, FracOrder q, std::span<const cplx> grid,
                             int n_quad);

struct ClassificationReport {
  UnivalenceCheck univalent{};  // for the solution's derivative
  Certificate starlike = Certificate::inconclusive;
  double sup_uprime_dev = 0.0;
  double mocanu_bound = 0.0;  // sqrt(20)/5
  HChecks h_checks{};
};

struct DiscGridSpec {
  int n_rad = 32;
  int n_ang = 64;
  double r_max = 1.0 - 1e-3;  // hypotheses live on the open disc
};

/// Zero-free polar sampling of the disc |z| <= r_max.
std::vector<cplx> disc_grid(const DiscGridSpec& spec = {});

/// Full certificate battery for f(z,t) = z^-q h(z): solves for u' via the
/// integral formula and reports univalence and starlikeness certificates
/// together with the hypothesis checks on h.
ClassificationReport classify_from_h(const AnalyticFn& h, FracOrder q,
                                     const DiscGridSpec& grid = {}, int n_quad = 48,
                                     int threads = 1);

}  // namespace fracdisc
