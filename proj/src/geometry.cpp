#include "fracdisc/geometry.hpp"

#include <limits>
#include <numbers>
#include <stdexcept>

#include "fracdisc/detail/golden.hpp"
#include "fracdisc/detail/parallel.hpp"

namespace fracdisc {

cplx cauchy_derivative(const AnalyticFn& f, cplx z, double radius, int m) {
  if (!(radius > 0.0)) throw std::invalid_argument("cauchy_derivative: radius must be positive");
  cplx acc{0.0, 0.0};
  for (int k = 0; k < m; ++k) {
    double phi = 2.0 * std::numbers::pi * k / m;
    cplx e = std::polar(1.0, phi);
    acc += f(z + radius * e) / e;
  }
  return acc / (double(m) * radius);
}

cplx u_prime_from_h(const AnalyticFn& hprime, FracOrder q, cplx z, int n) {
  auto rule = jacobi_rule_cached(q.value() - 1.0, 1.0 - q.value(), n);
  return rule->apply([&](double t) { return hprime(z * t); }) / gamma(q.value());
}

UnivalenceCheck check_univalent(std::span<const cplx> uprime_samples, double tol) {
  if (uprime_samples.empty())
    throw std::invalid_argument("check_univalent: no samples");
  auto min_re = [&](double beta) {
    cplx rot = std::polar(1.0, beta);
    double m = std::numeric_limits<double>::infinity();
    for (const cplx& s : uprime_samples) m = std::min(m, (rot * s).real());
    return m;
  };
  const int n_beta = 720;
  double best_beta = 0.0, best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_beta; ++k) {
    double beta = -std::numbers::pi + 2.0 * std::numbers::pi * k / n_beta;
    double m = min_re(beta);
    if (m > best) {
      best = m;
      best_beta = beta;
    }
  }
  double step = 2.0 * std::numbers::pi / n_beta;
  auto [beta, val] = detail::golden_max(min_re, best_beta - step, best_beta + step);
  if (val < best) {
    beta = best_beta;
    val = best;
  }
  while (beta <= -std::numbers::pi) beta += 2.0 * std::numbers::pi;
  while (beta > std::numbers::pi) beta -= 2.0 * std::numbers::pi;
  UnivalenceCheck out;
  out.beta = beta;
  out.min_re_rotated = val;
  out.status = val > tol ? Certificate::proven : Certificate::inconclusive;
  return out;
}

namespace {

StarlikeCheck starlike_from_sup(double sup, double tol) {
  StarlikeCheck out;
  out.sup_uprime_dev = sup;
  out.status = sup <= mocanu_starlike_bound() + tol ? Certificate::proven
                                                    : Certificate::inconclusive;
  return out;
}

}  // namespace

StarlikeCheck check_starlike_mocanu(const PowerSeries& u, std::span<const cplx> grid,
                                    double tol) {
  PowerSeries up = u.derivative();
  double sup = 0.0;
  for (const cplx& z : grid) sup = std::max(sup, std::abs(up.eval(z) - 1.0));
  return starlike_from_sup(sup, tol);
}

StarlikeCheck check_starlike_mocanu(const AnalyticFn& u, std::span<const cplx> grid,
                                    double tol, int cauchy_nodes) {
  double sup = 0.0;
  for (const cplx& z : grid) {
    double radius = std::min(0.1, 1.0 - std::abs(z));
    cplx up = cauchy_derivative(u, z, radius, cauchy_nodes);
    sup = std::max(sup, std::abs(up - 1.0));
  }
  return starlike_from_sup(sup, tol);
}

HChecks check_h_hypotheses(const AnalyticFn& h, FracOrder q, std::span<const cplx> grid,
                           double tol) {
  if (std::abs(h(cplx(0.0, 0.0))) > 1e-10)
    throw std::invalid_argument("check_h_hypotheses: h(0) must vanish");
  HChecks out;
  out.h_prime_at_0 = cauchy_derivative(h, cplx(0.0, 0.0), 0.5, 64);
  const double anchor = 1.0 / gamma(2.0 - q.value());
  out.matches_1_over_gamma2q = std::abs(out.h_prime_at_0 - anchor) <= tol * std::max(1.0, anchor);

  std::vector<cplx> hprimes(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double radius = std::min(0.1, 1.0 - std::abs(grid[k]));
    hprimes[k] = cauchy_derivative(h, grid[k], radius, 64);
  }
  out.h_nw = check_univalent(hprimes);

  const double g1q = gamma(1.0 - q.value());
  const double slope = 1.0 / (1.0 - q.value());
  double sup = 0.0;
  for (const cplx& z : grid) sup = std::max(sup, std::abs(g1q * h(z) - slope * z));
  out.linear_deviation = sup;
  out.linear_deviation_ok = sup <= mocanu_starlike_bound() + tol;
  return out;
}

double starlike_bound_from_h(const AnalyticFn& h, FracOrder q, std::span<const cplx> grid,
                             int n_quad) {
  auto rule = jacobi_rule_cached(q.value() - 1.0, -q.value(), n_quad);
  const double gq = gamma(q.value());
  double sup = 0.0;
  for (const cplx& z : grid) {
    cplx u = rule->apply([&](double t) { return h(z * t); }) / gq;
    sup = std::max(sup, std::abs(u - z));
  }
  return sup;
}

std::vector<cplx> disc_grid(const DiscGridSpec& spec) {
  std::vector<cplx> out;
  out.reserve(std::size_t(spec.n_rad) * spec.n_ang);
  for (int i = 0; i < spec.n_rad; ++i) {
    double rho = spec.r_max * double(i + 1) / spec.n_rad;
    for (int j = 0; j < spec.n_ang; ++j) {
      double th = 2.0 * std::numbers::pi * j / spec.n_ang;
      out.push_back(std::polar(rho, th));
    }
  }
  return out;
}

ClassificationReport classify_from_h(const AnalyticFn& h, FracOrder q,
                                     const DiscGridSpec& grid, int n_quad, int threads) {
  ClassificationReport rep;
  rep.mocanu_bound = mocanu_starlike_bound();
  std::vector<cplx> points = disc_grid(grid);
  rep.h_checks = check_h_hypotheses(h, q, points);

  AnalyticFn hprime = [h](cplx z) {
    double radius = std::min(0.1, 1.0 - std::abs(z));
    if (!(radius > 0.0)) radius = 0.05;
    return cauchy_derivative(h, z, radius, 64);
  };
  std::vector<cplx> uprimes(points.size());
  detail::parallel_for(points.size(), threads, [&](std::size_t k) {
    uprimes[k] = u_prime_from_h(hprime, q, points[k], n_quad);
  });
  rep.univalent = check_univalent(uprimes);

  double sup = 0.0;
  for (const cplx& up : uprimes) sup = std::max(sup, std::abs(up - 1.0));
  rep.sup_uprime_dev = sup;
  rep.starlike = sup <= rep.mocanu_bound + 1e-9 ? Certificate::proven
                                                : Certificate::inconclusive;
  return rep;
}

}  // namespace fracdisc
