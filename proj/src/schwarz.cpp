#include "fracdisc/schwarz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracdisc/detail/parallel.hpp"

namespace fracdisc {

std::pair<cplx, cplx> slice_map(cplx xi1, cplx xi2, cplx eta, const BidiscSpec& spec) {
  const double tol = 1e-12;
  if (std::abs(std::abs(xi1) - spec.R) > tol * std::max(1.0, spec.R))
    throw std::invalid_argument("slice_map: xi1 must lie on |z| = R");
  if (std::abs(std::abs(xi2 - spec.b) - spec.r) > tol * std::max(1.0, spec.r))
    throw std::invalid_argument("slice_map: xi2 must lie on |t - b| = r");
  if (std::abs(eta) > spec.R * (1.0 + tol))
    throw std::invalid_argument("slice_map: |eta| must not exceed R");
  return {xi1 * eta / spec.R, (xi2 - spec.b) * eta / spec.R + spec.b};
}

SchwarzReport schwarz2_check(const AnalyticFn2& g, double M, const BidiscSpec& spec,
                             GridSpec grid, double tol, int threads) {
  if (!(M > 0.0)) throw std::invalid_argument("schwarz2_check: M must be positive");
  SchwarzReport rep;
  rep.grid = grid;
  rep.tol = tol;
  rep.center_value = g(cplx(0.0, 0.0), spec.b);
  rep.center_ok = std::abs(rep.center_value) <= tol * M;

  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<cplx> zs, ts;
  zs.reserve(std::size_t(grid.n_rad) * grid.n_ang);
  ts.reserve(std::size_t(grid.n_rad) * grid.n_ang);
  for (int i = 0; i < grid.n_rad; ++i) {
    double rho_z = spec.R * double(i + 1) / grid.n_rad;
    double rho_t = spec.r * double(i + 1) / grid.n_rad;
    for (int j = 0; j < grid.n_ang; ++j) {
      double th = two_pi * j / grid.n_ang;
      zs.push_back(std::polar(rho_z, th));
      ts.push_back(spec.b + std::polar(rho_t, th));
    }
  }

  struct RowMax {
    double ratio = -1.0;
    cplx z{}, t{};
  };
  std::vector<RowMax> rows(zs.size());
  detail::parallel_for(zs.size(), threads, [&](std::size_t iz) {
    RowMax best;
    const cplx z = zs[iz];
    const double zfrac = std::abs(z) / spec.R;
    for (const cplx& t : ts) {
      double denom = M * std::max(zfrac, std::abs(t - spec.b) / spec.r);
      double ratio = std::abs(g(z, t)) / denom;
      if (ratio > best.ratio) best = {ratio, z, t};
    }
    rows[iz] = best;
  });

  rep.checked = long(zs.size()) * long(ts.size());
  for (const RowMax& row : rows) {
    if (row.ratio > rep.worst_ratio) {
      rep.worst_ratio = row.ratio;
      rep.worst_point = {row.z, row.t};
    }
  }
  rep.pass = rep.worst_ratio <= 1.0 + tol;
  return rep;
}

double schwarz1_bound(const AnalyticFn& u, cplx b, double r, double R, cplx z) {
  return r * std::abs(z) / R - std::abs(u(z) - b);
}

}  // namespace fracdisc
