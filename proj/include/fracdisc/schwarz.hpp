#pragma once

#include <utility>

#include "fracdisc/fractional_ops.hpp"

namespace fracdisc {

/// Product domain |z| <= R times |t - b| <= r.
struct BidiscSpec {
  double R = 1.0;
  double r = 1.0;
  cplx b{0.0, 0.0};
};

/// Sampling resolution per factor: radii x angles.
struct GridSpec {
  int n_rad = 24;
  int n_ang = 48;
};

struct SchwarzReport {
  long checked = 0;
  double worst_ratio = 0.0;  // max of |g| / (M * max(|z|/R, |t-b|/r))
  std::pair<cplx, cplx> worst_point{};
  bool pass = false;  // worst_ratio <= 1 + tol
  bool center_ok = false;  // |g(0,b)| small: the vanishing hypothesis held
  cplx center_value{0.0, 0.0};
  GridSpec grid{};
  double tol = 0.0;
};

/// The slice through the bidisc used to reduce the two-variable bound to one
/// variable: eta -> (xi1 eta / R, (xi2 - b) eta / R + b) for xi1 on |z| = R
/// and xi2 on |t - b| = r. Preconditions checked to 1e-12.
std::pair<cplx, cplx> slice_map(cplx xi1, cplx xi2, cplx eta, const BidiscSpec& spec);

/// Samples |g(z,t)| <= M * max(|z|/R, |t-b|/r) over a product grid.
/// The vanishing hypothesis g(0,b) = 0 is verified independently and
/// reported via center_ok; pass reflects the bound only.
SchwarzReport schwarz2_check(const AnalyticFn2& g, double M, const BidiscSpec& spec,
                             GridSpec grid = {}, double tol = 1e-9, int threads = 1);

/// Slack r|z|/R - |u(z) - b| of the one-variable bound; nonnegative when
/// u(0) = b and sup |u - b| <= r on the R-disc. Negative slack is the report,
/// not an error.
double schwarz1_bound(const AnalyticFn& u, cplx b, double r, double R, cplx z);

}  // namespace fracdisc
