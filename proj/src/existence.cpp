#include "fracdisc/existence.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "fracdisc/detail/golden.hpp"
#include "fracdisc/detail/parallel.hpp"

namespace fracdisc {

ProblemSpec ProblemSpec::make(FracOrder q, cplx b, expr::Ast f, double R, double r) {
  if (!(R > 0.0) || !(r > 0.0))
    throw std::domain_error("ProblemSpec: R and r must be positive");
  expr::Ast F = expr::z_pow_q_times(f);
  return ProblemSpec{q, b, std::move(f), std::move(F), R, r};
}

AnalyticFn2 ProblemSpec::F_fn() const {
  return [F = F.node(), qv = q.value(), bv = b](cplx z, cplx t) {
    return expr::eval(expr::Ast::from_node(F), expr::Env{z, t, qv, bv});
  };
}

cplx ProblemSpec::target() const { return b / gamma(1.0 - q.value()); }

CompatibilityReport check_compatibility(const ProblemSpec& spec, double tol) {
  CompatibilityReport rep;
  rep.target = spec.target();
  const double scale = std::max(1.0, std::abs(rep.target));
  const double radii[3] = {1e-3, 1e-5, 1e-7};
  const int n_ang = 8;
  auto F = spec.F_fn();

  double dev[3] = {0.0, 0.0, 0.0};
  cplx mean_smallest{0.0, 0.0};
  try {
    for (int k = 0; k < 3; ++k) {
      cplx mean{0.0, 0.0};
      for (int j = 0; j < n_ang; ++j) {
        double th = 2.0 * std::numbers::pi * j / n_ang;
        cplx z = std::polar(radii[k] * spec.R, th);
        cplx v = F(z, spec.b);
        mean += v;
        dev[k] = std::max(dev[k], std::abs(v - rep.target));
      }
      if (k == 2) mean_smallest = mean / double(n_ang);
    }
  } catch (const expr::EvalError& e) {
    rep.regularity_ok = false;
    rep.pass = false;
    rep.message = std::string("evaluation singularity approaching z = 0: ") + e.what();
    return rep;
  }

  rep.observed_limit = mean_smallest;
  rep.worst_dev = dev[2];
  const double budget = tol * scale;
  bool limit_ok = std::abs(rep.observed_limit - rep.target) <= budget;
  bool decays = dev[1] <= 0.5 * dev[0] + budget && dev[2] <= 0.5 * dev[1] + budget;
  rep.pass = limit_ok && decays;
  if (!rep.pass) {
    rep.message = !limit_ok ? "limit of z^q f(z,b) does not match b/Gamma(1-q)"
                            : "z^q f(z,b) does not settle while z -> 0";
  }
  return rep;
}

SupEstimate estimate_M(const ProblemSpec& spec, int gridN, int threads) {
  if (gridN < 2) throw std::invalid_argument("estimate_M: gridN too small");
  auto F = spec.F_fn();
  const cplx target = spec.target();
  const double two_pi = 2.0 * std::numbers::pi;

  auto value_at = [&](double th, double ph) {
    cplx z = std::polar(spec.R, th);
    cplx t = spec.b + std::polar(spec.r, ph);
    return std::abs(F(z, t) - target);
  };

  struct RowBest {
    double v = -1.0;
    double th = 0.0, ph = 0.0;
  };
  std::vector<RowBest> rows(gridN);
  detail::parallel_for(std::size_t(gridN), threads, [&](std::size_t i) {
    RowBest best;
    double th = two_pi * double(i) / gridN;
    for (int j = 0; j < gridN; ++j) {
      double ph = two_pi * double(j) / gridN;
      double v = value_at(th, ph);
      if (v > best.v) best = {v, th, ph};
    }
    rows[i] = best;
  });
  RowBest best;
  for (const RowBest& row : rows)
    if (row.v > best.v) best = row;

  // Coordinate-wise golden refinement around the winning grid cell.
  double step = two_pi / gridN;
  double th = best.th, ph = best.ph, val = best.v;
  for (int sweep = 0; sweep < 4; ++sweep) {
    auto [th2, v1] = detail::golden_max([&](double x) { return value_at(x, ph); },
                                        th - step, th + step);
    th = th2;
    auto [ph2, v2] = detail::golden_max([&](double x) { return value_at(th, x); },
                                        ph - step, ph + step);
    ph = ph2;
    val = std::max(val, std::max(v1, v2));
    step *= 0.25;
  }

  SupEstimate out;
  out.M = val;
  out.argmax = {std::polar(spec.R, th), spec.b + std::polar(spec.r, ph)};
  return out;
}

RadiusResult radius_R0(double M, FracOrder q, double R, double r) {
  if (!(R > 0.0) || !(r > 0.0)) throw std::domain_error("radius_R0: R, r must be positive");
  if (!(M >= 0.0)) throw std::domain_error("radius_R0: M must be nonnegative");
  RadiusResult out;
  out.M = M;
  out.gamma2q = gamma(2.0 - q.value());
  if (M * out.gamma2q <= r) {
    out.branch = RadiusBranch::full;
    out.R0 = R;
  } else {
    out.branch = RadiusBranch::shrunk;
    out.R0 = r * R / (M * out.gamma2q);
  }
  return out;
}

PlainBallBound plain_ball_bound(const ProblemSpec& spec, double Msup) {
  if (!(Msup >= 0.0)) throw std::domain_error("plain_ball_bound: Msup must be nonnegative");
  PlainBallBound out;
  out.bound = Msup * gamma(1.0 - spec.q.value());
  out.sufficient = out.bound <= spec.r;
  return out;
}

}  // namespace fracdisc
