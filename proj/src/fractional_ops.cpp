#include "fracdisc/fractional_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace fracdisc {

FracOrder::FracOrder(double q) : q_(q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("FracOrder: q must lie in (0,1)");
}

PowerSeries::PowerSeries(std::vector<cplx> c, double r) : coeffs(std::move(c)), radius(r) {
  if (coeffs.empty()) coeffs.push_back({0.0, 0.0});
  if (!(radius > 0.0)) throw std::domain_error("PowerSeries: radius must be positive");
}

cplx PowerSeries::eval(cplx z) const {
  cplx acc{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

PowerSeries PowerSeries::derivative() const {
  if (coeffs.size() <= 1) return PowerSeries({{0.0, 0.0}}, radius);
  std::vector<cplx> d(coeffs.size() - 1);
  for (std::size_t m = 1; m < coeffs.size(); ++m) d[m - 1] = double(m) * coeffs[m];
  return PowerSeries(std::move(d), radius);
}

cplx ScaledSeries::eval(cplx z) const {
  if (z == cplx(0.0, 0.0)) {
    if (exponent > 0.0) return {0.0, 0.0};
    if (exponent == 0.0) return series.coeffs.empty() ? cplx{} : series.coeffs[0];
    if (!series.coeffs.empty() && series.coeffs[0] == cplx(0.0, 0.0)) return {0.0, 0.0};
    throw std::domain_error("ScaledSeries: singular at z = 0");
  }
  return ppow(z, exponent) * series.eval(z);
}

namespace {

double gamma_ratio(double a, double b) { return std::exp(log_gamma(a) - log_gamma(b)); }

// Shifts z^e * sum a_m z^m into the representable band e in (-1, 1) by moving
// whole powers of z into the series.
ScaledSeries normalized(double e, PowerSeries s) {
  while (e >= 1.0) {
    s.coeffs.insert(s.coeffs.begin(), cplx(0.0, 0.0));
    e -= 1.0;
  }
  if (!(e > -1.0)) throw std::domain_error("ScaledSeries: exponent must exceed -1");
  return ScaledSeries{e, std::move(s)};
}

}  // namespace

ScaledSeries frac_integral_series(const ScaledSeries& u, FracOrder q) {
  const double e = u.exponent;
  PowerSeries out = u.series;
  for (std::size_t m = 0; m < out.coeffs.size(); ++m)
    out.coeffs[m] *= gamma_ratio(double(m) + e + 1.0, double(m) + e + 1.0 + q.value());
  return normalized(e + q.value(), std::move(out));
}

ScaledSeries frac_integral_series(const PowerSeries& u, FracOrder q) {
  return frac_integral_series(ScaledSeries{0.0, u}, q);
}

ScaledSeries frac_derivative_series(const ScaledSeries& u, FracOrder q) {
  const double e = u.exponent;
  if (!(e - q.value() > -1.0))
    throw std::domain_error("frac_derivative_series: resulting prefactor not representable");
  PowerSeries out = u.series;
  for (std::size_t m = 0; m < out.coeffs.size(); ++m)
    out.coeffs[m] *= gamma_ratio(double(m) + e + 1.0, double(m) + e + 1.0 - q.value());
  return normalized(e - q.value(), std::move(out));
}

ScaledSeries frac_derivative_series(const PowerSeries& u, FracOrder q) {
  return frac_derivative_series(ScaledSeries{0.0, u}, q);
}

cplx eval_scaled(const ScaledFn& f, cplx z) {
  if (z == cplx(0.0, 0.0)) {
    if (f.exponent > 0.0) return {0.0, 0.0};
    if (f.exponent == 0.0) return f.w(z);
    cplx w0 = f.w(z);
    if (w0 == cplx(0.0, 0.0)) return {0.0, 0.0};
    throw std::domain_error("eval_scaled: singular at z = 0");
  }
  return ppow(z, f.exponent) * f.w(z);
}

cplx frac_integral_quad(const AnalyticFn& u, FracOrder q, cplx z, int n) {
  if (z == cplx(0.0, 0.0)) return {0.0, 0.0};
  auto rule = jacobi_rule_cached(q.value() - 1.0, 0.0, n);
  cplx s = rule->apply([&](double t) { return u(z * t); });
  return ppow(z, q.value()) * s / gamma(q.value());
}

cplx frac_derivative_quad(const AnalyticFn& u, const AnalyticFn& uprime, FracOrder q,
                          cplx z, int n) {
  const cplx u0 = u(cplx(0.0, 0.0));
  if (z == cplx(0.0, 0.0)) {
    if (u0 == cplx(0.0, 0.0)) return {0.0, 0.0};
    throw std::domain_error("frac_derivative_quad: singular at z = 0");
  }
  const double q1 = 1.0 - q.value();
  cplx singular = u0 * ppow(z, -q.value()) / gamma(q1);
  return singular + frac_integral_quad(uprime, FracOrder(q1), z, n);
}

ScaledFn frac_integral_quad_fn(const ScaledFn& u, FracOrder q, int n) {
  const double e = u.exponent;
  const double gq = gamma(q.value());
  auto rule0 = jacobi_rule_cached(q.value() - 1.0, e, n);
  AnalyticFn w = [rule0, gq, uw = u.w](cplx z) {
    return rule0->apply([&](double t) { return uw(z * t); }) / gq;
  };
  AnalyticFn dw;
  if (u.dw) {
    auto rule1 = jacobi_rule_cached(q.value() - 1.0, e + 1.0, n);
    dw = [rule1, gq, udw = u.dw](cplx z) {
      return rule1->apply([&](double t) { return udw(z * t); }) / gq;
    };
  }
  return ScaledFn{e + q.value(), std::move(w), std::move(dw)};
}

ScaledFn frac_derivative_quad_fn(const ScaledFn& u, FracOrder q, int n) {
  if (!u.dw)
    throw std::invalid_argument("frac_derivative_quad_fn: derivative of the analytic factor required");
  const double e = u.exponent;
  if (!(e - q.value() > -1.0))
    throw std::domain_error("frac_derivative_quad_fn: resulting prefactor not representable");
  const double g1q = gamma(1.0 - q.value());
  auto rule0 = jacobi_rule_cached(-q.value(), e, n);
  auto rule1 = jacobi_rule_cached(-q.value(), e + 1.0, n);
  AnalyticFn v = [rule0, rule1, g1q, e, qv = q.value(), uw = u.w, udw = u.dw](cplx z) {
    cplx s = rule0->apply([&](double t) { return uw(z * t); }) / g1q;
    cplx sp = rule1->apply([&](double t) { return udw(z * t); }) / g1q;
    return (e + 1.0 - qv) * s + z * sp;
  };
  return ScaledFn{e - q.value(), std::move(v), AnalyticFn{}};
}

cplx apply_T(const AnalyticFn2& F, const AnalyticFn& u, FracOrder q, cplx z, int n) {
  if (z == cplx(0.0, 0.0)) return gamma(1.0 - q.value()) * F(z, u(z));
  auto rule = jacobi_rule_cached(q.value() - 1.0, -q.value(), n);
  cplx s = rule->apply([&](double t) {
    cplx zt = z * t;
    return F(zt, u(zt));
  });
  return s / gamma(q.value());
}

}  // namespace fracdisc
