#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracdisc/fractional_ops.hpp"
#include "test_util.hpp"

using namespace fracdisc;
using testutil::rel_err;

namespace {

// Independent coefficient oracle: Gamma(m+1)/Gamma(m+1+s) via the library
// lgamma, never via the implementation's own gamma.
double ratio_oracle(double a, double b) { return std::exp(std::lgamma(a) - std::lgamma(b)); }

PowerSeries random_series(std::mt19937_64& rng, int max_deg, double radius) {
  int deg = 1 + int(rng() % (max_deg));
  std::vector<cplx> c(deg + 1);
  for (auto& x : c) x = testutil::rand_box(rng, 1.0);
  return PowerSeries(std::move(c), radius);
}

}  // namespace

TEST_CASE("FracOrder validates") {
  CHECK_THROWS_AS(FracOrder(0.0), std::domain_error);
  CHECK_THROWS_AS(FracOrder(1.0), std::domain_error);
  CHECK_THROWS_AS(FracOrder(-0.2), std::domain_error);
  CHECK(FracOrder(0.4).value() == 0.4);
}

TEST_CASE("integral of a constant: z^q / Gamma(1+q)") {
  FracOrder q(0.37);
  ScaledSeries out = frac_integral_series(PowerSeries({{1.0, 0.0}}, 1.0), q);
  CHECK(out.exponent == doctest::Approx(0.37));
  CHECK(rel_err(out.series.coeffs[0], {1.0 / std::tgamma(1.37), 0.0}) <= 1e-13);
  // quadrature path at z = 1 for q = 0.5: 1/Gamma(1.5)
  FracOrder half(0.5);
  cplx v = frac_integral_quad([](cplx) { return cplx(1.0, 0.0); }, half, {1.0, 0.0}, 32);
  CHECK(rel_err(v, {1.0 / std::tgamma(1.5), 0.0}) <= 1e-12);
  CHECK(rel_err(v, {1.1283791670955126, 0.0}) <= 1e-10);
}

TEST_CASE("integral of z at q = 1/2") {
  FracOrder q(0.5);
  ScaledSeries out = frac_integral_series(PowerSeries({{0.0, 0.0}, {1.0, 0.0}}, 1.0), q);
  CHECK(rel_err(out.series.coeffs[1], {1.0 / 1.3293403881791370, 0.0}) <= 1e-12);
  // cross-check against quadrature at two points
  for (cplx z : {cplx(0.5, 0.0), cplx(0.0, 0.5)}) {
    cplx series_val = out.eval(z);
    cplx quad_val = frac_integral_quad([](cplx w) { return w; }, q, z, 32);
    CHECK(rel_err(quad_val, series_val) <= 1e-13);
  }
}

TEST_CASE("integral at z = 0 vanishes") {
  FracOrder q(0.5);
  CHECK(frac_integral_quad([](cplx) { return cplx(1.0, 0.0); }, q, {0.0, 0.0}, 16) ==
        cplx(0.0, 0.0));
}

TEST_CASE("quadrature integral of z^2 matches the closed form") {
  FracOrder q(0.3);
  cplx z{0.0, 0.7};
  cplx got = frac_integral_quad([](cplx w) { return w * w; }, q, z, 32);
  cplx want = ratio_oracle(3.0, 3.3) * ppow(z, 2.3);
  CHECK(rel_err(got, want) <= 1e-12);
}

TEST_CASE("derivative of a constant carries the singular prefactor") {
  FracOrder q(0.5);
  cplx b{2.0, -1.0};
  ScaledSeries out = frac_derivative_series(PowerSeries({b}, 1.0), q);
  CHECK(out.exponent == doctest::Approx(-0.5));
  CHECK(rel_err(out.series.coeffs[0], b / std::tgamma(0.5)) <= 1e-13);
  // quadrature split at z = 1
  cplx v = frac_derivative_quad([b](cplx) { return b; }, [](cplx) { return cplx(0.0, 0.0); },
                                q, {1.0, 0.0}, 32);
  CHECK(rel_err(v, b * 0.56418958354775628) <= 1e-12);
  CHECK(rel_err(v, out.eval({1.0, 0.0})) <= 1e-12);
}

TEST_CASE("derivative of z: z^(1-q)/Gamma(2-q)") {
  FracOrder q(0.5);
  ScaledSeries out = frac_derivative_series(PowerSeries({{0.0, 0.0}, {1.0, 0.0}}, 1.0), q);
  cplx z{0.3, 0.4};
  cplx want = ppow(z, 0.5) / std::tgamma(1.5);
  CHECK(rel_err(out.eval(z), want) <= 1e-13);
  cplx quad = frac_derivative_quad([](cplx w) { return w; }, [](cplx) { return cplx(1.0, 0.0); },
                                   q, z, 32);
  CHECK(rel_err(quad, want) <= 1e-12);
}

TEST_CASE("derivative of zero is zero") {
  FracOrder q(0.7);
  ScaledSeries out = frac_derivative_series(PowerSeries({{0.0, 0.0}}, 1.0), q);
  CHECK(out.eval({0.5, 0.2}) == cplx(0.0, 0.0));
}

TEST_CASE("derivative at z = 0: continuity convention") {
  FracOrder q(0.5);
  AnalyticFn u = [](cplx w) { return w * w; };
  AnalyticFn du = [](cplx w) { return 2.0 * w; };
  CHECK(frac_derivative_quad(u, du, q, {0.0, 0.0}, 16) == cplx(0.0, 0.0));
  AnalyticFn c = [](cplx) { return cplx(1.0, 0.0); };
  AnalyticFn dc = [](cplx) { return cplx(0.0, 0.0); };
  CHECK_THROWS_AS(frac_derivative_quad(c, dc, q, {0.0, 0.0}, 16), std::domain_error);
}

TEST_CASE("spectral and quadrature paths agree on random series") {
  std::mt19937_64 rng(31);
  for (double qv : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    FracOrder q(qv);
    for (int trial = 0; trial < 20; ++trial) {
      PowerSeries u = random_series(rng, 20, 1.0);
      ScaledSeries iu = frac_integral_series(u, q);
      for (int p = 0; p < 5; ++p) {
        cplx z = testutil::rand_in_disc(rng, 0.9);
        cplx sv = iu.eval(z);
        cplx qv2 = frac_integral_quad([&](cplx w) { return u.eval(w); }, q, z, 32);
        CHECK(std::abs(sv - qv2) <= 1e-10 * (1.0 + std::abs(sv)));
      }
      ScaledSeries du = frac_derivative_series(u, q);
      PowerSeries uprime = u.derivative();
      for (int p = 0; p < 5; ++p) {
        cplx z = testutil::rand_in_disc(rng, 0.9);
        if (std::abs(z) < 1e-3) continue;
        cplx sv = du.eval(z);
        cplx qv2 = frac_derivative_quad([&](cplx w) { return u.eval(w); },
                                        [&](cplx w) { return uprime.eval(w); }, q, z, 32);
        CHECK(std::abs(sv - qv2) <= 1e-10 * (1.0 + std::abs(sv)));
      }
    }
  }
}

TEST_CASE("monomial coefficients match the independent ratio oracle") {
  for (double qv : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    FracOrder q(qv);
    std::vector<cplx> c(21, cplx(0.0, 0.0));
    for (int n = 0; n <= 20; ++n) c[n] = cplx(1.0, 0.0);
    ScaledSeries iu = frac_integral_series(PowerSeries(c, 1.0), q);
    ScaledSeries du = frac_derivative_series(PowerSeries(c, 1.0), q);
    for (int n = 0; n <= 20; ++n) {
      CHECK(rel_err(iu.series.coeffs[n], {ratio_oracle(n + 1.0, n + 1.0 + qv), 0.0}) <= 1e-12);
      CHECK(rel_err(du.series.coeffs[n], {ratio_oracle(n + 1.0, n + 1.0 - qv), 0.0}) <= 1e-12);
    }
  }
}

TEST_CASE("composition identities on the series path") {
  std::mt19937_64 rng(47);
  for (double qv : {0.2, 0.5, 0.8}) {
    FracOrder q(qv);
    for (int trial = 0; trial < 10; ++trial) {
      PowerSeries u = random_series(rng, 20, 1.0);
      // D I u = u coefficient-wise
      ScaledSeries di = frac_derivative_series(frac_integral_series(u, q), q);
      REQUIRE(di.exponent == doctest::Approx(0.0).epsilon(1e-15));
      REQUIRE(di.series.coeffs.size() >= u.coeffs.size());
      for (std::size_t m = 0; m < u.coeffs.size(); ++m)
        CHECK(std::abs(di.series.coeffs[m] - u.coeffs[m]) <= 1e-11 * (1.0 + std::abs(u.coeffs[m])));
      // I D u = u (analytic representative; holds with u(0) != 0 as well)
      ScaledSeries id = frac_integral_series(frac_derivative_series(u, q), q);
      for (std::size_t m = 0; m < u.coeffs.size(); ++m)
        CHECK(std::abs(id.series.coeffs[m] - u.coeffs[m]) <= 1e-11 * (1.0 + std::abs(u.coeffs[m])));
    }
  }
}

TEST_CASE("composition identities on the quadrature path") {
  std::mt19937_64 rng(53);
  for (double qv : {0.3, 0.6}) {
    FracOrder q(qv);
    PowerSeries u = random_series(rng, 12, 1.0);
    PowerSeries uprime = u.derivative();
    ScaledFn base{0.0, [&](cplx w) { return u.eval(w); }, [&](cplx w) { return uprime.eval(w); }};
    // D(I u) = u pointwise
    ScaledFn iu = frac_integral_quad_fn(base, q, 48);
    ScaledFn diu = frac_derivative_quad_fn(iu, q, 48);
    for (int p = 0; p < 15; ++p) {
      cplx z = testutil::rand_in_disc(rng, 0.9);
      cplx got = eval_scaled(diu, z);
      cplx want = u.eval(z);
      CHECK(std::abs(got - want) <= 1e-8 * (1.0 + std::abs(want)));
    }
    // I(D u) = u pointwise, u(0) = 0 to keep the singular term out
    PowerSeries u0 = u;
    u0.coeffs[0] = {0.0, 0.0};
    PowerSeries u0prime = u0.derivative();
    ScaledFn base0{0.0, [&](cplx w) { return u0.eval(w); },
                   [&](cplx w) { return u0prime.eval(w); }};
    ScaledFn du = frac_derivative_quad_fn(base0, q, 48);
    ScaledFn idu = frac_integral_quad_fn(du, q, 48);
    for (int p = 0; p < 15; ++p) {
      cplx z = testutil::rand_in_disc(rng, 0.9);
      cplx got = eval_scaled(idu, z);
      cplx want = u0.eval(z);
      CHECK(std::abs(got - want) <= 1e-8 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("both operators are linear") {
  std::mt19937_64 rng(61);
  FracOrder q(0.45);
  PowerSeries a = random_series(rng, 8, 1.0);
  PowerSeries b = random_series(rng, 8, 1.0);
  cplx lam = testutil::rand_box(rng, 2.0);
  std::vector<cplx> sum(std::max(a.coeffs.size(), b.coeffs.size()), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) sum[i] += lam * a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) sum[i] += b.coeffs[i];
  PowerSeries combo(sum, 1.0);
  ScaledSeries lhs_i = frac_integral_series(combo, q);
  ScaledSeries ia = frac_integral_series(a, q);
  ScaledSeries ib = frac_integral_series(b, q);
  for (int p = 0; p < 20; ++p) {
    cplx z = testutil::rand_in_disc(rng, 0.9);
    cplx rhs = lam * ia.eval(z) + ib.eval(z);
    CHECK(std::abs(lhs_i.eval(z) - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("real data on the positive axis stays real") {
  std::mt19937_64 rng(71);
  FracOrder q(0.35);
  std::vector<cplx> c(9);
  for (auto& x : c) x = {testutil::rand_range(rng, -1.0, 1.0), 0.0};
  PowerSeries u(c, 1.0);
  PowerSeries uprime = u.derivative();
  for (int p = 0; p < 20; ++p) {
    double x = testutil::rand_range(rng, 1e-3, 0.95);
    cplx iu = frac_integral_quad([&](cplx w) { return u.eval(w); }, q, {x, 0.0}, 32);
    cplx du = frac_derivative_quad([&](cplx w) { return u.eval(w); },
                                   [&](cplx w) { return uprime.eval(w); }, q, {x, 0.0}, 32);
    CHECK(std::abs(iu.imag()) <= 1e-12 * (1.0 + std::abs(iu)));
    CHECK(std::abs(du.imag()) <= 1e-12 * (1.0 + std::abs(du)));
    CHECK(std::abs(frac_integral_series(u, q).eval({x, 0.0}).imag()) <= 1e-12);
  }
}

TEST_CASE("fixed-point operator: constant right-hand side returns b") {
  FracOrder q(0.6);
  cplx b{0.7, 0.2};
  double g1q = std::tgamma(1.0 - 0.6);
  AnalyticFn2 F = [&](cplx, cplx) { return b / g1q; };
  AnalyticFn u = [&](cplx) { return b; };
  for (cplx z : {cplx(0.5, 0.0), cplx(0.0, 0.8), cplx(-0.3, 0.3)}) {
    CHECK(rel_err(apply_T(F, u, q, z, 32), b) <= 1e-12);
  }
  // z = 0 anchor
  CHECK(rel_err(apply_T(F, u, q, {0.0, 0.0}, 32), b) <= 1e-13);
}

TEST_CASE("fixed-point operator: the affine model problem") {
  // F(z,t) = (t + (q/(1-q)) z)/Gamma(1-q) fixes u(z) = b + z.
  for (double qv : {0.3, 0.5, 0.7}) {
    FracOrder q(qv);
    double g1q = std::tgamma(1.0 - qv);
    cplx b{1.0, 0.0};
    AnalyticFn2 F = [&](cplx z, cplx t) { return (t + (qv / (1.0 - qv)) * z) / g1q; };
    AnalyticFn u = [&](cplx z) { return b + z; };
    std::mt19937_64 rng(83);
    for (int p = 0; p < 20; ++p) {
      cplx z = testutil::rand_in_disc(rng, 1.0);
      cplx want = b + z;
      CHECK(std::abs(apply_T(F, u, q, z, 32) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("scaled series: fractional prefactors representable") {
  // z^(1-q) handled through the scaled representation
  FracOrder q(0.4);
  ScaledSeries s{0.6, PowerSeries({{1.0, 0.0}}, 1.0)};
  ScaledSeries is = frac_integral_series(s, q);
  // I^q z^0.6 = Gamma(1.6)/Gamma(2.0) z^1.0 -> normalized into the series
  CHECK(is.exponent == doctest::Approx(0.0).epsilon(1e-14));
  REQUIRE(is.series.coeffs.size() == 2);
  CHECK(rel_err(is.series.coeffs[1], {std::tgamma(1.6) / std::tgamma(2.0), 0.0}) <= 1e-12);
  // derivative below the representable band is rejected
  ScaledSeries low{-0.5, PowerSeries({{1.0, 0.0}}, 1.0)};
  CHECK_THROWS_AS(frac_derivative_series(low, FracOrder(0.9)), std::domain_error);
}
