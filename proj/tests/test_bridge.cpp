#include <cmath>

#include "doctest.h"
#include "fracdisc/real_line_bridge.hpp"
#include "test_util.hpp"

using namespace fracdisc;

TEST_CASE("real-line model problem returns u(x) = 1 + x") {
  for (double qv : {0.3, 0.5}) {
    ProblemSpec spec = ProblemSpec::make(
        FracOrder(qv), {1.0, 0.0}, expr::parse("z^(-q)*(t + (q/(1-q))*z)/gamma(1-q)"), 1.0, 1.0);
    RealSolution rs = bridge_solve(spec, {}, 21);
    REQUIRE(rs.complex_solution.converged);
    CHECK(rs.symmetric);
    CHECK(rs.xs.front() == 0.0);
    CHECK(rs.us.front() == 1.0);
    CHECK(rs.xs.back() == doctest::Approx(rs.R0).epsilon(1e-14));
    for (std::size_t j = 0; j < rs.xs.size(); ++j) {
      CHECK(std::abs(rs.us[j] - (1.0 + rs.xs[j])) <= 1e-8);
      if (j > 0) CHECK(rs.xs[j] > rs.xs[j - 1]);
    }
    CHECK(rs.volterra_residual <= 1e-8);
    CHECK(rs.volterra_residual <= 10.0 * std::max(rs.complex_solution.residual, 1e-12));
  }
}

TEST_CASE("zero problem bridges to the zero function") {
  ProblemSpec spec = ProblemSpec::make(FracOrder(0.5), {0.0, 0.0}, expr::parse("0"), 1.0, 1.0);
  RealSolution rs = bridge_solve(spec, {}, 11);
  CHECK(rs.symmetric);
  for (double u : rs.us) CHECK(std::abs(u) <= 1e-13);
  CHECK(rs.volterra_residual <= 1e-13);
}

TEST_CASE("non-real initial values are rejected") {
  ProblemSpec spec = ProblemSpec::make(FracOrder(0.5), {1.0, 0.5}, expr::parse("0"), 1.0, 1.0);
  CHECK_THROWS_AS(bridge_solve(spec, {}, 11), std::invalid_argument);
}
