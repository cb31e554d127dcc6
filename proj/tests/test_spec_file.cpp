#include "doctest.h"
#include "fracdisc/spec_file.hpp"

using namespace fracdisc;

TEST_CASE("spec documents parse with defaults and overrides") {
  SpecFile sf = parse_spec_text(
      "# a comment\n"
      "q = 0.3\n"
      "b = 1 -0.5\n"
      "f = z*t\n"
      "R = 2\n"
      "r = 0.5\n"
      "degree = 12\n"
      "n_quad = 24\n"
      "tol = 1e-8\n"
      "max_iter = 50\n"
      "damping = 0.5\n");
  CHECK(sf.q == 0.3);
  CHECK(sf.b == cplx(1.0, -0.5));
  CHECK(sf.f_text == "z*t");
  CHECK(sf.R == 2.0);
  CHECK(sf.r == 0.5);
  CHECK(sf.solver.degree == 12);
  CHECK(sf.solver.n_quad == 24);
  CHECK(sf.solver.tol == 1e-8);
  CHECK(sf.solver.max_iter == 50);
  CHECK(sf.solver.damping == 0.5);
  CHECK(sf.solver.n_theta == 16);  // untouched default
}

TEST_CASE("single-real b and h entries") {
  SpecFile sf = parse_spec_text("q = 0.5\nb = 2\nh = z/gamma(2-q)\n");
  CHECK(sf.b == cplx(2.0, 0.0));
  REQUIRE(sf.h_text.has_value());
  ProblemSpec spec = to_problem(sf);
  CHECK(expr::references(spec.f, 'z'));
}

TEST_CASE("unknown keys are rejected with the line number") {
  try {
    parse_spec_text("q = 0.5\nf = t\nbogus = 1\n");
    FAIL("expected SpecFileError");
  } catch (const SpecFileError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("malformed entries are rejected") {
  CHECK_THROWS_AS(parse_spec_text("q 0.5\nf = t\n"), SpecFileError);
  CHECK_THROWS_AS(parse_spec_text("q = abc\nf = t\n"), SpecFileError);
  CHECK_THROWS_AS(parse_spec_text("q = 0.5\nb = 1 2 3\nf = t\n"), SpecFileError);
  CHECK_THROWS_AS(parse_spec_text("q = 0.5\n"), SpecFileError);          // no f or h
  CHECK_THROWS_AS(parse_spec_text("q = 1.5\nf = t\n"), SpecFileError);   // q out of range
  CHECK_THROWS_AS(parse_spec_text("q = 0.5\nf = t\nR = -1\n"), SpecFileError);
  CHECK_THROWS_AS(parse_spec_text("q = 0.5\nf = t\ngrid = 8\n"), SpecFileError);
  CHECK_THROWS_AS(parse_spec_text("q = 0.5\nf = t\nmax_iter = 1.5\n"), SpecFileError);
}

TEST_CASE("grid entries feed the torus resolution") {
  SpecFile sf = parse_spec_text("q = 0.5\nf = t\ngrid = 64x48\n");
  REQUIRE(sf.grid.has_value());
  CHECK(sf.grid->first == 64);
  CHECK(sf.grid->second == 48);
  CHECK(sf.solver.m_gridN == 64);
}
