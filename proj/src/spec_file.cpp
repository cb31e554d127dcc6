#include "fracdisc/spec_file.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fracdisc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key, int line) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || trim(std::string(end)) != "")
    throw SpecFileError("invalid numeric value for '" + key + "'", line);
  return x;
}

int parse_int(const std::string& v, const std::string& key, int line) {
  double x = parse_double(v, key, line);
  int i = int(x);
  if (double(i) != x) throw SpecFileError("'" + key + "' must be an integer", line);
  return i;
}

}  // namespace

SpecFile parse_spec_text(const std::string& text) {
  SpecFile sf;
  bool saw_f = false;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecFileError("expected 'key = value'", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw SpecFileError("empty value for '" + key + "'", line_no);

    if (key == "q") {
      sf.q = parse_double(value, key, line_no);
    } else if (key == "b") {
      std::istringstream bs(value);
      double re = 0.0, im = 0.0;
      if (!(bs >> re)) throw SpecFileError("invalid value for 'b'", line_no);
      if (!(bs >> im)) im = 0.0;
      std::string rest;
      if (bs.clear(), std::getline(bs, rest); trim(rest) != "")
        throw SpecFileError("'b' takes one or two reals (re [im])", line_no);
      sf.b = {re, im};
    } else if (key == "f") {
      sf.f_text = value;
      saw_f = true;
    } else if (key == "h") {
      sf.h_text = value;
    } else if (key == "R") {
      sf.R = parse_double(value, key, line_no);
    } else if (key == "r") {
      sf.r = parse_double(value, key, line_no);
    } else if (key == "degree") {
      sf.solver.degree = parse_int(value, key, line_no);
    } else if (key == "n_theta") {
      sf.solver.n_theta = parse_int(value, key, line_no);
    } else if (key == "n_rad") {
      sf.solver.n_rad = parse_int(value, key, line_no);
    } else if (key == "n_quad") {
      sf.solver.n_quad = parse_int(value, key, line_no);
    } else if (key == "tol") {
      sf.solver.tol = parse_double(value, key, line_no);
    } else if (key == "max_iter") {
      sf.solver.max_iter = parse_int(value, key, line_no);
    } else if (key == "damping") {
      sf.solver.damping = parse_double(value, key, line_no);
    } else if (key == "compat_tol") {
      sf.solver.compat_tol = parse_double(value, key, line_no);
    } else if (key == "grid") {
      auto x = value.find('x');
      if (x == std::string::npos) x = value.find('X');
      if (x == std::string::npos)
        throw SpecFileError("'grid' must look like NxM", line_no);
      int n = parse_int(trim(value.substr(0, x)), key, line_no);
      int m = parse_int(trim(value.substr(x + 1)), key, line_no);
      sf.grid = {n, m};
      sf.solver.m_gridN = std::max(n, m);
    } else {
      throw SpecFileError("unknown key '" + key + "'", line_no);
    }
  }
  if (!saw_f && !sf.h_text)
    throw SpecFileError("missing 'f' (or 'h') entry", line_no == 0 ? 1 : line_no);
  if (!(sf.q > 0.0 && sf.q < 1.0))
    throw SpecFileError("'q' must lie strictly between 0 and 1", line_no);
  if (!(sf.R > 0.0) || !(sf.r > 0.0))
    throw SpecFileError("'R' and 'r' must be positive", line_no);
  return sf;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

ProblemSpec to_problem(const SpecFile& sf) {
  if (sf.f_text.empty()) {
    if (sf.h_text)  // classify-style document: f = z^-q h(z)
      return ProblemSpec::make(FracOrder(sf.q), sf.b,
                               expr::parse("z^(-q)*(" + *sf.h_text + ")"), sf.R, sf.r);
    throw std::runtime_error("spec document has no 'f' expression");
  }
  return ProblemSpec::make(FracOrder(sf.q), sf.b, expr::parse(sf.f_text), sf.R, sf.r);
}

}  // namespace fracdisc
