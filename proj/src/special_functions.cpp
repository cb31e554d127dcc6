#include "fracdisc/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace fracdisc {

double principal_arg(cplx w) {
  double re = w.real();
  double im = w.imag();
  if (im == 0.0) im = +0.0;  // force Arg(negative real) = +pi
  return std::atan2(im, re);
}

cplx ppow(cplx w, double a) {
  if (w == cplx(0.0, 0.0)) {
    if (a > 0.0) return {0.0, 0.0};
    if (a == 0.0) return {1.0, 0.0};
    throw std::domain_error("ppow: zero base with negative exponent");
  }
  if (a == std::round(a) && std::abs(a) <= 64.0) {
    // integer exponents: algebraic power, exact on the reals
    long k = long(a);
    cplx base = k < 0 ? 1.0 / w : w;
    unsigned long m = k < 0 ? -(unsigned long)(k) : (unsigned long)(k);
    cplx acc{1.0, 0.0};
    while (m) {
      if (m & 1) acc *= base;
      base *= base;
      m >>= 1;
    }
    return acc;
  }
  return std::polar(std::pow(std::abs(w), a), a * principal_arg(w));
}

cplx plog(cplx w) {
  if (w == cplx(0.0, 0.0)) throw std::domain_error("plog: logarithm of zero");
  return {std::log(std::abs(w)), principal_arg(w)};
}

namespace {

// Lanczos, g = 7, 9 terms; relative error well below 1e-13 for x >= 0.5.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double x) {
  double a = kLanczos[0];
  for (int k = 1; k < 9; ++k) a += kLanczos[k] / (x - 1.0 + k);
  return a;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma: argument must be positive");
  if (x < 0.5) return gamma(x + 1.0) / x;
  const double t = x + kLanczosG - 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) *
         lanczos_sum(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double t = x + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) - t +
         std::log(lanczos_sum(x));
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta: arguments must be positive");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

namespace {

// Symmetric tridiagonal QL with implicit shifts, accumulating only the first
// row of the eigenvector matrix (all that Golub-Welsch weights need).
// d: diagonal, e: subdiagonal (e[0..n-2]), z: first-row accumulator.
void tridiag_ql_first_row(std::vector<double>& d, std::vector<double>& e,
                          std::vector<double>& z) {
  const int n = int(d.size());
  if (n == 1) return;
  e.resize(n, 0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw std::runtime_error("jacobi_rule: tridiagonal eigensolve did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

QuadRule jacobi_rule(double alpha, double beta_exp, int n) {
  if (!(alpha > -1.0) || !(beta_exp > -1.0))
    throw std::domain_error("jacobi_rule: exponents must exceed -1");
  if (n < 1) throw std::domain_error("jacobi_rule: need at least one node");

  const double a = alpha, b = beta_exp;
  // Monic Jacobi recurrence on [-1,1] with weight (1-x)^a (1+x)^b.
  std::vector<double> diag(n), sub(n, 0.0);
  diag[0] = (b - a) / (a + b + 2.0);
  for (int k = 1; k < n; ++k) {
    double s = 2.0 * k + a + b;
    diag[k] = (b * b - a * a) / (s * (s + 2.0));
    double bk;
    if (k == 1) {
      bk = 4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    } else {
      bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(bk);
  }

  std::vector<double> first(n, 0.0);
  first[0] = 1.0;
  tridiag_ql_first_row(diag, sub, first);

  std::vector<std::pair<double, double>> pairs(n);
  const double total = fracdisc::beta(b + 1.0, a + 1.0);  // zeroth moment on [0,1]
  for (int i = 0; i < n; ++i) pairs[i] = {diag[i], total * first[i] * first[i]};
  std::sort(pairs.begin(), pairs.end());

  QuadRule rule;
  rule.alpha = alpha;
  rule.beta = beta_exp;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (pairs[i].first + 1.0);  // map [-1,1] -> [0,1]
    rule.weights[i] = pairs[i].second;
  }
  for (int i = 0; i < n; ++i) {
    if (!(rule.nodes[i] > 0.0 && rule.nodes[i] < 1.0) || !(rule.weights[i] > 0.0) ||
        (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1])))
      throw std::runtime_error("jacobi_rule: invalid rule produced");
  }
  return rule;
}

std::shared_ptr<const QuadRule> jacobi_rule_cached(double alpha, double beta_exp, int n) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int>, std::shared_ptr<const QuadRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(alpha, beta_exp, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const QuadRule>(jacobi_rule(alpha, beta_exp, n));
  cache.emplace(key, rule);
  return rule;
}

}  // namespace fracdisc
