#pragma once

#include <cmath>
#include <utility>

namespace fracdisc::detail {

/// Golden-section maximization of f on [a, b]; returns (x, f(x)).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iters = 80) {
  constexpr double phi = 0.61803398874989485;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace fracdisc::detail
