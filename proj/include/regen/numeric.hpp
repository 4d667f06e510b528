#pragma once

#include <cmath>
#include <functional>

namespace regen {

struct Minimum {
  double x;
  double value;
};

// Golden-section search for a minimum of a unimodal f on [lo, hi];
// stops when the bracket is narrower than tol.
inline Minimum golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

} // namespace regen
