#include "regen/confidence_constants.hpp"

#include <cmath>

#include "regen/error.hpp"

namespace regen {

namespace {

// d/d delta of delta * ln(1 / (4 delta (1 - delta))); C1 * C2 = 2 / that product,
// so the minimizer of C1 * C2 is the unique root of this derivative in (0, 1/2).
double stationarity(double delta) {
  return -std::log(4.0 * delta * (1.0 - delta)) - (1.0 - 2.0 * delta) / (1.0 - delta);
}

bool close_rel(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }

} // namespace

ConfidenceConstants compute_confidence_constants() {
  // stationarity() is positive near 0 and negative near 1/2.
  double lo = 1e-6;
  double hi = 0.5 - 1e-9;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (stationarity(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  ConfidenceConstants k{};
  k.delta_star = 0.5 * (lo + hi);
  k.c1 = 1.0 / k.delta_star;
  k.c2 = 2.0 / std::log(1.0 / (4.0 * k.delta_star * (1.0 - k.delta_star)));
  k.c = k.c1 * k.c2;
  return k;
}

const ConfidenceConstants& confidence_constants() {
  static const ConfidenceConstants constants = [] {
    const ConfidenceConstants k = compute_confidence_constants();
    if (!close_rel(k.delta_star, kStoredDeltaStar, 1e-6) || !close_rel(k.c1, kStoredC1, 1e-6) ||
        !close_rel(k.c2, kStoredC2, 1e-6))
      throw Error("confidence constants disagree with their stored values");
    return k;
  }();
  return constants;
}

} // namespace regen
