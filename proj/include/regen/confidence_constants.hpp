#pragma once

namespace regen {

// Constants of the median-of-estimates confidence recipe.
//
//   C1 = 1 / delta*,  C2 = 2 / ln(1 / (4 delta* (1 - delta*))),  C = C1 * C2,
//
// where delta* in (0, 1/2) minimizes C1 * C2, i.e. the total sample count
// n * l when the per-run failure bound behaves like const / n.
struct ConfidenceConstants {
  double delta_star;
  double c1;
  double c2;
  double c;
};

inline constexpr double kStoredDeltaStar = 0.1196900808;
inline constexpr double kStoredC1 = 8.354911226;
inline constexpr double kStoredC2 = 2.314717221;

// Solves for delta* on first use and checks the stored values to 1e-6
// relative; throws regen::Error on mismatch.
const ConfidenceConstants& confidence_constants();

// Recomputes from scratch (no caching).
ConfidenceConstants compute_confidence_constants();

} // namespace regen
