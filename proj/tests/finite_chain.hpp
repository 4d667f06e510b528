#pragma once
// Three-state test chain with a proper small set J = {0, 1}, plus exact
// answers computed by direct linear algebra.

#include <array>
#include <cmath>

#include "regen/rng.hpp"
#include "regen/split_kernel.hpp"

namespace regen::testing {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

inline Vec3 solve3(Mat3 a, Vec3 b) {
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double k = a[r][c] / a[c][c];
      for (int j = 0; j < 3; ++j) a[r][j] -= k * a[c][j];
      b[r] -= k * b[c];
    }
  }
  return {b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2]};
}

class FiniteChain final : public SplitKernel {
public:
  static constexpr Mat3 kP{{{0.5, 0.3, 0.2}, {0.2, 0.5, 0.3}, {0.3, 0.3, 0.4}}};

  FiniteChain() {
    beta_ = 0.0;
    for (int y = 0; y < 3; ++y) {
      bnu_[y] = std::min(kP[0][y], kP[1][y]);
      beta_ += bnu_[y];
    }
  }

  State sample_transition(State x, Rng& rng) const override {
    const auto& row = kP[static_cast<int>(x)];
    const double u = uniform01(rng);
    double c = 0.0;
    for (int y = 0; y < 3; ++y) {
      c += row[y];
      if (u < c) return y;
    }
    return 2;
  }
  double mykland_ratio(State x, State y) const override {
    if (!in_small_set(x)) return 0.0;
    return bnu_[static_cast<int>(y)] / kP[static_cast<int>(x)][static_cast<int>(y)];
  }
  bool in_small_set(State x) const override { return x < 1.5; }
  State sample_nu(Rng& rng) const override {
    const double u = uniform01(rng) * beta_;
    double c = 0.0;
    for (int y = 0; y < 3; ++y) {
      c += bnu_[y];
      if (u < c) return y;
    }
    return 2;
  }
  double beta() const override { return beta_; }

  Vec3 nu() const { return {bnu_[0] / beta_, bnu_[1] / beta_, bnu_[2] / beta_}; }

  // Sub-stochastic kernel of non-regenerating moves.
  Mat3 residual() const {
    Mat3 r = kP;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 3; ++y) r[x][y] -= bnu_[y];
    return r;
  }

  Vec3 stationary() const {
    // pi (P - I) = 0 with sum pi = 1: replace one equation by the normalization.
    Mat3 a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = kP[j][i] - (i == j ? 1.0 : 0.0);
    a[2] = {1.0, 1.0, 1.0};
    return solve3(a, {0.0, 0.0, 1.0});
  }

  // E_x tau and E_x tau^2 from the renewal equations, then averaged over nu.
  std::array<double, 2> tau_moments() const {
    const Mat3 r = residual();
    Mat3 a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - r[i][j];
    const Vec3 g = solve3(a, {1.0, 1.0, 1.0});
    Vec3 rhs{};
    for (int i = 0; i < 3; ++i) {
      rhs[i] = 1.0;
      for (int j = 0; j < 3; ++j) rhs[i] += 2.0 * r[i][j] * g[j];
    }
    const Vec3 s = solve3(a, rhs);
    const Vec3 n = nu();
    return {n[0] * g[0] + n[1] * g[1] + n[2] * g[2], n[0] * s[0] + n[1] * s[1] + n[2] * s[2]};
  }

  // sigma_as^2 of f via the fundamental matrix Z = (I - P + 1 pi)^{-1}.
  double asymptotic_variance(const Vec3& f) const {
    const Vec3 pi = stationary();
    const double theta = pi[0] * f[0] + pi[1] * f[1] + pi[2] * f[2];
    const Vec3 fb{f[0] - theta, f[1] - theta, f[2] - theta};
    Mat3 a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - kP[i][j] + pi[j];
    const Vec3 zf = solve3(a, fb);
    double v = 0.0;
    for (int i = 0; i < 3; ++i) v += pi[i] * fb[i] * (2.0 * zf[i] - fb[i]);
    return v;
  }

private:
  Vec3 bnu_{};
  double beta_ = 0.0;
};

} // namespace regen::testing
