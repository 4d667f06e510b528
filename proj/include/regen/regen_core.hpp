#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "regen/split_kernel.hpp"

namespace regen {

using TargetFunction = std::function<double(State)>;

// One regeneration block: states X_{T_{k-1}}, ..., X_{T_k - 1}.
struct Tour {
  std::int64_t length = 0;
  double block_sum = 0.0;               // sum of f over the tour
  std::optional<double> block_sum_v;    // sum of V, when a drift function is registered
  std::optional<double> block_sum_v2;   // sum of V^2
  std::vector<State> states;            // populated only with retain_states
};

struct SequentialRun {
  std::vector<Tour> tours;
  std::int64_t n_target = 0;
  std::int64_t total_length = 0;   // T_{R(n)}
  std::int64_t tour_count = 0;     // R(n)
  std::int64_t overshoot = 0;      // T_{R(n)} - n
  std::int64_t burned_in_steps = 0;
  // True for runs started from a fixed state: the tours are post-burn-in and
  // the guarantees stated for X_0 ~ nu do not cover the discarded segment.
  bool post_burn_in = false;
};

struct StartFromNu {};
struct StartFromState {
  State x;
};

struct RunOptions {
  std::int64_t tour_cap = 1'000'000'000;
  bool retain_states = false;
  // Drift function; when set, tours also carry sums of V and V^2.
  std::function<double(State)> drift_v;
};

struct SplitStep {
  State next_state;
  bool regenerated;
};

inline constexpr double kRatioTolerance = 1e-12;

// One transition of the split chain: next ~ P(state, .), then the
// regeneration flag is drawn with probability mykland_ratio(state, next).
// Throws RatioOutOfRange if the ratio leaves [0, 1 + 1e-12].
SplitStep step_split(const SplitKernel& kernel, State state, Rng& rng);

// A tour started from nu, run until the first regeneration flag.
Tour sample_block(const SplitKernel& kernel, const TargetFunction& f, Rng& rng,
                  const RunOptions& options = {});

// Tours until the first regeneration at or past n. From a fixed state the
// steps before the first regeneration are discarded (burn-in).
SequentialRun run_sequential(const SplitKernel& kernel, const TargetFunction& f, std::int64_t n,
                             StartFromNu start, Rng& rng, const RunOptions& options = {});
SequentialRun run_sequential(const SplitKernel& kernel, const TargetFunction& f, std::int64_t n,
                             StartFromState start, Rng& rng, const RunOptions& options = {});

// sum_{n=1}^{T-1} g(X_n) for one path from X_0 = x, T the first regeneration.
double pre_regeneration_sum(const SplitKernel& kernel, const TargetFunction& g, State x,
                            Rng& rng, std::int64_t cap = 1'000'000'000);

// Sum of f over states concatenated across tours; requires retain_states.
double trajectory_sum(std::span<const Tour> tours, const TargetFunction& f);

} // namespace regen
