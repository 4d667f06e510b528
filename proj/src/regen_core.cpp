#include "regen/regen_core.hpp"

#include <cmath>
#include <string>

#include "regen/error.hpp"
#include "regen/summation.hpp"

namespace regen {

namespace {

struct TourResult {
  Tour tour;
  State next_state;  // X_{T_k}, distributed as nu given the regeneration
};

// Runs one tour from `start` until a regeneration flag is raised.
TourResult run_tour(const SplitKernel& kernel, const TargetFunction& f, State start, Rng& rng,
                    const RunOptions& options) {
  TourResult out;
  Tour& tour = out.tour;
  CompensatedSum sum_f;
  CompensatedSum sum_v;
  CompensatedSum sum_v2;
  const bool with_v = static_cast<bool>(options.drift_v);
  State x = start;
  for (;;) {
    if (tour.length >= options.tour_cap)
      throw TourLengthOverflow("tour exceeded " + std::to_string(options.tour_cap) +
                               " steps; the model does not regenerate");
    ++tour.length;
    sum_f += f(x);
    if (with_v) {
      const double v = options.drift_v(x);
      sum_v += v;
      sum_v2 += v * v;
    }
    if (options.retain_states) tour.states.push_back(x);
    const SplitStep step = step_split(kernel, x, rng);
    x = step.next_state;
    if (step.regenerated) break;
  }
  tour.block_sum = sum_f.value();
  if (with_v) {
    tour.block_sum_v = sum_v.value();
    tour.block_sum_v2 = sum_v2.value();
  }
  out.next_state = x;
  return out;
}

void check_target(std::int64_t n) {
  if (n < 1) throw InvalidParameter("run_sequential: n must be >= 1");
}

// Collects tours starting at `x` until the total length reaches n.
void collect_tours(SequentialRun& run, const SplitKernel& kernel, const TargetFunction& f,
                   State x, Rng& rng, const RunOptions& options) {
  while (run.total_length < run.n_target) {
    TourResult r = run_tour(kernel, f, x, rng, options);
    run.total_length += r.tour.length;
    run.tours.push_back(std::move(r.tour));
    x = r.next_state;
  }
  run.tour_count = static_cast<std::int64_t>(run.tours.size());
  run.overshoot = run.total_length - run.n_target;
}

} // namespace

SplitStep step_split(const SplitKernel& kernel, State state, Rng& rng) {
  const State next = kernel.sample_transition(state, rng);
  const double ratio = kernel.mykland_ratio(state, next);
  if (!(ratio >= 0.0 && ratio <= 1.0 + kRatioTolerance))
    throw RatioOutOfRange("mykland ratio " + std::to_string(ratio) + " outside [0, 1] at x = " +
                          std::to_string(state) + ", y = " + std::to_string(next));
  const double u = uniform01(rng);
  return {next, u < ratio};
}

Tour sample_block(const SplitKernel& kernel, const TargetFunction& f, Rng& rng,
                  const RunOptions& options) {
  const State x0 = kernel.sample_nu(rng);
  return run_tour(kernel, f, x0, rng, options).tour;
}

SequentialRun run_sequential(const SplitKernel& kernel, const TargetFunction& f, std::int64_t n,
                             StartFromNu, Rng& rng, const RunOptions& options) {
  check_target(n);
  SequentialRun run;
  run.n_target = n;
  collect_tours(run, kernel, f, kernel.sample_nu(rng), rng, options);
  return run;
}

SequentialRun run_sequential(const SplitKernel& kernel, const TargetFunction& f, std::int64_t n,
                             StartFromState start, Rng& rng, const RunOptions& options) {
  check_target(n);
  SequentialRun run;
  run.n_target = n;
  run.post_burn_in = true;
  State x = start.x;
  for (;;) {
    if (run.burned_in_steps >= options.tour_cap)
      throw TourLengthOverflow("burn-in exceeded " + std::to_string(options.tour_cap) +
                               " steps; the model does not regenerate");
    ++run.burned_in_steps;
    const SplitStep step = step_split(kernel, x, rng);
    x = step.next_state;
    if (step.regenerated) break;
  }
  collect_tours(run, kernel, f, x, rng, options);
  return run;
}

double pre_regeneration_sum(const SplitKernel& kernel, const TargetFunction& g, State x,
                            Rng& rng, std::int64_t cap) {
  CompensatedSum s;
  for (std::int64_t steps = 0;; ++steps) {
    if (steps >= cap) throw TourLengthOverflow("pre_regeneration_sum: no regeneration");
    const SplitStep step = step_split(kernel, x, rng);
    if (step.regenerated) break;
    x = step.next_state;
    s += g(x);
  }
  return s.value();
}

double trajectory_sum(std::span<const Tour> tours, const TargetFunction& f) {
  CompensatedSum s;
  for (const Tour& t : tours) {
    if (static_cast<std::int64_t>(t.states.size()) != t.length)
      throw InvalidParameter("trajectory_sum: tours were recorded without retain_states");
    for (State x : t.states) s += f(x);
  }
  return s.value();
}

} // namespace regen
