#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "regen/regen_core.hpp"

namespace regen {

struct EstimateReport {
  double theta_hat = 0.0;
  std::int64_t n_target = 0;
  std::int64_t total_length = 0;
  std::int64_t tour_count = 0;
  std::int64_t overshoot = 0;
};

// Sum of the block sums over T_{R(n)}.
EstimateReport estimate(const SequentialRun& run);

// Middle order statistic of an odd-length sample. Throws EvenLength.
double median_of_means(std::span<const double> estimates);

struct ConfidencePlan {
  double epsilon = 0.0;
  double alpha = 0.0;
  double sigma_as_sq_bound = 0.0;
  double n0_bound = 0.0;
  std::int64_t n = 0;
  std::int64_t l = 0;
  double delta_star = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double expected_total_cost = 0.0;  // (n + n0_bound) * l
};

// n = ceil(C1 sigma^2 / eps^2 + n0), l = smallest odd integer >= C2 ln(1 / (2 alpha)).
// Throws InvalidAlpha for alpha outside (0, 1/2).
ConfidencePlan plan(double sigma_as_sq_bound, double n0_bound, double epsilon, double alpha);

struct ConfidentEstimate {
  double theta = 0.0;
  std::vector<EstimateReport> reports;
  std::int64_t total_steps = 0;
};

// l independent sequential runs from nu, each on the stream
// derive_seed(master_seed, {Confidence, stream_id, j}), combined by the median.
// Runs execute on up to `threads` workers; the result does not depend on it.
ConfidentEstimate run_confident_estimate(const SplitKernel& kernel, const TargetFunction& f,
                                         const ConfidencePlan& plan, std::uint64_t master_seed,
                                         std::uint64_t stream_id = 0, int threads = 1);

// Block statistics of i.i.d. tours: plug-in estimates of m = E tau,
// E tau^2, n0 and sigma_as^2 = E Xi(fbar)^2 / E tau for a known theta.
struct TourSummary {
  std::int64_t tours = 0;
  double mean_tau = 0.0;
  double mean_tau_sq = 0.0;
  double stderr_tau_sq = 0.0;
  double n0 = 0.0;           // mean_tau_sq / mean_tau - 1
  double stderr_n0 = 0.0;    // delta method
  double sigma_as_sq = 0.0;  // mean(Xi(fbar)^2) / mean(tau)
  double stderr_sigma_as_sq = 0.0;
};

TourSummary summarize_tours(std::span<const Tour> tours, double theta);

} // namespace regen
