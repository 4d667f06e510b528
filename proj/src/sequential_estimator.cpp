#include "regen/sequential_estimator.hpp"

#include <algorithm>
#include <cmath>

#include "regen/bound_calc.hpp"
#include "regen/confidence_constants.hpp"
#include "regen/error.hpp"
#include "regen/parallel.hpp"
#include "regen/summation.hpp"

namespace regen {

EstimateReport estimate(const SequentialRun& run) {
  if (run.tours.empty()) throw InvalidParameter("estimate: run has no tours");
  CompensatedSum sum;
  for (const Tour& t : run.tours) sum += t.block_sum;
  EstimateReport r;
  r.theta_hat = sum.value() / static_cast<double>(run.total_length);
  r.n_target = run.n_target;
  r.total_length = run.total_length;
  r.tour_count = run.tour_count;
  r.overshoot = run.overshoot;
  return r;
}

double median_of_means(std::span<const double> estimates) {
  if (estimates.empty()) throw EvenLength("median_of_means: empty sample");
  if (estimates.size() % 2 == 0) throw EvenLength("median_of_means: sample length must be odd");
  std::vector<double> v(estimates.begin(), estimates.end());
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

ConfidencePlan plan(double sigma_as_sq_bound, double n0_bound, double epsilon, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw InvalidAlpha("plan: alpha must lie in (0, 1/2)");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidParameter("plan: epsilon must be positive");
  if (!(sigma_as_sq_bound >= 0.0) || !std::isfinite(sigma_as_sq_bound) || !(n0_bound >= 0.0) ||
      !std::isfinite(n0_bound))
    throw InvalidParameter("plan: bounds must be finite and nonnegative");
  const ConfidenceConstants& k = confidence_constants();
  ConfidencePlan p;
  p.epsilon = epsilon;
  p.alpha = alpha;
  p.sigma_as_sq_bound = sigma_as_sq_bound;
  p.n0_bound = n0_bound;
  p.delta_star = k.delta_star;
  p.c1 = k.c1;
  p.c2 = k.c2;
  const double n_real = k.c1 * sigma_as_sq_bound / (epsilon * epsilon) + n0_bound;
  p.n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n_real)));
  const double l_real = k.c2 * std::log(1.0 / (2.0 * alpha));
  std::int64_t l = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(l_real)));
  if (l % 2 == 0) ++l;
  p.l = l;
  p.expected_total_cost = (static_cast<double>(p.n) + n0_bound) * static_cast<double>(p.l);
  return p;
}

ConfidentEstimate run_confident_estimate(const SplitKernel& kernel, const TargetFunction& f,
                                         const ConfidencePlan& plan, std::uint64_t master_seed,
                                         std::uint64_t stream_id, int threads) {
  if (plan.l < 1 || plan.l % 2 == 0) throw EvenLength("run_confident_estimate: l must be odd");
  if (plan.n < 1) throw InvalidParameter("run_confident_estimate: n must be >= 1");
  ConfidentEstimate out;
  out.reports.resize(static_cast<std::size_t>(plan.l));
  parallel_for(out.reports.size(), threads, [&](std::size_t j) {
    Rng rng = make_stream(master_seed, {tag(StreamTag::Confidence), stream_id, j});
    out.reports[j] = estimate(run_sequential(kernel, f, plan.n, StartFromNu{}, rng));
  });
  std::vector<double> thetas;
  thetas.reserve(out.reports.size());
  for (const auto& r : out.reports) {
    thetas.push_back(r.theta_hat);
    out.total_steps += r.total_length;
  }
  out.theta = median_of_means(thetas);
  return out;
}

TourSummary summarize_tours(std::span<const Tour> tours, double theta) {
  TourSummary s;
  s.tours = static_cast<std::int64_t>(tours.size());
  if (tours.empty()) throw InvalidParameter("summarize_tours: no tours");
  CompensatedSum t1, t2, t3, t4, d2, d4, td2;
  for (const Tour& t : tours) {
    const double tau = static_cast<double>(t.length);
    const double tau2 = tau * tau;
    const double d = t.block_sum - theta * tau;
    const double dd = d * d;
    t1 += tau;
    t2 += tau2;
    t3 += tau * tau2;
    t4 += tau2 * tau2;
    d2 += dd;
    d4 += dd * dd;
    td2 += tau * dd;
  }
  const double n = static_cast<double>(s.tours);
  const double a = t1.value() / n;   // E tau
  const double b = t2.value() / n;   // E tau^2
  const double e_t3 = t3.value() / n;
  const double e_t4 = t4.value() / n;
  const double c = d2.value() / n;   // E D^2
  const double e_d4 = d4.value() / n;
  const double e_td2 = td2.value() / n;

  s.mean_tau = a;
  s.mean_tau_sq = b;
  s.n0 = b / a - 1.0;
  s.sigma_as_sq = c / a;
  if (s.tours < 2) {
    s.stderr_tau_sq = s.stderr_n0 = s.stderr_sigma_as_sq = NAN;
    return s;
  }
  const double var_t = b - a * a;
  const double var_t2 = e_t4 - b * b;
  const double cov_t_t2 = e_t3 - a * b;
  const double var_d2 = e_d4 - c * c;
  const double cov_t_d2 = e_td2 - a * c;
  s.stderr_tau_sq = std::sqrt(std::max(0.0, var_t2) / n);
  // Delta method for a ratio g = y / x: var ~ (var_y / x^2 - 2 y cov / x^3 + y^2 var_x / x^4) / n.
  auto ratio_var = [&](double y, double var_y, double cov_xy) {
    const double v = var_y / (a * a) - 2.0 * y * cov_xy / (a * a * a) +
                     y * y * var_t / (a * a * a * a);
    return std::max(0.0, v) / n;
  };
  s.stderr_n0 = std::sqrt(ratio_var(b, var_t2, cov_t_t2));
  s.stderr_sigma_as_sq = std::sqrt(ratio_var(c, var_d2, cov_t_d2));
  return s;
}

} // namespace regen
