#include <doctest.h>

#include <cmath>
#include <vector>

#include "finite_chain.hpp"
#include "regen/error.hpp"
#include "regen/models.hpp"
#include "regen/regen_core.hpp"
#include "regen/summation.hpp"

using namespace regen;
using regen::testing::FiniteChain;

namespace {

double ident(State x) { return x; }

// A kernel whose ratio can be forced out of range, or that never regenerates.
class BrokenKernel final : public SplitKernel {
public:
  explicit BrokenKernel(double ratio) : ratio_(ratio) {}
  State sample_transition(State x, Rng&) const override { return x; }
  double mykland_ratio(State, State) const override { return ratio_; }
  bool in_small_set(State) const override { return true; }
  State sample_nu(Rng&) const override { return 0.0; }
  double beta() const override { return 0.5; }

private:
  double ratio_;
};

} // namespace

TEST_CASE("two-state tour length is geometric(beta)") {
  const double beta = 0.3;
  TwoStateChain chain(beta);
  Rng rng(11);
  const int n = 100000;
  std::vector<int> counts(6, 0);
  MomentAccumulator len, sum;
  for (int i = 0; i < n; ++i) {
    const Tour t = sample_block(chain, ident, rng);
    len.add(static_cast<double>(t.length));
    sum.add(t.block_sum);
    if (t.length <= 5) ++counts[t.length];
  }
  CHECK(std::fabs(len.mean() - 1.0 / beta) < 4.0 * len.stderr_of_mean());
  for (int k = 1; k <= 5; ++k) {
    const double p = beta * std::pow(1.0 - beta, k - 1);
    CHECK(std::fabs(counts[k] / double(n) - p) < 4.0 * std::sqrt(p * (1 - p) / n));
  }
  // Kac: E Xi(f) = m pi(f).
  CHECK(std::fabs(sum.mean() - 0.5 / beta) < 4.0 * sum.stderr_of_mean());
}

TEST_CASE("three-state chain: tour moments match the renewal equations") {
  FiniteChain chain;
  const auto [m, e2] = chain.tau_moments();
  const auto pi = chain.stationary();
  // Kac identity for the split chain.
  CHECK(m == doctest::Approx(1.0 / (chain.beta() * (pi[0] + pi[1]))).epsilon(1e-12));

  Rng rng(3);
  MomentAccumulator len, len2, xi;
  for (int i = 0; i < 200000; ++i) {
    const Tour t = sample_block(chain, ident, rng);
    const double l = static_cast<double>(t.length);
    len.add(l);
    len2.add(l * l);
    xi.add(t.block_sum);
  }
  CHECK(std::fabs(len.mean() - m) < 4.0 * len.stderr_of_mean());
  CHECK(std::fabs(len2.mean() - e2) < 4.0 * len2.stderr_of_mean());
  const double theta = pi[1] + 2.0 * pi[2];
  CHECK(std::fabs(xi.mean() - m * theta) < 4.0 * xi.stderr_of_mean());
}

TEST_CASE("the ratio is a probability on the three-state chain") {
  FiniteChain chain;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      const double r = chain.mykland_ratio(x, y);
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
    }
}

TEST_CASE("sequential run stops at the first regeneration past n") {
  FiniteChain chain;
  Rng rng(99);
  for (std::int64_t n : {1, 2, 7, 50, 333}) {
    const SequentialRun run = run_sequential(chain, ident, n, StartFromNu{}, rng);
    CHECK(run.total_length >= n);
    CHECK(run.total_length - run.tours.back().length < n);
    CHECK(run.overshoot == run.total_length - n);
    CHECK(run.tour_count == static_cast<std::int64_t>(run.tours.size()));
    std::int64_t total = 0;
    for (const auto& t : run.tours) {
      CHECK(t.length >= 1);
      total += t.length;
    }
    CHECK(total == run.total_length);
    CHECK_FALSE(run.post_burn_in);
  }
  CHECK_THROWS_AS(run_sequential(chain, ident, 0, StartFromNu{}, rng), InvalidParameter);
}

TEST_CASE("block sums equal the trajectory sum of retained states") {
  FiniteChain chain;
  Rng rng(5);
  RunOptions opts;
  opts.retain_states = true;
  const SequentialRun run = run_sequential(chain, ident, 500, StartFromNu{}, rng, opts);
  CompensatedSum blocks;
  for (const auto& t : run.tours) {
    CHECK(static_cast<std::int64_t>(t.states.size()) == t.length);
    blocks += t.block_sum;
  }
  CHECK(trajectory_sum(run.tours, ident) == doctest::Approx(blocks.value()).epsilon(1e-14));

  const SequentialRun bare = run_sequential(chain, ident, 20, StartFromNu{}, rng);
  CHECK_THROWS_AS(trajectory_sum(bare.tours, ident), InvalidParameter);
}

TEST_CASE("tours chain along one trajectory") {
  // With the same seed, retaining states does not change the path; each tour
  // starts where the previous regeneration left the chain.
  FiniteChain chain;
  RunOptions opts;
  opts.retain_states = true;
  Rng a(17), b(17);
  const SequentialRun with = run_sequential(chain, ident, 300, StartFromNu{}, a, opts);
  const SequentialRun without = run_sequential(chain, ident, 300, StartFromNu{}, b);
  REQUIRE(with.tours.size() == without.tours.size());
  for (std::size_t k = 0; k < with.tours.size(); ++k) {
    CHECK(with.tours[k].length == without.tours[k].length);
    CHECK(with.tours[k].block_sum == without.tours[k].block_sum);
  }
}

TEST_CASE("consecutive tour lengths are uncorrelated") {
  FiniteChain chain;
  Rng rng(23);
  const SequentialRun run = run_sequential(chain, ident, 400000, StartFromNu{}, rng);
  MomentAccumulator x, y, xy;
  for (std::size_t k = 1; k < run.tours.size(); ++k) {
    const double u = static_cast<double>(run.tours[k - 1].length);
    const double v = static_cast<double>(run.tours[k].length);
    x.add(u);
    y.add(v);
    xy.add(u * v);
  }
  const double cov = xy.mean() - x.mean() * y.mean();
  const double corr = cov / std::sqrt(x.variance() * y.variance());
  CHECK(std::fabs(corr) < 4.0 / std::sqrt(static_cast<double>(x.count())));
}

TEST_CASE("start from a fixed state discards the burn-in") {
  FiniteChain chain;
  Rng rng(8);
  const SequentialRun run = run_sequential(chain, ident, 100, StartFromState{2.0}, rng);
  CHECK(run.post_burn_in);
  CHECK(run.burned_in_steps >= 1);
  CHECK(run.total_length >= 100);
}

TEST_CASE("drift sums are recorded on request") {
  FiniteChain chain;
  Rng rng(4);
  RunOptions opts;
  opts.drift_v = [](State x) { return 1.0 + x; };
  opts.retain_states = true;
  const Tour t = sample_block(chain, ident, rng, opts);
  REQUIRE(t.block_sum_v.has_value());
  double v = 0.0, v2 = 0.0;
  for (State x : t.states) {
    v += 1.0 + x;
    v2 += (1.0 + x) * (1.0 + x);
  }
  CHECK(*t.block_sum_v == doctest::Approx(v));
  CHECK(*t.block_sum_v2 == doctest::Approx(v2));
  CHECK_FALSE(sample_block(chain, ident, rng).block_sum_v.has_value());
}

TEST_CASE("model errors surface from the core") {
  Rng rng(1);
  BrokenKernel above(1.5);
  CHECK_THROWS_AS(step_split(above, 0.0, rng), RatioOutOfRange);
  BrokenKernel negative(-0.1);
  CHECK_THROWS_AS(step_split(negative, 0.0, rng), RatioOutOfRange);
  BrokenKernel edge(1.0 + 1e-13);
  CHECK_NOTHROW(step_split(edge, 0.0, rng));

  BrokenKernel never(0.0);
  RunOptions opts;
  opts.tour_cap = 1000;
  CHECK_THROWS_AS(sample_block(never, ident, rng, opts), TourLengthOverflow);
  CHECK_THROWS_AS(run_sequential(never, ident, 5, StartFromState{0.0}, rng, opts),
                  TourLengthOverflow);
  CHECK_THROWS_AS(pre_regeneration_sum(never, ident, 0.0, rng, 1000), TourLengthOverflow);
}

TEST_CASE("pre-regeneration sum on the two-state chain") {
  // T ~ Geometric(beta) from any x, so with g = 1 the sum is T - 1.
  const double beta = 0.4;
  TwoStateChain chain(beta);
  Rng rng(31);
  MomentAccumulator acc;
  for (int i = 0; i < 100000; ++i)
    acc.add(pre_regeneration_sum(chain, [](State) { return 1.0; }, 0.0, rng));
  CHECK(std::fabs(acc.mean() - (1.0 - beta) / beta) < 4.0 * acc.stderr_of_mean());
}
