#pragma once

#include <functional>

#include "regen/bound_calc.hpp"
#include "regen/split_kernel.hpp"

namespace regen {

// Two-state chain on {0, 1} with P = beta * pi + (1 - beta) * I, pi = (1/2, 1/2).
// J is the whole space and nu = pi, so every step regenerates with probability beta.
class TwoStateChain final : public SplitKernel {
public:
  // beta in (0, 1/2].
  explicit TwoStateChain(double beta);

  State sample_transition(State x, Rng& rng) const override;
  double mykland_ratio(State x, State y) const override;
  bool in_small_set(State) const override { return true; }
  State sample_nu(Rng& rng) const override;
  double beta() const override { return beta_; }

  // P(x, y) for x, y in {0, 1}.
  double transition_probability(State x, State y) const;

private:
  double beta_;
};

struct TwoStateTruth {
  double sigma_sq;     // stationary variance of f(x) = x
  double sigma_as_sq;  // (2 - beta) / beta * sigma^2
  double n0;           // 2 (1 - beta) / beta
  double m;            // 1 / beta
};

TwoStateTruth two_state_truth(double beta);

// Mean-of-mu chain of the two-block Gibbs sampler for a normal sample with
// unknown mean and precision under the prior p(mu, kappa) ~ 1 / kappa, with
// the data summarized as ybar = 0 and s^2 = t. Given mu_{i-1},
//
//   mu_i / sqrt(1 + mu_{i-1}^2 / t) ~ Student-t(t),
//
// and the stationary law is sqrt(t / (t - 1)) * Student-t(t - 1).
//
// Small set J = [-a, a]. The minorizing density is p(. | a) on |mu| <= h(a)
// and p(. | 0) outside; drift function V(mu) = sqrt(1 + mu^2).
class GibbsNormalModel final : public SplitKernel {
public:
  enum class Sampler {
    Collapsed,  // one Student-t draw per step
    TwoStep,    // kappa ~ Gamma, then mu ~ Normal; for cross-validation
  };

  // Throws InvalidParameter for t < 4, DriftInvalid unless a^2 > t / (t - 3),
  // InvalidRadius if the h(a) radicand is negative.
  GibbsNormalModel(double t, double a, Sampler sampler = Sampler::Collapsed);

  State sample_transition(State x, Rng& rng) const override;
  double mykland_ratio(State x, State y) const override;
  bool in_small_set(State x) const override { return x >= -a_ && x <= a_; }
  State sample_nu(Rng& rng) const override;
  double beta() const override { return beta_; }

  double t() const { return t_; }
  double a() const { return a_; }
  double h_a() const { return h_a_; }
  double lambda() const { return lambda_; }
  double k_const() const { return k_const_; }
  double lambda_sq() const { return lambda_ * lambda_; }
  double k_sq() const { return k_const_ * k_const_; }
  double pi_v2() const { return (2.0 * t_ - 3.0) / (t_ - 3.0); }
  double pi_j() const { return pi_j_; }
  double m() const { return 1.0 / (beta_ * pi_j_); }
  double sigma_as_sq() const { return t_ / (t_ - 3.0); }
  Sampler sampler() const { return sampler_; }

  double transition_density(State prev, State y) const;
  double log_transition_density(State prev, State y) const;

  // Subprobability density beta * nu(y).
  double p_min(State y) const;
  double nu_density(State y) const { return p_min(y) / beta_; }

  // A draw from the stationary law.
  State sample_stationary(Rng& rng) const;

  static double drift_v(State mu);

  // lambda, K, beta, pi(V^2), pi(V) = sqrt(pi(V^2)) and ||fbar||_V = 1 for f(mu) = mu.
  DriftSpec drift_spec() const;

private:
  // log p(y | prev) without the Student-t normalizing constant.
  double log_kernel(double scale, State y) const;
  double scale_of(State prev) const;

  double t_;
  double a_;
  Sampler sampler_;
  double h_a_ = 0.0;
  double beta_ = 0.0;
  double lambda_ = 0.0;
  double k_const_ = 0.0;
  double pi_j_ = 0.0;
  double scale_a_ = 0.0;
};

// Free-function surface of the Gibbs model.
State gibbs_step(const GibbsNormalModel& model, State mu_prev, Rng& rng);
double gibbs_transition_density(const GibbsNormalModel& model, State mu_prev, State mu);

struct GibbsMinorization {
  double h_a;
  double beta;
  std::function<double(double)> nu_density;
};
GibbsMinorization gibbs_minorization(const GibbsNormalModel& model);

struct GibbsDrift {
  double lambda;
  double k_const;
  double pi_v2;
};
GibbsDrift gibbs_drift(const GibbsNormalModel& model);

struct GibbsTruth {
  double sigma_as_sq;
  double theta;
  double m;
  double pi_j;
};
GibbsTruth gibbs_truth(const GibbsNormalModel& model);

// h(a) = { a^2 [ (1 + a^2/t)^{t/(t+1)} - 1 ]^{-1} - t }^{1/2}. Throws InvalidRadius.
double gibbs_h(double t, double a);

// beta = 1 - P(|T_t| <= h) + P(|T_t| <= h / sqrt(1 + a^2 / t)).
double gibbs_beta(double t, double a);

} // namespace regen
