#include "regen/models.hpp"

#include <cmath>
#include <random>
#include <string>

#include "regen/error.hpp"
#include "regen/special_functions.hpp"

namespace regen {

// ---------------------------------------------------------------- two-state

TwoStateChain::TwoStateChain(double beta) : beta_(beta) {
  if (!(beta > 0.0 && beta <= 0.5))
    throw InvalidParameter("two-state chain: beta must lie in (0, 1/2]");
}

double TwoStateChain::transition_probability(State x, State y) const {
  return x == y ? 1.0 - beta_ / 2.0 : beta_ / 2.0;
}

State TwoStateChain::sample_transition(State x, Rng& rng) const {
  const bool flip = uniform01(rng) < beta_ / 2.0;
  return flip ? 1.0 - x : x;
}

double TwoStateChain::mykland_ratio(State x, State y) const {
  return beta_ * 0.5 / transition_probability(x, y);
}

State TwoStateChain::sample_nu(Rng& rng) const { return uniform01(rng) < 0.5 ? 0.0 : 1.0; }

TwoStateTruth two_state_truth(double beta) {
  if (!(beta > 0.0 && beta <= 0.5))
    throw InvalidParameter("two-state chain: beta must lie in (0, 1/2]");
  const double sigma_sq = 0.25;
  return {sigma_sq, (2.0 - beta) / beta * sigma_sq, 2.0 * (1.0 - beta) / beta, 1.0 / beta};
}

// -------------------------------------------------------------------- Gibbs

double gibbs_h(double t, double a) {
  const double q = a * a / t;
  const double denom = std::expm1(t / (t + 1.0) * std::log1p(q));
  const double radicand = a * a / denom - t;
  if (!(radicand >= 0.0) || !std::isfinite(radicand))
    throw InvalidRadius("h(a): negative radicand for t = " + std::to_string(t) +
                        ", a = " + std::to_string(a));
  return std::sqrt(radicand);
}

double gibbs_beta(double t, double a) {
  const double h = gibbs_h(t, a);
  const double scale = std::sqrt(1.0 + a * a / t);
  // 1 - P(|T| <= h) computed as the two-sided tail.
  const double outer = 2.0 * student_t_cdf(-h, t);
  return outer + student_t_central_mass(h / scale, t);
}

GibbsNormalModel::GibbsNormalModel(double t, double a, Sampler sampler)
    : t_(t), a_(a), sampler_(sampler) {
  if (!(t >= 4.0) || !std::isfinite(t)) throw InvalidParameter("gibbs model: t must be >= 4");
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("gibbs model: a must be positive");
  const double lambda_sq = ((2.0 * t - 3.0) / (1.0 + a * a) + 1.0) / (t - 2.0);
  if (!(lambda_sq < 1.0))
    throw DriftInvalid("gibbs model: lambda^2 = " + std::to_string(lambda_sq) +
                       " >= 1; need a > sqrt(t / (t - 3))");
  lambda_ = std::sqrt(lambda_sq);
  k_const_ = std::sqrt(2.0 + (a * a + 2.0) / (t - 2.0));
  h_a_ = gibbs_h(t, a);
  beta_ = gibbs_beta(t, a);
  if (!(beta_ > 0.0 && beta_ <= 1.0))
    throw ModelError("gibbs model: beta = " + std::to_string(beta_) + " outside (0, 1]");
  scale_a_ = std::sqrt(1.0 + a * a / t);
  pi_j_ = student_t_central_mass(a * std::sqrt((t - 1.0) / t), t - 1.0);
}

double GibbsNormalModel::scale_of(State prev) const { return std::sqrt(1.0 + prev * prev / t_); }

double GibbsNormalModel::log_kernel(double scale, State y) const {
  const double z = y / scale;
  return -0.5 * (t_ + 1.0) * std::log1p(z * z / t_) - std::log(scale);
}

double GibbsNormalModel::log_transition_density(State prev, State y) const {
  const double c = scale_of(prev);
  return student_t_log_pdf(y / c, t_) - std::log(c);
}

double GibbsNormalModel::transition_density(State prev, State y) const {
  return std::exp(log_transition_density(prev, y));
}

double GibbsNormalModel::p_min(State y) const {
  return std::fabs(y) <= h_a_ ? transition_density(a_, y) : transition_density(0.0, y);
}

State GibbsNormalModel::sample_transition(State x, Rng& rng) const {
  if (sampler_ == Sampler::Collapsed) return scale_of(x) * student_t_sample(t_, rng);
  // kappa ~ Gamma(t/2, rate (t/2)(s^2 + mu^2)) with s^2 = t; mu ~ N(0, 1 / (kappa t)).
  const double rate = 0.5 * t_ * (t_ + x * x);
  std::gamma_distribution<double> gamma(0.5 * t_, 1.0 / rate);
  const double kappa = gamma(rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng) / std::sqrt(kappa * t_);
}

double GibbsNormalModel::mykland_ratio(State x, State y) const {
  if (!in_small_set(x)) return 0.0;
  const double ref_scale = std::fabs(y) <= h_a_ ? scale_a_ : 1.0;
  return std::exp(log_kernel(ref_scale, y) - log_kernel(scale_of(x), y));
}

State GibbsNormalModel::sample_nu(Rng& rng) const {
  // Propose from p(. | a) >= p_min and accept with p_min / p(. | a); acceptance rate beta.
  for (;;) {
    const State y = scale_a_ * student_t_sample(t_, rng);
    if (std::fabs(y) <= h_a_) return y;
    const double accept = std::exp(log_kernel(1.0, y) - log_kernel(scale_a_, y));
    if (uniform01(rng) < accept) return y;
  }
}

State GibbsNormalModel::sample_stationary(Rng& rng) const {
  return std::sqrt(t_ / (t_ - 1.0)) * student_t_sample(t_ - 1.0, rng);
}

double GibbsNormalModel::drift_v(State mu) { return std::sqrt(1.0 + mu * mu); }

DriftSpec GibbsNormalModel::drift_spec() const {
  DriftSpec s;
  s.lambda = lambda_;
  s.k_const = k_const_;
  s.beta = beta_;
  s.pi_v2 = pi_v2();
  s.pi_v = std::sqrt(pi_v2());
  s.fbar_v_norm = 1.0;
  s.f_v_norm = 1.0;
  return s;
}

State gibbs_step(const GibbsNormalModel& model, State mu_prev, Rng& rng) {
  return model.sample_transition(mu_prev, rng);
}

double gibbs_transition_density(const GibbsNormalModel& model, State mu_prev, State mu) {
  return model.transition_density(mu_prev, mu);
}

GibbsMinorization gibbs_minorization(const GibbsNormalModel& model) {
  return {model.h_a(), model.beta(), [model](double y) { return model.nu_density(y); }};
}

GibbsDrift gibbs_drift(const GibbsNormalModel& model) {
  return {model.lambda(), model.k_const(), model.pi_v2()};
}

GibbsTruth gibbs_truth(const GibbsNormalModel& model) {
  return {model.sigma_as_sq(), 0.0, model.m(), model.pi_j()};
}

} // namespace regen
