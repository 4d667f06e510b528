#include "regen/bound_calc.hpp"

#include <cmath>
#include <string>

#include "regen/confidence_constants.hpp"
#include "regen/error.hpp"
#include "regen/special_functions.hpp"

namespace regen {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(what);
}

void check_lambda(double lambda) {
  require(lambda >= 0.0 && lambda < 1.0, "drift: lambda must lie in [0, 1)");
}

void check_beta(double beta) { require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]"); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw InvalidAlpha("alpha must lie in (0, 1/2); got " + std::to_string(alpha));
}

} // namespace

void DriftSpec::validate() const {
  check_lambda(lambda);
  require(std::isfinite(k_const) && k_const >= 1.0, "drift: K must be finite and >= 1");
  check_beta(beta);
  if (pi_v) require(*pi_v >= 1.0 && std::isfinite(*pi_v), "drift: pi(V) must be >= 1");
  if (pi_v2) require(*pi_v2 >= 1.0 && std::isfinite(*pi_v2), "drift: pi(V^2) must be >= 1");
  if (pi_v && pi_v2 && !moments_are_bounds)
    require(*pi_v <= std::sqrt(*pi_v2) * (1.0 + 1e-12), "drift: pi(V) > sqrt(pi(V^2))");
  if (fbar_v_norm) require(*fbar_v_norm >= 0.0, "drift: ||fbar||_V must be >= 0");
  if (f_v_norm) require(*f_v_norm >= 0.0, "drift: ||f||_V must be >= 0");
}

std::string_view to_string(BoundSource s) {
  switch (s) {
    case BoundSource::UniformGeneral: return "uniform";
    case BoundSource::UniformReversible: return "uniform-reversible";
    case BoundSource::DriftTheorem: return "drift-theorem";
    case BoundSource::DriftCorollary: return "drift-corollary";
    case BoundSource::Exact: return "exact";
  }
  return "?";
}

double mse_bound(double sigma_as_sq, double n0, std::int64_t n) {
  require(n >= 1, "mse_bound: n must be >= 1");
  require(sigma_as_sq >= 0.0 && n0 >= 0.0, "mse_bound: inputs must be nonnegative");
  const double nn = static_cast<double>(n);
  return sigma_as_sq / nn * (1.0 + n0 / nn);
}

double overshoot_bound(double e_tau, double e_tau_sq) {
  require(e_tau >= 1.0 && std::isfinite(e_tau), "overshoot_bound: E tau must be >= 1");
  if (e_tau_sq < e_tau * e_tau)
    throw MomentOrderViolation("overshoot_bound: E tau^2 < (E tau)^2");
  return e_tau_sq / e_tau - 1.0;
}

UniformAsvarBounds asvar_uniform(double sigma_sq, double beta) {
  check_beta(beta);
  require(sigma_sq >= 0.0, "asvar_uniform: sigma^2 must be >= 0");
  return {sigma_sq * (1.0 + 2.0 * (1.0 + std::sqrt(1.0 - beta)) / beta), 4.0 * sigma_sq / beta};
}

double asvar_reversible_uniform(double sigma_sq, double beta) {
  check_beta(beta);
  require(sigma_sq >= 0.0, "asvar_reversible_uniform: sigma^2 must be >= 0");
  return (2.0 - beta) * sigma_sq / beta;
}

double bax_block_bound(double v_x, double lambda, double k_const, double beta,
                       bool in_small_set) {
  check_lambda(lambda);
  check_beta(beta);
  require(v_x >= 1.0, "bax_block_bound: V(x) must be >= 1");
  require(k_const >= 1.0 && std::isfinite(k_const), "bax_block_bound: K must be >= 1");
  const double outside = in_small_set ? 0.0 : lambda * (v_x - 1.0) / (1.0 - lambda);
  return outside + (k_const - lambda) / (beta * (1.0 - lambda)) - 1.0;
}

BoundsReport drift_theorem_bounds(const DriftSpec& spec) {
  spec.validate();
  if (!spec.pi_v || !spec.pi_v2)
    throw MissingMoments("drift_theorem_bounds: pi(V) and pi(V^2) are required");
  const double l = spec.lambda;
  const double k = spec.k_const;
  const double b = spec.beta;
  const double pv = *spec.pi_v;
  const double pv2 = *spec.pi_v2;
  const double scale = spec.fbar_v_norm ? (*spec.fbar_v_norm) * (*spec.fbar_v_norm) : 1.0;
  BoundsReport r;
  r.source = BoundSource::DriftTheorem;
  r.n0 = 2.0 * ((l * pv - l) / (1.0 - l) + (k - l) / (b * (1.0 - l)) - 1.0);
  r.sigma_as_sq =
      scale * ((1.0 + l) / (1.0 - l) * pv2 + 2.0 * ((k - l - b) / (b * (1.0 - l))) * pv);
  return r;
}

BoundsReport drift_corollary_bounds(const DriftSpec& spec) {
  spec.validate();
  double norm;
  if (spec.fbar_v_norm)
    norm = *spec.fbar_v_norm;
  else if (spec.f_v_norm)
    norm = fbar_norm_from_f(*spec.f_v_norm, spec.lambda, spec.k_const);
  else
    throw MissingNorm("drift_corollary_bounds: ||fbar||_V or ||f||_V is required");
  const double l = spec.lambda;
  const double k = spec.k_const;
  const double b = spec.beta;
  BoundsReport r;
  r.source = BoundSource::DriftCorollary;
  r.n0 = 2.0 / ((1.0 - l) * b) *
         (k * (1.0 - l * (1.0 - b)) / (1.0 - l) - b * (1.0 + l * l / (1.0 - l)) - l);
  r.sigma_as_sq = norm * norm *
                  (k * k * (2.0 + b) - 2.0 * k * (2.0 * l + b) + 2.0 * l * l + 2.0 * l * b -
                   l * l * b) /
                  ((1.0 - l) * (1.0 - l) * b);
  return r;
}

PiMomentBounds pi_moment_bounds(double lambda, double k_const) {
  check_lambda(lambda);
  require(k_const >= 1.0 && std::isfinite(k_const), "pi_moment_bounds: K must be >= 1");
  return {(k_const - lambda) / (1.0 - lambda),
          (k_const * k_const - lambda * lambda) / (1.0 - lambda * lambda)};
}

double fbar_norm_from_f(double f_v_norm, double lambda, double k_const) {
  check_lambda(lambda);
  require(f_v_norm >= 0.0, "fbar_norm_from_f: ||f||_V must be >= 0");
  require(k_const >= 1.0 && std::isfinite(k_const), "fbar_norm_from_f: K must be >= 1");
  return f_v_norm + (k_const - lambda) / (1.0 - lambda);
}

CostComparison cost_comparison(double sigma_sq, double beta, double epsilon, double alpha,
                               std::optional<double> sigma_as_sq) {
  check_beta(beta);
  check_alpha(alpha);
  require(sigma_sq >= 0.0, "cost_comparison: sigma^2 must be >= 0");
  require(epsilon > 0.0, "cost_comparison: epsilon must be > 0");
  const double c = confidence_constants().c;
  const double log_term = std::log(1.0 / (2.0 * alpha));
  const double e2 = epsilon * epsilon;
  const double z = standard_normal_quantile(1.0 - alpha / 2.0);
  const double as = sigma_as_sq.value_or(asvar_reversible_uniform(sigma_sq, beta));
  CostComparison out{};
  out.regen_general = c * 4.0 * sigma_sq / (beta * e2) * log_term;
  out.regen_reversible = c * (2.0 - beta) * sigma_sq / (beta * e2) * log_term;
  out.klm_exponential = 2.0 * sigma_sq / (beta * beta * e2) * log_term;
  out.clt_asymptotic = as / e2 * z * z;
  out.ratio_general = 2.0 * c * beta;
  out.ratio_reversible = c * beta * (2.0 - beta) / 2.0;
  return out;
}

double cost_crossover_beta() { return 1.0 / (2.0 * confidence_constants().c); }

double chebyshev_bound(double sigma_as_sq, double n0, std::int64_t n, double epsilon) {
  require(epsilon > 0.0, "chebyshev_bound: epsilon must be > 0");
  return mse_bound(sigma_as_sq, n0, n) / (epsilon * epsilon);
}

double chernoff_median_bound(double delta, std::int64_t l) {
  require(delta > 0.0 && delta < 0.5, "chernoff_median_bound: delta must lie in (0, 1/2)");
  require(l >= 1, "chernoff_median_bound: l must be >= 1");
  if (l % 2 == 0) throw EvenLength("chernoff_median_bound: l must be odd");
  return 0.5 * std::pow(4.0 * delta * (1.0 - delta), 0.5 * static_cast<double>(l));
}

} // namespace regen
