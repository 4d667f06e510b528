#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace regen {

// Geometric drift towards the small set J, for V >= 1:
//   P V^2 <= lambda^2 V^2 off J,  P V^2 <= K^2 on J,
// which by Jensen gives P V <= lambda V off J and P V <= K on J.
struct DriftSpec {
  double lambda = 0.0;
  double k_const = 1.0;
  double beta = 1.0;
  std::optional<double> pi_v;          // pi(V)
  std::optional<double> pi_v2;         // pi(V^2)
  std::optional<double> fbar_v_norm;   // sup |f - pi f| / V
  std::optional<double> f_v_norm;      // sup |f| / V
  // pi_v and pi_v2 are upper bounds rather than the moments themselves, so
  // pi(V) <= sqrt(pi(V^2)) need not hold between them.
  bool moments_are_bounds = false;

  // Throws InvalidParameter when the constants are outside their domain.
  void validate() const;
};

enum class BoundSource { UniformGeneral, UniformReversible, DriftTheorem, DriftCorollary, Exact };

std::string_view to_string(BoundSource s);

struct BoundsReport {
  double sigma_as_sq = 0.0;
  double n0 = 0.0;
  std::optional<double> mse;
  BoundSource source = BoundSource::Exact;
};

// sigma_as^2 / n * (1 + n0 / n).
double mse_bound(double sigma_as_sq, double n0, std::int64_t n);

// n0 = E tau^2 / E tau - 1; bounds the mean overshoot for every n.
// Throws MomentOrderViolation when e_tau_sq < e_tau^2.
double overshoot_bound(double e_tau, double e_tau_sq);

// Uniformly ergodic case (J = whole space), in terms of the stationary
// variance sigma^2 = pi(fbar^2).
struct UniformAsvarBounds {
  double exact_form;   // sigma^2 (1 + 2 (1 + sqrt(1 - beta)) / beta)
  double simple_form;  // 4 sigma^2 / beta
};
UniformAsvarBounds asvar_uniform(double sigma_sq, double beta);

// Reversible chains with one-step minorization on the whole space:
// (2 - beta) / beta * sigma^2. Attained by the two-state example.
double asvar_reversible_uniform(double sigma_sq, double beta);

// Upper bound on E_x sum_{n=1}^{T-1} V(X_n), T the first regeneration time:
//   lambda (V(x) - 1) / (1 - lambda) * 1(x not in J) + (K - lambda) / (beta (1 - lambda)) - 1.
// With in_small_set = false the first term is always kept.
double bax_block_bound(double v_x, double lambda, double k_const, double beta,
                       bool in_small_set = false);

// Bounds using pi(V) and pi(V^2). The sigma_as^2 bound assumes |fbar| <= V;
// when spec.fbar_v_norm is present it is applied as a scale factor.
// Throws MissingMoments without both moments.
BoundsReport drift_theorem_bounds(const DriftSpec& spec);

// Bounds using only (lambda, K, beta) and ||fbar||_V (derived from ||f||_V
// via fbar_norm_from_f when only the latter is given). Throws MissingNorm.
BoundsReport drift_corollary_bounds(const DriftSpec& spec);

struct PiMomentBounds {
  double pi_v_bound;   // (K - lambda) / (1 - lambda)
  double pi_v2_bound;  // (K^2 - lambda^2) / (1 - lambda^2)
};
PiMomentBounds pi_moment_bounds(double lambda, double k_const);

// ||f||_V + (K - lambda) / (1 - lambda).
double fbar_norm_from_f(double f_v_norm, double lambda, double k_const);

// Leading-order sample counts for P(|estimate - theta| > eps) <= alpha.
struct CostComparison {
  double regen_general;     // C * 4 sigma^2 / (beta eps^2) * ln(1 / (2 alpha))
  double regen_reversible;  // C * (2 - beta) sigma^2 / (beta eps^2) * ln(1 / (2 alpha))
  double klm_exponential;   // 2 sigma^2 / (beta^2 eps^2) * ln(1 / (2 alpha))
  double clt_asymptotic;    // sigma_as^2 / eps^2 * Phi^{-1}(1 - alpha / 2)^2
  double ratio_general;     // regen_general / klm_exponential = 2 C beta
  double ratio_reversible;  // regen_reversible / klm_exponential = C beta (2 - beta) / 2
};
// sigma_as_sq feeds the CLT column; defaults to the reversible bound.
CostComparison cost_comparison(double sigma_sq, double beta, double epsilon, double alpha,
                               std::optional<double> sigma_as_sq = std::nullopt);

// Beta at which regen_general equals klm_exponential: 1 / (2 C).
double cost_crossover_beta();

// sigma_as^2 / (n eps^2) * (1 + n0 / n).
double chebyshev_bound(double sigma_as_sq, double n0, std::int64_t n, double epsilon);

// 1/2 [4 delta (1 - delta)]^{l/2} for odd l. Throws EvenLength.
double chernoff_median_bound(double delta, std::int64_t l);

} // namespace regen
