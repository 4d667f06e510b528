#pragma once

#include "regen/rng.hpp"

namespace regen {

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
// Continued fraction (modified Lentz) terminated at relative step 1e-15.
double incomplete_beta(double a, double b, double x);

double student_t_log_pdf(double x, double dof);
double student_t_pdf(double x, double dof);

// Student-t CDF via I_{x^2/(dof+x^2)}(1/2, dof/2) near the origin and
// I_{dof/(dof+x^2)}(dof/2, 1/2) in the tails.
double student_t_cdf(double x, double dof);

// P(|T| <= x) for T ~ t(dof), x >= 0, without the cancellation of cdf(x) - cdf(-x).
double student_t_central_mass(double x, double dof);

// Exact draw: Z / sqrt(W / dof) with Z ~ N(0,1), W ~ chi^2(dof).
double student_t_sample(double dof, Rng& rng);

double standard_normal_cdf(double x);

// Standard normal quantile. Acklam's rational approximation followed by one
// Halley step against erfc; absolute error below 1e-12 on (1e-300, 1 - 1e-16).
double standard_normal_quantile(double p);

} // namespace regen
