#pragma once

// Real-valued special functions used by the weight formulas and the
// closed-form Caputo derivatives. All functions throw instead of
// returning NaN outside their domains.

namespace fraccal {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double gamma_real(double x);
// log|Gamma(x)| for x > 0.
double log_gamma_real(double x);
// 1/Gamma(x); zero at the poles.
double reciprocal_gamma(double x);

double digamma(double x);

double zeta_real(double s);

// E_{a,b}(x) = sum_n x^n / Gamma(a n + b), direct series.
double mittag_leffler(double a, double b, double x);

// (alpha choose k) by running product.
double binom_real(double alpha, long k);

// Diagonal generalized Bernoulli values B_m^(-alpha)(-alpha), m <= 3.
double gen_bernoulli_diag(int m, double alpha);

// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

} // namespace fraccal
