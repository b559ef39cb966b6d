#include "fraccal/specfun.hpp"
#include "fraccal/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace fraccal {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kGammaOverflow = 171.6;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double lanczos_series(double z) {
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i)
        a += kLanczos[i] / (z + static_cast<double>(i));
    return a;
}

// Gamma for x >= 0.5.
double gamma_positive(double x) {
    if (x == std::floor(x) && x <= 30.0) {
        double r = 1.0;
        for (double k = 2.0; k < x; k += 1.0)
            r *= k;
        return r;
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    // split the power so t^(z+0.5) does not overflow before e^-t damps it
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * kPi) * half * (std::exp(-t) * half) * lanczos_series(z);
}

std::string num(double x) {
    return std::to_string(x);
}

} // namespace

double sin_pi(double x) {
    if (!std::isfinite(x))
        throw DomainError("sin_pi: non-finite argument");
    double r = std::remainder(x, 2.0); // r in [-1, 1]
    if (r == 0.0 || std::abs(r) == 1.0)
        return 0.0;
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(kPi * r);
}

double gamma_real(double x) {
    if (!std::isfinite(x))
        throw DomainError("gamma_real: non-finite argument");
    if (is_nonpositive_integer(x))
        throw DomainError("gamma_real: pole at " + num(x));
    if (x > kGammaOverflow)
        throw DomainError("gamma_real: overflow at " + num(x));
    if (x >= 0.5)
        return gamma_positive(x);
    // reflection
    const double y = 1.0 - x;
    if (y > kGammaOverflow)
        return 0.0;
    return kPi / (sin_pi(x) * gamma_positive(y));
}

double log_gamma_real(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("log_gamma_real: argument must be positive, got " + num(x));
    if (x < 0.5)
        return std::log(gamma_real(x));
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_series(z));
}

double reciprocal_gamma(double x) {
    if (!std::isfinite(x))
        throw DomainError("reciprocal_gamma: non-finite argument");
    if (is_nonpositive_integer(x))
        return 0.0;
    if (x > kGammaOverflow)
        return std::exp(-log_gamma_real(x));
    return 1.0 / gamma_real(x);
}

double digamma(double x) {
    if (!std::isfinite(x))
        throw DomainError("digamma: non-finite argument");
    if (is_nonpositive_integer(x))
        throw DomainError("digamma: pole at " + num(x));
    if (x < 0.0) {
        // psi(x) = psi(1-x) - pi cot(pi x)
        return digamma(1.0 - x) - kPi * sin_pi(x + 0.5) / sin_pi(x);
    }
    double shift = 0.0;
    while (x < 10.0) {
        shift += 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    // -sum B_2k / (2k x^2k)
    const double tail =
        r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
    return std::log(x) - 0.5 / x - tail - shift;
}

namespace {

// Borwein's accelerated alternating series for the Dirichlet eta function.
constexpr int kBorweinTerms = 40;

struct BorweinTable {
    std::array<double, kBorweinTerms + 1> d{};
    BorweinTable() {
        const double n = kBorweinTerms;
        double term = 1.0 / n; // (n-1)!/n! at i = 0
        double acc = term;
        d[0] = n * acc;
        for (int i = 1; i <= kBorweinTerms; ++i) {
            term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1));
            acc += term;
            d[i] = n * acc;
        }
    }
};

double eta_nonnegative(double s) {
    static const BorweinTable table;
    const double dn = table.d[kBorweinTerms];
    double sum = 0.0;
    for (int k = kBorweinTerms - 1; k >= 0; --k) {
        const double t = (table.d[k] - dn) * std::pow(k + 1.0, -s);
        sum += (k % 2 == 0) ? t : -t;
    }
    return -sum / dn;
}

} // namespace

double zeta_real(double s) {
    if (!std::isfinite(s))
        throw DomainError("zeta_real: non-finite argument");
    if (s == 1.0)
        throw DomainError("zeta_real: pole at s = 1");
    if (s < 0.0) {
        // functional equation
        const double t = 1.0 - s;
        if (t > kGammaOverflow)
            throw DomainError("zeta_real: argument too negative, " + num(s));
        return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * sin_pi(0.5 * s) * gamma_real(t) *
               zeta_real(t);
    }
    if (s > 60.0)
        return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
    // 1 - 2^(1-s), written to stay accurate close to s = 1
    const double denom = -std::expm1((1.0 - s) * std::numbers::ln2);
    return eta_nonnegative(s) / denom;
}

double mittag_leffler(double a, double b, double x) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("mittag_leffler: a must be positive, got " + num(a));
    if (!std::isfinite(b) || !std::isfinite(x))
        throw DomainError("mittag_leffler: non-finite argument");
    if (x == 0.0)
        return reciprocal_gamma(b);

    constexpr double tol = 1e-15;
    constexpr int cap = 10000;
    const double ax = std::abs(x);
    const double log_ax = std::log(ax);

    // Neumaier-compensated sum; the series alternates for x < 0
    double sum = 0.0;
    double comp = 0.0;
    for (int n = 0; n < cap; ++n) {
        const double arg = a * n + b;
        double term;
        if (arg > 150.0) {
            term = std::exp(n * log_ax - log_gamma_real(arg));
            if (x < 0.0 && (n % 2 == 1))
                term = -term;
        } else {
            term = std::pow(x, n) * reciprocal_gamma(arg);
        }
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;

        // stop only once the terms are past their peak and Gamma is increasing
        const bool decreasing = arg > 1.5 && std::pow(a * (n + 1), a) > 2.0 * ax;
        if (decreasing && std::abs(term) < tol * (1.0 + std::abs(sum + comp)))
            return sum + comp;
    }
    throw AccuracyError("mittag_leffler: series did not converge within " + std::to_string(cap) +
                            " terms",
                        sum + comp);
}

double binom_real(double alpha, long k) {
    if (k < 0)
        throw DomainError("binom_real: k must be non-negative");
    double r = 1.0;
    for (long i = 0; i < k; ++i)
        r *= (alpha - static_cast<double>(i)) / static_cast<double>(i + 1);
    return r;
}

double gen_bernoulli_diag(int m, double alpha) {
    switch (m) {
    case 0:
        return 1.0;
    case 1:
        return -alpha / 2.0;
    case 2:
        return alpha * (1.0 + 3.0 * alpha) / 12.0;
    case 3:
        return -alpha * alpha * (1.0 + alpha) / 8.0;
    default:
        break;
    }
    if (m < 0)
        throw DomainError("gen_bernoulli_diag: m must be non-negative");
    throw UnsupportedError("gen_bernoulli_diag: only m <= 3 is supported, got m = " +
                           std::to_string(m));
}

} // namespace fraccal
