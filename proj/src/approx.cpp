#include "fraccal/approx.hpp"
#include "fraccal/error.hpp"
#include "fraccal/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fraccal {

SampledFunction sample(const std::function<double(double)>& y, double h, std::size_t N,
                       std::string label) {
    if (!(h > 0.0))
        throw DomainError("sample: step must be positive");
    if (N < 1)
        throw SizeError("sample: need N >= 1");
    SampledFunction f{h, std::vector<double>(N + 1), std::move(label)};
    for (std::size_t k = 0; k <= N; ++k) {
        f.values[k] = y(static_cast<double>(k) * h);
        if (!std::isfinite(f.values[k]))
            throw DomainError("sample: non-finite value at k = " + std::to_string(k));
    }
    return f;
}

SchemeValue apply_scheme(const WeightVector& scheme, const SampledFunction& f, std::size_t n) {
    if (scheme.coeffs.size() != n + 1)
        throw SizeError("apply_scheme: scheme built for n = " + std::to_string(scheme.n) +
                        ", applied at n = " + std::to_string(n));
    if (n >= f.values.size())
        throw SizeError("apply_scheme: n = " + std::to_string(n) + " beyond the sample");
    double sum = 0.0;
    for (std::size_t k = 0; k <= n; ++k)
        sum += scheme.coeffs[k] * f.values[n - k];
    return {sum * std::pow(f.h, -scheme.alpha), (static_cast<double>(n) - scheme.shift) * f.h};
}

double ReferenceFunction::value(double x) const {
    switch (id) {
    case ReferenceId::POWER:
        return x == 0.0 ? 0.0 : std::pow(x, p);
    case ReferenceId::EXP:
        return std::exp(p * x);
    case ReferenceId::SIN:
        return std::sin(x);
    case ReferenceId::COS:
        return std::cos(x);
    case ReferenceId::X3LNX:
        return x == 0.0 ? 0.0 : x * x * x * std::log(x);
    case ReferenceId::LINEAR:
        return x;
    case ReferenceId::CONST:
        return 1.0;
    }
    return 0.0;
}

double ReferenceFunction::derivative(double x) const {
    switch (id) {
    case ReferenceId::POWER:
        return x == 0.0 ? (p == 1.0 ? 1.0 : 0.0) : p * std::pow(x, p - 1.0);
    case ReferenceId::EXP:
        return p * std::exp(p * x);
    case ReferenceId::SIN:
        return std::cos(x);
    case ReferenceId::COS:
        return -std::sin(x);
    case ReferenceId::X3LNX:
        return x == 0.0 ? 0.0 : x * x * (3.0 * std::log(x) + 1.0);
    case ReferenceId::LINEAR:
        return 1.0;
    case ReferenceId::CONST:
        return 0.0;
    }
    return 0.0;
}

double caputo_reference(const ReferenceFunction& fn, FractionalOrder alpha, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("caputo_reference: x must be positive, got " + std::to_string(x));
    const double a = alpha;
    switch (fn.id) {
    case ReferenceId::POWER:
        if (!(fn.p > 0.0))
            throw DomainError("caputo_reference: POWER exponent must be positive");
        return gamma_real(fn.p + 1.0) / gamma_real(fn.p + 1.0 - a) * std::pow(x, fn.p - a);
    case ReferenceId::EXP:
        return fn.p * std::pow(x, 1.0 - a) * mittag_leffler(1.0, 2.0 - a, fn.p * x);
    case ReferenceId::SIN:
        return std::pow(x, 1.0 - a) * mittag_leffler(2.0, 2.0 - a, -x * x);
    case ReferenceId::COS:
        return -std::pow(x, 2.0 - a) * mittag_leffler(2.0, 3.0 - a, -x * x);
    case ReferenceId::X3LNX:
        return std::pow(x, 3.0 - a) / gamma_real(4.0 - a) *
               (11.0 + 6.0 * std::log(x) - 6.0 * kEulerGamma - 6.0 * digamma(4.0 - a));
    case ReferenceId::LINEAR:
        return std::pow(x, 1.0 - a) / gamma_real(2.0 - a);
    case ReferenceId::CONST:
        return 0.0;
    }
    throw UnsupportedError("caputo_reference: unknown id");
}

double ReferenceSum::value(double x) const {
    double s = 0.0;
    for (const auto& t : terms)
        s += t.coef * t.fn.value(x);
    return s;
}

double ReferenceSum::derivative(double x) const {
    double s = 0.0;
    for (const auto& t : terms)
        s += t.coef * t.fn.derivative(x);
    return s;
}

double ReferenceSum::caputo(FractionalOrder alpha, double x) const {
    double s = 0.0;
    for (const auto& t : terms)
        s += t.coef * caputo_reference(t.fn, alpha, x);
    return s;
}

double caputo_quadrature_oracle(const std::function<double(double)>& yprime, FractionalOrder alpha,
                                double x, double tol) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("caputo_quadrature_oracle: x must be positive");
    if (!(tol > 0.0))
        throw DomainError("caputo_quadrature_oracle: tol must be positive");
    const double a = alpha;
    const double q = 1.0 / (1.0 - a);
    const double mid = 0.5 * x;
    // near t = x: t = x - s^q, dt (x-t)^-a = -q ds
    auto near = [&](double s) { return q * yprime(x - std::pow(s, q)); };
    // near t = 0: tanh-sinh absorbs a non-smooth y' at the origin
    auto far = [&](double t) { return yprime(t) * std::pow(x - t, -a); };
    double err_near = 0.0, l1_near = 0.0, err_far = 0.0, l1_far = 0.0;
    double I = std::numeric_limits<double>::quiet_NaN();
    try {
        static thread_local boost::math::quadrature::tanh_sinh<double> rule;
        I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                near, 0.0, std::pow(x - mid, 1.0 - a), 20, tol, &err_near, &l1_near) +
            rule.integrate(far, 0.0, mid, tol, &err_far, &l1_far);
    } catch (const std::exception&) {
    }
    const double err = err_near + err_far;
    const double g = gamma_real(1.0 - a);
    if (!std::isfinite(I) || err > tol * std::max(1.0, l1_near + l1_far))
        throw AccuracyError("caputo_quadrature_oracle: error estimate " + std::to_string(err) +
                                " above tolerance",
                            I / g);
    return I / g;
}

double frac_integral_riemann(const SampledFunction& f, FractionalOrder alpha, std::size_t n) {
    if (n < 2)
        throw SizeError("frac_integral_riemann: n must be >= 2");
    if (n >= f.values.size())
        throw SizeError("frac_integral_riemann: n beyond the sample");
    const double a = alpha;
    double sum = 0.0;
    for (std::size_t k = 1; k < n; ++k)
        sum += f.values[n - k] * std::pow(static_cast<double>(k), a - 1.0);
    return std::pow(f.h, a) * sum / gamma_real(a);
}

double frac_integral_riemann_correction(const SampledFunction& f, FractionalOrder alpha,
                                        std::size_t n) {
    if (n >= f.values.size())
        throw SizeError("frac_integral_riemann_correction: n beyond the sample");
    const double a = alpha;
    return zeta_real(1.0 - a) / gamma_real(a) * f.values[n] * std::pow(f.h, a);
}

std::vector<double> estimate_order(std::span<const ErrorSample> samples) {
    std::vector<double> orders;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!(s.h > 0.0) || !(s.error > 0.0) || !std::isfinite(s.error))
            throw InputError("estimate_order: need positive h and error");
        if (i == 0)
            continue;
        const double prev = samples[i - 1].h;
        if (std::abs(prev - 2.0 * s.h) > 1e-9 * prev)
            throw InputError("estimate_order: step sequence is not halving at index " +
                             std::to_string(i));
        orders.push_back(std::log2(samples[i - 1].error / s.error));
    }
    return orders;
}

std::vector<OrderStudyRow> order_study(SchemeKind kind, FractionalOrder alpha, const ReferenceSum& y,
                                       const OrderStudyOptions& opts) {
    std::vector<OrderStudyRow> rows;
    std::vector<ErrorSample> samples;
    double h = opts.h0;
    for (int i = 0; i <= opts.halvings; ++i, h /= 2.0) {
        const double steps = std::round(opts.x / h);
        if (steps < 1.0 || std::abs(steps * h - opts.x) > 1e-9 * opts.x)
            throw InputError("order_study: x is not a multiple of h");
        const auto N = static_cast<std::size_t>(steps);
        const auto f = sample([&](double t) { return y.value(t); }, h, N);
        const auto w = build_scheme(kind, alpha, N, N, opts.policy);
        const auto r = apply_scheme(w, f, N);
        const double exact = y.caputo(alpha, r.eval_point);
        rows.push_back({h, r.value, exact, std::abs(r.value - exact), std::nullopt});
        samples.push_back({h, rows.back().error});
    }
    const auto orders = estimate_order(samples);
    for (std::size_t i = 0; i < orders.size(); ++i)
        rows[i + 1].order = orders[i];
    return rows;
}

} // namespace fraccal
