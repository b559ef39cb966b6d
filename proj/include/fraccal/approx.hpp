#pragma once

#include "fraccal/order.hpp"
#include "fraccal/weights.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fraccal {

// y_0 .. y_N sampled at x_k = k h
struct SampledFunction {
    double h;
    std::vector<double> values;
    std::string label;
};

SampledFunction sample(const std::function<double(double)>& y, double h, std::size_t N,
                       std::string label = {});

struct SchemeValue {
    double value;
    double eval_point;
};

// h^-alpha sum_k lambda_k y_{n-k}, read at (n - shift) h
SchemeValue apply_scheme(const WeightVector& scheme, const SampledFunction& f, std::size_t n);

enum class ReferenceId { POWER, EXP, SIN, COS, X3LNX, LINEAR, CONST };

// Test functions with closed-form Caputo derivatives on (0, 1.5].
// `p` is the exponent for POWER and the rate lambda of e^{lambda x} for EXP.
struct ReferenceFunction {
    ReferenceId id;
    double p = 0.0;

    static ReferenceFunction power(double p) { return {ReferenceId::POWER, p}; }
    static ReferenceFunction exp(double rate = 1.0) { return {ReferenceId::EXP, rate}; }
    static ReferenceFunction sin() { return {ReferenceId::SIN, 0.0}; }
    static ReferenceFunction cos() { return {ReferenceId::COS, 0.0}; }
    static ReferenceFunction x3lnx() { return {ReferenceId::X3LNX, 0.0}; }
    static ReferenceFunction linear() { return {ReferenceId::LINEAR, 0.0}; }
    static ReferenceFunction constant() { return {ReferenceId::CONST, 0.0}; }

    double value(double x) const;
    double derivative(double x) const;
};

double caputo_reference(const ReferenceFunction& fn, FractionalOrder alpha, double x);

// Linear combination of reference functions; the Caputo derivative is linear.
struct ReferenceSum {
    struct Term {
        double coef;
        ReferenceFunction fn;
    };
    std::vector<Term> terms;

    double value(double x) const;
    double derivative(double x) const;
    double caputo(FractionalOrder alpha, double x) const;
};

// (1/Gamma(1-alpha)) int_0^x y'(t) (x-t)^-alpha dt. On [x/2, x] the substitution
// t = x - s^{1/(1-alpha)} absorbs the kernel singularity; [0, x/2] uses tanh-sinh.
// Throws AccuracyError if the error estimate exceeds tol * max(1, L1 norm).
double caputo_quadrature_oracle(const std::function<double(double)>& yprime, FractionalOrder alpha,
                                double x, double tol = 1e-10);

// h^alpha sum_{k=1}^{n-1} y_{n-k} / (Gamma(alpha) k^{1-alpha})
double frac_integral_riemann(const SampledFunction& f, FractionalOrder alpha, std::size_t n);
// leading error term zeta(1-alpha)/Gamma(alpha) y_n h^alpha of the sum above
double frac_integral_riemann_correction(const SampledFunction& f, FractionalOrder alpha,
                                        std::size_t n);

struct ErrorSample {
    double h;
    double error;
};

// log2(E_{i-1} / E_i) for consecutive halvings
std::vector<double> estimate_order(std::span<const ErrorSample> samples);

struct OrderStudyOptions {
    double x = 1.0;
    double h0 = 1.0 / 80.0;
    int halvings = 4;
    TailPolicy policy{};
};

struct OrderStudyRow {
    double h;
    double value;
    double exact;
    double error;
    std::optional<double> order;
};

// Applies the scheme at n = N = x/h for each h and compares with the closed form
// at the scheme's evaluation point.
std::vector<OrderStudyRow> order_study(SchemeKind kind, FractionalOrder alpha, const ReferenceSum& y,
                                       const OrderStudyOptions& opts = {});

} // namespace fraccal
