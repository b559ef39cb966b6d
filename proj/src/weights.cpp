#include "fraccal/weights.hpp"
#include "fraccal/error.hpp"
#include "fraccal/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace fraccal {

namespace {

struct SchemeInfo {
    SchemeKind kind;
    std::string_view name;
    bool shifted;
    bool zero_ic;
    std::size_t min_n;
};

constexpr SchemeInfo kInfo[] = {
    {SchemeKind::GL, "gl", true, true, 1},
    {SchemeKind::GL_TRUNC, "gl_trunc", true, true, 1},
    {SchemeKind::L1, "l1", false, false, 1},
    {SchemeKind::L1_MOD, "l1_mod", false, false, 2},
    {SchemeKind::L1_TRUNC, "l1_trunc", false, false, 1},
    {SchemeKind::L1_MOD_TRUNC, "l1_mod_trunc", false, false, 2},
    {SchemeKind::SHIFT_2MA, "shift_2ma", true, true, 1},
    {SchemeKind::SHIFT_2, "shift_2", true, true, 2},
    {SchemeKind::GL_LAST2, "gl_last2", true, false, 2},
    {SchemeKind::GL_LAST2_TRUNC, "gl_last2_trunc", true, false, 2},
};

const SchemeInfo& info(SchemeKind kind) {
    for (const auto& i : kInfo)
        if (i.kind == kind)
            return i;
    throw UnsupportedError("unknown scheme kind");
}

// k-th coefficient of (1 - z)^beta
double binomial_weight_at(double beta, std::size_t k) {
    double w = 1.0;
    for (std::size_t j = 1; j <= k; ++j)
        w *= (static_cast<double>(j) - 1.0 - beta) / static_cast<double>(j);
    return w;
}

double l1_tail_value(double a, double k, L1TailCoefficient c) {
    const double second = (c == L1TailCoefficient::Printed) ? a : 1.0;
    return 1.0 / (gamma_real(-a) * std::pow(k, 1.0 + a)) +
           second / (12.0 * gamma_real(-2.0 - a) * std::pow(k, 3.0 + a));
}

double gl2_value(double a, double k) {
    return 1.0 / (gamma_real(-a) * std::pow(k, 1.0 + a)) -
           a / (2.0 * gamma_real(-1.0 - a) * std::pow(k, 2.0 + a));
}

// three-term expansion of the last L1 weight, used once n is past the threshold
double l1_last_expansion(double a, double n) {
    return -1.0 / (gamma_real(1.0 - a) * std::pow(n, a)) +
           1.0 / (2.0 * gamma_real(-a) * std::pow(n, a + 1.0)) -
           1.0 / (6.0 * gamma_real(-1.0 - a) * std::pow(n, a + 2.0));
}

void apply_l1_head_correction(std::vector<double>& s, double a) {
    const double c = zeta_real(a - 1.0) / gamma_real(2.0 - a);
    s[0] -= c;
    s[1] += 2.0 * c;
    s[2] -= c;
}

} // namespace

std::string_view scheme_name(SchemeKind kind) {
    return info(kind).name;
}

std::optional<SchemeKind> parse_scheme_kind(std::string_view name) {
    for (const auto& i : kInfo)
        if (i.name == name)
            return i.kind;
    return std::nullopt;
}

bool is_shifted(SchemeKind kind) {
    return info(kind).shifted;
}

bool requires_zero_ic(SchemeKind kind) {
    return info(kind).zero_ic;
}

std::size_t min_step(SchemeKind kind) {
    return info(kind).min_n;
}

double claimed_order(SchemeKind kind, FractionalOrder alpha) {
    switch (kind) {
    case SchemeKind::L1:
    case SchemeKind::L1_TRUNC:
    case SchemeKind::SHIFT_2MA:
        return 2.0 - alpha;
    default:
        return 2.0;
    }
}

std::size_t TailPolicy::threshold(std::size_t N) const {
    if (!(divisor > 0.0) || !std::isfinite(divisor))
        throw DomainError("tail divisor p must be positive");
    if (N == 0)
        throw SizeError("threshold needs N >= 1");
    const double t = std::ceil(static_cast<double>(N) / divisor);
    if (t < 1.0)
        return 1;
    if (t > static_cast<double>(N))
        return N;
    return static_cast<std::size_t>(t);
}

std::vector<double> binomial_weights(double beta, std::size_t n) {
    std::vector<double> w(n + 1);
    w[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        w[k] = w[k - 1] * (static_cast<double>(k) - 1.0 - beta) / static_cast<double>(k);
    return w;
}

std::vector<double> gl_weights(FractionalOrder alpha, std::size_t n) {
    return binomial_weights(alpha, n);
}

double tail_expansion(TailFamily family, FractionalOrder alpha, std::size_t k, int M,
                      L1TailCoefficient l1_tail) {
    if (k == 0)
        throw SizeError("tail_expansion: k must be >= 1");
    const double a = alpha;
    const double kk = static_cast<double>(k);
    switch (family) {
    case TailFamily::GL2:
        return gl2_value(a, kk);
    case TailFamily::GLM: {
        if (M < 0)
            throw DomainError("tail_expansion: M must be non-negative");
        if (M > 3)
            throw UnsupportedError("tail_expansion: GLM supports M <= 3");
        double sum = 0.0;
        double fact = 1.0;
        for (int m = 0; m <= M; ++m) {
            if (m > 0)
                fact *= m;
            sum += gen_bernoulli_diag(m, a) /
                   (fact * gamma_real(-m - a) * std::pow(kk, m + a + 1.0));
        }
        return sum;
    }
    case TailFamily::L1TAIL:
        return l1_tail_value(a, kk, l1_tail);
    }
    throw UnsupportedError("tail_expansion: unknown family");
}

double l1_interior_weight(FractionalOrder alpha, std::size_t k) {
    if (k == 0)
        throw SizeError("l1_interior_weight: k must be >= 1");
    const double b = 1.0 - alpha;
    const double kk = static_cast<double>(k);
    const double g = gamma_real(2.0 - alpha);
    if (k < 8)
        return (std::pow(kk - 1.0, b) - 2.0 * std::pow(kk, b) + std::pow(kk + 1.0, b)) / g;
    // second difference via even binomial terms: 2 sum_{m even} C(b, m) k^{b-m}
    const double inv_k2 = 1.0 / (kk * kk);
    double c = b * (b - 1.0) / 2.0; // C(b, 2)
    double p = std::pow(kk, b) * inv_k2;
    double sum = 0.0;
    for (int m = 2; m < 60; m += 2) {
        const double t = c * p;
        sum += t;
        if (std::abs(t) < 1e-18 * std::abs(sum))
            break;
        c *= (b - m) * (b - m - 1.0) / ((m + 1.0) * (m + 2.0));
        p *= inv_k2;
    }
    return 2.0 * sum / g;
}

double l1_last_weight(FractionalOrder alpha, std::size_t n) {
    if (n == 0)
        throw SizeError("l1_last_weight: n must be >= 1");
    const double b = 1.0 - alpha;
    const double nn = static_cast<double>(n);
    return std::pow(nn, b) * std::expm1(b * std::log1p(-1.0 / nn)) / gamma_real(2.0 - alpha);
}

std::vector<double> l1_weights(FractionalOrder alpha, std::size_t n) {
    if (n < 1)
        throw SizeError("l1_weights: n must be >= 1");
    std::vector<double> s(n + 1);
    s[0] = 1.0 / gamma_real(2.0 - alpha);
    for (std::size_t k = 1; k < n; ++k)
        s[k] = l1_interior_weight(alpha, k);
    s[n] = l1_last_weight(alpha, n);
    return s;
}

std::vector<double> l1_mod_weights(FractionalOrder alpha, std::size_t n) {
    if (n < 2)
        throw SizeError("l1_mod_weights: n must be >= 2 (head correction touches indices 0..2)");
    auto s = l1_weights(alpha, n);
    apply_l1_head_correction(s, alpha);
    return s;
}

std::vector<double> shifted_head_weights(ShiftedHead kind, FractionalOrder alpha) {
    const double a = alpha;
    const double ga = gamma_real(-a);
    const double z0 = zeta_real(a);
    const double z1 = zeta_real(a + 1.0);
    const double z2 = zeta_real(a + 2.0);
    if (kind == ShiftedHead::W_TILDE) {
        return {
            (z0 + 0.5 * (a - 1.0) * (a + 2.0) * z1 - 0.5 * a * (a + 1.0) * z2) / ga,
            (0.5 * (a * a + a + 2.0) - z0 - 0.5 * a * (a + 1.0) * z1) / ga,
        };
    }
    const double zm = zeta_real(a - 1.0);
    return {
        -(2.0 * zm + (a + 3.0) * (a - 2.0) * z0 - (3.0 * a * a + 3.0 * a - 4.0) * z1 +
          2.0 * a * (a + 1.0) * z2) /
            (4.0 * ga),
        (2.0 + a + a * a + 2.0 * zm + (a + a * a - 4.0) * z0 - 2.0 * a * (a + 1.0) * z1) /
            (2.0 * ga),
        ((4.0 + a + a * a) / std::pow(2.0, 1.0 + a) - 2.0 * zm - (a * a + a - 2.0) * z0 +
         a * (1.0 + a) * z1) /
            (4.0 * ga),
    };
}

LastTwo gamma_last_two(FractionalOrder alpha, std::size_t n) {
    if (n < 2)
        throw SizeError("gamma_last_two: n must be >= 2");
    const double a = alpha;
    const double nn = static_cast<double>(n);
    const double v = binomial_weight_at(a - 2.0, n - 2);
    const double s = std::pow(nn - a / 2.0, 1.0 - a) / gamma_real(2.0 - a);
    return {(nn - 2.0 * a) / (1.0 + a - nn) * v + s, v - s};
}

LastTwo gamma_last_two_asym(FractionalOrder alpha, std::size_t n) {
    if (n < 2)
        throw SizeError("gamma_last_two_asym: n must be >= 2");
    const double a = alpha;
    const double nn = static_cast<double>(n);
    const double tail = 1.0 / (24.0 * gamma_real(-a) * std::pow(nn, 1.0 + a));
    return {(26.0 - a) * tail, -1.0 / (gamma_real(1.0 - a) * std::pow(nn, a)) + (13.0 * a + 10.0) * tail};
}

PartialSums gl_partial_sums(FractionalOrder alpha, std::size_t N) {
    if (N < 2)
        throw SizeError("gl_partial_sums: N must be >= 2");
    const auto w = gl_weights(alpha, N - 1);
    double w0 = 0.0;
    double moment = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        w0 += w[k];
        moment += static_cast<double>(k) * w[k];
    }
    const double nn = static_cast<double>(N);
    const double s = std::pow(nn - alpha / 2.0, 1.0 - alpha) / gamma_real(2.0 - alpha);
    return {w0, binomial_weight_at(alpha - 1.0, N - 1), nn * w0 - moment - s};
}

WeightVector build_scheme(SchemeKind kind, FractionalOrder alpha, std::size_t n, std::size_t N,
                          const TailPolicy& policy) {
    const auto& meta = info(kind);
    if (n > N)
        throw SizeError("build_scheme: n = " + std::to_string(n) + " exceeds N = " + std::to_string(N));
    if (n < meta.min_n)
        throw SizeError("build_scheme: " + std::string(meta.name) + " needs n >= " +
                        std::to_string(meta.min_n) + ", got " + std::to_string(n));
    const std::size_t T = policy.threshold(N);
    const double a = alpha;

    WeightVector out{kind, a, n, {}, meta.shifted ? a / 2.0 : 0.0, claimed_order(kind, alpha),
                     meta.zero_ic};
    auto& c = out.coeffs;

    switch (kind) {
    case SchemeKind::GL:
    case SchemeKind::GL_TRUNC:
        c = gl_weights(alpha, n);
        c[n] = 0.0; // the GL sum stops at n-1
        if (kind == SchemeKind::GL_TRUNC)
            for (std::size_t k = T + 1; k < n; ++k)
                c[k] = gl2_value(a, static_cast<double>(k));
        break;
    case SchemeKind::L1:
        c = l1_weights(alpha, n);
        break;
    case SchemeKind::L1_MOD:
        c = l1_mod_weights(alpha, n);
        break;
    case SchemeKind::L1_TRUNC:
    case SchemeKind::L1_MOD_TRUNC:
        c = l1_weights(alpha, n);
        for (std::size_t k = T + 1; k < n; ++k)
            c[k] = l1_tail_value(a, static_cast<double>(k), policy.l1_tail);
        if (n > T)
            c[n] = l1_last_expansion(a, static_cast<double>(n));
        if (kind == SchemeKind::L1_MOD_TRUNC)
            apply_l1_head_correction(c, a);
        break;
    case SchemeKind::SHIFT_2MA:
    case SchemeKind::SHIFT_2: {
        const auto head = shifted_head_weights(
            kind == SchemeKind::SHIFT_2MA ? ShiftedHead::W_TILDE : ShiftedHead::W_HAT, alpha);
        c.assign(n + 1, 0.0);
        for (std::size_t k = 0; k < head.size() && k <= n; ++k)
            c[k] = head[k];
        for (std::size_t k = head.size(); k < n; ++k)
            c[k] = gl2_value(a, static_cast<double>(k));
        break;
    }
    case SchemeKind::GL_LAST2:
    case SchemeKind::GL_LAST2_TRUNC: {
        c = gl_weights(alpha, n);
        // the asymptotic pair takes over once the penultimate index is past the threshold
        if (kind == SchemeKind::GL_LAST2_TRUNC && n - 1 > T) {
            for (std::size_t k = T + 1; k + 2 <= n; ++k)
                c[k] = gl2_value(a, static_cast<double>(k));
            const auto g = gamma_last_two_asym(alpha, n);
            c[n - 1] = g.penultimate;
            c[n] = g.last;
        } else {
            const auto g = gamma_last_two(alpha, n);
            c[n - 1] = g.penultimate;
            c[n] = g.last;
        }
        break;
    }
    }
    return out;
}

void write_weights_csv(std::ostream& os, const WeightVector& w) {
    os << "k,coeff\n";
    char buf[64];
    for (std::size_t k = 0; k < w.coeffs.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, w.coeffs[k]);
        os << buf;
    }
}

} // namespace fraccal
