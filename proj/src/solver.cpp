#include "fraccal/solver.hpp"
#include "fraccal/error.hpp"
#include "fraccal/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace fraccal {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool negligible(double value, double scale) {
    return !std::isfinite(value) || std::abs(value) <= 64.0 * kEps * scale;
}

double check_step(double h, std::size_t N) {
    if (N < 1)
        throw SizeError("solver: N must be >= 1");
    if (!(h > 0.0))
        throw DomainError("solver: step must be positive");
    return h;
}

void require_shift(SchemeKind kind, bool shifted, std::string_view solver) {
    if (is_shifted(kind) != shifted) {
        throw SchemeMismatch(std::string(solver) + " needs a " + (shifted ? "shifted" : "non-shifted") +
                             " scheme; " + std::string(scheme_name(kind)) + " is " +
                             (is_shifted(kind) ? "shifted (alpha/2)" : "non-shifted"));
    }
}

double history(const std::vector<double>& c, const std::vector<double>& u, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        s += c[k] * u[n - k];
    return s;
}

void check_finite(double value, std::size_t n) {
    if (!std::isfinite(value))
        throw SingularStep("solver produced a non-finite value", n);
}

Trajectory solve_scalar(const CaputoProblem& p, SchemeKind kind, std::size_t N,
                        const TailPolicy& policy, SolverTag tag) {
    const bool shifted = tag == SolverTag::NS2;
    require_shift(kind, shifted, solver_name(tag));
    const double h = check_step(1.0 / static_cast<double>(N), N);
    const double a = p.alpha;
    const double ha = std::pow(h, a);
    const double c = shifted ? 1.0 - a / 2.0 : 1.0;

    Trajectory t{h, std::vector<double>(N + 1), {}, kind, tag};
    t.u[0] = p.y0;
    t.u[1] = first_step_scalar(p, h);
    for (std::size_t n = 2; n <= N; ++n) {
        const auto w = build_scheme(kind, p.alpha, n, N, policy);
        const double lam0 = w.coeffs[0];
        const double den = lam0 + p.L * c * ha;
        if (negligible(den, std::abs(lam0) + std::abs(p.L * c * ha)))
            throw SingularStep(std::string(solver_name(tag)) + ": vanishing step denominator", n);
        const double xn = t.x(n);
        double rhs;
        if (shifted)
            rhs = ha * p.f(xn - a * h / 2.0) - a * p.L * ha / 2.0 * t.u[n - 1];
        else
            rhs = ha * p.f(xn);
        t.u[n] = (rhs - history(w.coeffs, t.u, n)) / den;
        check_finite(t.u[n], n);
    }
    return t;
}

Trajectory solve_system(const SystemProblem& p, SchemeKind kind, std::size_t N,
                        const TailPolicy& policy, SolverTag tag) {
    const bool shifted = tag == SolverTag::NS4;
    require_shift(kind, shifted, solver_name(tag));
    const double h = check_step(1.0 / static_cast<double>(N), N);
    const double a = p.alpha;
    const double ha = std::pow(h, a);
    const double c = shifted ? 1.0 - a / 2.0 : 1.0;

    Trajectory t{h, std::vector<double>(N + 1), std::vector<double>(N + 1), kind, tag};
    t.u[0] = p.y0;
    t.v[0] = p.z0;
    const auto first = first_step_system(p, h);
    t.u[1] = first.u;
    t.v[1] = first.v;
    for (std::size_t n = 2; n <= N; ++n) {
        const auto w = build_scheme(kind, p.alpha, n, N, policy);
        const double lam0 = w.coeffs[0];
        const double xn = t.x(n);
        double S, Q;
        if (shifted) {
            const double xs = xn - a * h / 2.0;
            S = ha * (p.f(xs) - a / 2.0 * (p.A * t.u[n - 1] + p.B * t.v[n - 1]));
            Q = ha * (p.g(xs) - a / 2.0 * (p.C * t.u[n - 1] + p.D * t.v[n - 1]));
        } else {
            S = ha * p.f(xn);
            Q = ha * p.g(xn);
        }
        S -= history(w.coeffs, t.u, n);
        Q -= history(w.coeffs, t.v, n);

        const double a11 = lam0 + p.A * ha * c;
        const double a12 = p.B * ha * c;
        const double a21 = p.C * ha * c;
        const double a22 = lam0 + p.D * ha * c;
        const double det = a11 * a22 - a12 * a21;
        if (negligible(det, std::abs(a11 * a22) + std::abs(a12 * a21)))
            throw SingularStep(std::string(solver_name(tag)) + ": singular step matrix", n);
        t.u[n] = (a22 * S - a12 * Q) / det;
        t.v[n] = (a11 * Q - a21 * S) / det;
        check_finite(t.u[n], n);
        check_finite(t.v[n], n);
    }
    return t;
}

void put(std::ostream& os, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
}

} // namespace

std::string_view solver_name(SolverTag tag) {
    switch (tag) {
    case SolverTag::NS1:
        return "ns1";
    case SolverTag::NS2:
        return "ns2";
    case SolverTag::NS3:
        return "ns3";
    case SolverTag::NS4:
        return "ns4";
    }
    return "?";
}

bool solver_is_shifted(SolverTag tag) {
    return tag == SolverTag::NS2 || tag == SolverTag::NS4;
}

bool solver_is_system(SolverTag tag) {
    return tag == SolverTag::NS3 || tag == SolverTag::NS4;
}

double first_step_scalar(const CaputoProblem& p, double h) {
    if (!(h > 0.0))
        throw DomainError("first_step_scalar: step must be positive");
    const double g = gamma_real(2.0 - p.alpha);
    const double ha = std::pow(h, p.alpha.value());
    const double den = 1.0 + g * p.L * ha;
    if (negligible(den, 1.0 + std::abs(g * p.L * ha)))
        throw SingularStep("first_step_scalar: 1 + Gamma(2-alpha) L h^alpha vanishes", 1);
    return (p.y0 + g * ha * p.f(h)) / den;
}

StepPair first_step_system(const SystemProblem& p, double h) {
    if (!(h > 0.0))
        throw DomainError("first_step_system: step must be positive");
    const double s0 = 1.0 / gamma_real(2.0 - p.alpha);
    const double ha = std::pow(h, p.alpha.value());
    const double a11 = s0 + p.A * ha;
    const double a22 = s0 + p.D * ha;
    const double bc = p.B * p.C * ha * ha;
    const double det = a11 * a22 - bc;
    if (negligible(det, std::abs(a11 * a22) + std::abs(bc)))
        throw SingularStep("first_step_system: singular head determinant", 1);
    const double r1 = ha * p.f(h) + s0 * p.y0;
    const double r2 = ha * p.g(h) + s0 * p.z0;
    return {(a22 * r1 - p.B * ha * r2) / det, (a11 * r2 - p.C * ha * r1) / det};
}

Trajectory solve_ns1(const CaputoProblem& p, SchemeKind kind, std::size_t N, const TailPolicy& policy) {
    return solve_scalar(p, kind, N, policy, SolverTag::NS1);
}

Trajectory solve_ns2(const CaputoProblem& p, SchemeKind kind, std::size_t N, const TailPolicy& policy) {
    return solve_scalar(p, kind, N, policy, SolverTag::NS2);
}

Trajectory solve_ns3(const SystemProblem& p, SchemeKind kind, std::size_t N, const TailPolicy& policy) {
    return solve_system(p, kind, N, policy, SolverTag::NS3);
}

Trajectory solve_ns4(const SystemProblem& p, SchemeKind kind, std::size_t N, const TailPolicy& policy) {
    return solve_system(p, kind, N, policy, SolverTag::NS4);
}

double max_error(const Trajectory& t, const RealFn& exact, int component) {
    const auto& vals = component == 0 ? t.u : t.v;
    if (component != 0 && component != 1)
        throw InputError("max_error: component must be 0 or 1");
    if (vals.empty())
        throw InputError("max_error: trajectory has no such component");
    double m = 0.0;
    for (std::size_t n = 0; n < vals.size(); ++n)
        m = std::max(m, std::abs(vals[n] - exact(t.x(n))));
    return m;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t, const RealFn& exact_u,
                          const RealFn& exact_v) {
    const bool sys = !t.v.empty();
    const bool eu = static_cast<bool>(exact_u);
    const bool ev = sys && static_cast<bool>(exact_v);
    os << "x,u";
    if (sys)
        os << ",v";
    if (eu)
        os << (sys ? ",exact_u" : ",exact");
    if (ev)
        os << ",exact_v";
    if (eu)
        os << (sys ? ",err_u" : ",err");
    if (ev)
        os << ",err_v";
    os << '\n';
    for (std::size_t n = 0; n < t.u.size(); ++n) {
        const double x = t.x(n);
        put(os, x);
        os << ',';
        put(os, t.u[n]);
        if (sys) {
            os << ',';
            put(os, t.v[n]);
        }
        double yu = 0.0, yv = 0.0;
        if (eu) {
            yu = exact_u(x);
            os << ',';
            put(os, yu);
        }
        if (ev) {
            yv = exact_v(x);
            os << ',';
            put(os, yv);
        }
        if (eu) {
            os << ',';
            put(os, std::abs(t.u[n] - yu));
        }
        if (ev) {
            os << ',';
            put(os, std::abs(t.v[n] - yv));
        }
        os << '\n';
    }
}

} // namespace fraccal
