#include "fraccal/problems.hpp"

namespace fraccal {

CaputoProblem manufactured_problem(FractionalOrder alpha, double L, const ReferenceSum& y) {
    RealFn f = [alpha, L, y](double x) { return L * y.value(x) + y.caputo(alpha, x); };
    RealFn exact = [y](double x) { return y.value(x); };
    return {alpha, L, std::move(f), y.value(0.0), std::move(exact)};
}

SystemProblem manufactured_system(FractionalOrder alpha, double A, double B, double C, double D,
                                  const ReferenceSum& y, const ReferenceSum& z) {
    RealFn f = [=](double x) { return y.caputo(alpha, x) + A * y.value(x) + B * z.value(x); };
    RealFn g = [=](double x) { return z.caputo(alpha, x) + C * y.value(x) + D * z.value(x); };
    return {alpha,
            A,
            B,
            C,
            D,
            std::move(f),
            std::move(g),
            y.value(0.0),
            z.value(0.0),
            [y](double x) { return y.value(x); },
            [z](double x) { return z.value(x); }};
}

CaputoProblem example1(FractionalOrder alpha) {
    return manufactured_problem(alpha, 1.0, {{{2.0, ReferenceFunction::power(2.0 + alpha)}}});
}

CaputoProblem example2(FractionalOrder alpha) {
    return manufactured_problem(alpha, 1.0,
                                {{{1.0, ReferenceFunction::sin()},
                                  {1.0, ReferenceFunction::cos()},
                                  {1.0, ReferenceFunction::x3lnx()}}});
}

SystemProblem example3(FractionalOrder alpha) {
    return manufactured_system(alpha, 1.0, 2.0, 3.0, 4.0, {{{1.0, ReferenceFunction::exp(2.0)}}},
                               {{{1.0, ReferenceFunction::exp(1.0)}}});
}

CaputoProblem constant_problem(FractionalOrder alpha, double c, double L) {
    return manufactured_problem(alpha, L, {{{c, ReferenceFunction::constant()}}});
}

} // namespace fraccal
