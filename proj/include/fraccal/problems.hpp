#pragma once

#include "fraccal/approx.hpp"
#include "fraccal/solver.hpp"

namespace fraccal {

// Scalar problem whose exact solution is y; the forcing is L y + D^alpha y.
CaputoProblem manufactured_problem(FractionalOrder alpha, double L, const ReferenceSum& y);

// System with exact solutions (y, z); forcings built from the closed forms.
SystemProblem manufactured_system(FractionalOrder alpha, double A, double B, double C, double D,
                                  const ReferenceSum& y, const ReferenceSum& z);

// y = 2 x^{2+alpha}, L = 1, y(0) = 0
CaputoProblem example1(FractionalOrder alpha);
// y = sin x + cos x + x^3 ln x, L = 1, y(0) = 1
CaputoProblem example2(FractionalOrder alpha);
// y = e^{2x}, z = e^x with (A, B, C, D) = (1, 2, 3, 4)
SystemProblem example3(FractionalOrder alpha);
// y = c, forcing L c
CaputoProblem constant_problem(FractionalOrder alpha, double c = 1.0, double L = 1.0);

} // namespace fraccal
