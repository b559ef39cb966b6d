#pragma once

#include "fraccal/order.hpp"
#include "fraccal/weights.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace fraccal {

using RealFn = std::function<double(double)>;

// D^alpha y + L y = f on [0, 1], y(0) = y0
struct CaputoProblem {
    FractionalOrder alpha;
    double L;
    RealFn f;
    double y0;
    RealFn exact; // may be empty
};

// D^alpha y + A y + B z = f
// D^alpha z + C y + D z = g
struct SystemProblem {
    FractionalOrder alpha;
    double A, B, C, D;
    RealFn f, g;
    double y0, z0;
    RealFn exact_y, exact_z; // may be empty
};

enum class SolverTag { NS1, NS2, NS3, NS4 };

std::string_view solver_name(SolverTag tag);
bool solver_is_shifted(SolverTag tag);
bool solver_is_system(SolverTag tag);

struct Trajectory {
    double h;
    std::vector<double> u;
    std::vector<double> v; // empty for scalar problems
    SchemeKind scheme;
    SolverTag solver;

    double x(std::size_t n) const { return static_cast<double>(n) * h; }
    std::size_t steps() const { return u.empty() ? 0 : u.size() - 1; }
};

double first_step_scalar(const CaputoProblem& p, double h);

struct StepPair {
    double u, v;
};
StepPair first_step_system(const SystemProblem& p, double h);

// All solvers integrate over [0, 1] with h = 1/N and rebuild the scheme at
// every step index from (kind, n, N, policy).
Trajectory solve_ns1(const CaputoProblem& p, SchemeKind kind, std::size_t N,
                     const TailPolicy& policy = {});
Trajectory solve_ns2(const CaputoProblem& p, SchemeKind kind, std::size_t N,
                     const TailPolicy& policy = {});
Trajectory solve_ns3(const SystemProblem& p, SchemeKind kind, std::size_t N,
                     const TailPolicy& policy = {});
Trajectory solve_ns4(const SystemProblem& p, SchemeKind kind, std::size_t N,
                     const TailPolicy& policy = {});

// max_n |u_n - exact(x_n)|; component 1 selects v for systems
double max_error(const Trajectory& t, const RealFn& exact, int component = 0);

// columns x,u[,v][,exact...][,err...]; 17 significant digits
void write_trajectory_csv(std::ostream& os, const Trajectory& t, const RealFn& exact_u = {},
                          const RealFn& exact_v = {});

} // namespace fraccal
