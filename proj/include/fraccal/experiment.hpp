#pragma once

#include "fraccal/problems.hpp"
#include "fraccal/solver.hpp"
#include "fraccal/weights.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraccal {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Solver failure tagged with the (alpha, h) cell it came from.
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --help was requested; carries the rendered help text.
struct HelpRequested {
    std::string text;
};

// Problem read from a key=value file; see README for the format.
struct CustomProblem {
    bool system = false;
    double L = 1.0;
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    // each term: coefficient, function id, parameter and whether alpha is added to it
    struct Term {
        double coef = 1.0;
        ReferenceId id = ReferenceId::CONST;
        double param = 0.0;
        int alpha_sign = 0; // param + alpha_sign * alpha
    };
    std::vector<Term> solution;   // y
    std::vector<Term> solution_z; // z, systems only
    std::vector<double> alphas;   // optional default alpha list
    std::string source;
};

CustomProblem parse_custom_problem(const std::string& text, const std::string& source = "<text>");
CustomProblem load_custom_problem(const std::string& path);
ReferenceSum realize_terms(const std::vector<CustomProblem::Term>& terms, FractionalOrder alpha);

enum class ProblemId { Example1, Example2, Example3, Constant, Custom };
enum class OutputFormat { Csv, Markdown };
enum class RunMode { Table, Weights, Trajectory };

struct ExperimentSpec {
    ProblemId problem = ProblemId::Example1;
    std::optional<CustomProblem> custom;
    SolverTag solver = SolverTag::NS2;
    SchemeKind scheme = SchemeKind::GL_TRUNC;
    std::vector<double> alphas{0.2, 0.5, 0.9};
    std::vector<double> hs; // strictly halving, largest first
    TailPolicy policy{};
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> out;
    int component = 0; // 0 = y, 1 = z (systems)
    RunMode mode = RunMode::Table;
    std::size_t threads = 1;
};

bool problem_is_system(const ExperimentSpec& spec);

// args excludes the program name. Throws UsageError.
ExperimentSpec parse_spec(const std::vector<std::string>& args);

struct TableRow {
    double alpha;
    double h;
    double max_error;
    std::optional<double> order;
};

struct ConvergenceTable {
    std::vector<TableRow> rows;
    std::string caption;
};

// errors below this are rounding noise; orders against them are left undefined
inline constexpr double kErrorFloor = 1e-13;

ConvergenceTable run_table(const ExperimentSpec& spec);

struct CellRun {
    Trajectory trajectory;
    RealFn exact_u, exact_v;
};
CellRun solve_cell(const ExperimentSpec& spec, double alpha, double h);

// Set when the scheme assumes y(0) = 0 but the problem starts elsewhere.
std::optional<std::string> initial_value_warning(const ExperimentSpec& spec);

// Runs one solve for (alpha, h) and returns the max error of the chosen component.
double run_cell(const ExperimentSpec& spec, double alpha, double h);

std::string emit_table(const ConvergenceTable& t, OutputFormat format);
// Reads either format back; numeric fields only (caption is not recovered).
ConvergenceTable parse_table(const std::string& text);

std::string format_error(double e); // 2.9110e-5
std::string format_order(double o); // 1.9742
std::string format_step(double h);  // 6.25e-3
std::string format_alpha(double a); // 0.5

// Full command-line entry point; returns the process exit code
// (0 ok, 2 usage error, 3 numeric failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fraccal
