#include "fraccal/experiment.hpp"
#include "fraccal/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <sstream>
#include <thread>

namespace fraccal {

namespace {

std::size_t steps_for(double h) {
    const double n = std::round(1.0 / h);
    if (n < 1.0 || std::abs(n * h - 1.0) > 1e-9)
        return 0;
    return static_cast<std::size_t>(n);
}

std::size_t thread_budget() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FRACCAL_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1)
            n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    }
    return n;
}

std::string problem_label(const ExperimentSpec& s) {
    switch (s.problem) {
    case ProblemId::Example1:
        return "example1";
    case ProblemId::Example2:
        return "example2";
    case ProblemId::Example3:
        return "example3";
    case ProblemId::Constant:
        return "constant";
    case ProblemId::Custom:
        return s.custom ? s.custom->source : "custom";
    }
    return "?";
}

} // namespace

bool problem_is_system(const ExperimentSpec& spec) {
    if (spec.problem == ProblemId::Example3)
        return true;
    if (spec.problem == ProblemId::Custom)
        return spec.custom && spec.custom->system;
    return false;
}

ExperimentSpec parse_spec(const std::vector<std::string>& args) {
    CLI::App app{"Convergence tables for Caputo-derivative finite-difference schemes", "fraccal"};
    std::string problem = "example1";
    std::string solver = "ns2";
    std::string scheme = "gl_trunc";
    std::vector<double> alphas;
    std::vector<double> hlist;
    double h_start = 0.00625;
    int h_steps = 4;
    double p = 5.0;
    std::string format = "csv";
    std::string out;
    std::string l1_tail = "derived";
    std::string component = "y";
    std::string mode = "table";

    app.add_option("--problem", problem,
                   "example1 | example2 | example3 | constant | path to a problem file")
        ->capture_default_str();
    app.add_option("--solver", solver, "ns1 | ns2 | ns3 | ns4")->capture_default_str();
    app.add_option("--scheme", scheme,
                   "gl, gl_trunc, l1, l1_mod, l1_trunc, l1_mod_trunc, shift_2ma, shift_2, "
                   "gl_last2, gl_last2_trunc")
        ->capture_default_str();
    app.add_option("--alpha", alphas, "comma-separated orders in (0,1) [0.2,0.5,0.9]")
        ->delimiter(',');
    app.add_option("--h-list", hlist, "explicit comma-separated step list (must halve)")->delimiter(',');
    app.add_option("--h-start", h_start, "largest reported step")->capture_default_str();
    app.add_option("--h-steps", h_steps, "number of reported steps")->capture_default_str();
    app.add_option("--p", p, "tail divisor; weights past ceil(N/p) use expansions")
        ->capture_default_str();
    app.add_option("--l1-tail", l1_tail, "derived (1/12) | printed (alpha/12) L1 tail coefficient")
        ->capture_default_str();
    app.add_option("--format", format, "csv | md")->capture_default_str();
    app.add_option("--out", out, "write to this file instead of standard output");
    app.add_option("--component", component, "y | z (systems only)")->capture_default_str();
    app.add_option("--mode", mode, "table | weights | trajectory")->capture_default_str();
    app.set_config("--config", "", "read options from an INI/TOML file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ExperimentSpec spec;

    if (problem == "example1")
        spec.problem = ProblemId::Example1;
    else if (problem == "example2")
        spec.problem = ProblemId::Example2;
    else if (problem == "example3")
        spec.problem = ProblemId::Example3;
    else if (problem == "constant")
        spec.problem = ProblemId::Constant;
    else if (std::filesystem::exists(problem)) {
        spec.problem = ProblemId::Custom;
        spec.custom = load_custom_problem(problem);
    } else
        throw UsageError("unknown problem '" + problem + "' (not a built-in name or a file)");

    if (solver == "ns1")
        spec.solver = SolverTag::NS1;
    else if (solver == "ns2")
        spec.solver = SolverTag::NS2;
    else if (solver == "ns3")
        spec.solver = SolverTag::NS3;
    else if (solver == "ns4")
        spec.solver = SolverTag::NS4;
    else
        throw UsageError("unknown solver '" + solver + "'");

    const auto kind = parse_scheme_kind(scheme);
    if (!kind)
        throw UsageError("unknown scheme '" + scheme + "'");
    spec.scheme = *kind;

    if (solver_is_shifted(spec.solver) != is_shifted(spec.scheme)) {
        throw UsageError("shift mismatch: " + solver + " expects a " +
                         (solver_is_shifted(spec.solver) ? "shifted" : "non-shifted") +
                         " scheme, but " + scheme + " is " +
                         (is_shifted(spec.scheme) ? "shifted by alpha/2" : "non-shifted"));
    }
    if (solver_is_system(spec.solver) != problem_is_system(spec)) {
        throw UsageError(solver + (solver_is_system(spec.solver) ? " solves 2x2 systems" : " solves scalar problems") +
                         ", but problem '" + problem + "' is " +
                         (problem_is_system(spec) ? "a system" : "scalar"));
    }

    if (!alphas.empty())
        spec.alphas = alphas;
    else if (spec.custom && !spec.custom->alphas.empty())
        spec.alphas = spec.custom->alphas;
    for (double a : spec.alphas)
        if (!(a > 0.0 && a < 1.0))
            throw UsageError("alpha must lie in (0,1), got " + format_alpha(a));
    std::sort(spec.alphas.begin(), spec.alphas.end());
    spec.alphas.erase(std::unique(spec.alphas.begin(), spec.alphas.end()), spec.alphas.end());
    if (spec.custom) {
        for (double a : spec.alphas) {
            realize_terms(spec.custom->solution, FractionalOrder(a));
            realize_terms(spec.custom->solution_z, FractionalOrder(a));
        }
    }

    if (!hlist.empty()) {
        spec.hs = hlist;
    } else {
        if (h_steps < 1)
            throw UsageError("--h-steps must be at least 1");
        for (int i = 0; i < h_steps; ++i)
            spec.hs.push_back(h_start / std::pow(2.0, i));
    }
    for (std::size_t i = 0; i < spec.hs.size(); ++i) {
        const double h = spec.hs[i];
        if (!(h > 0.0) || steps_for(h) < 2)
            throw UsageError("step " + format_step(h) + " must divide [0,1] into at least 2 steps");
        if (i > 0 && std::abs(spec.hs[i - 1] - 2.0 * h) > 1e-9 * spec.hs[i - 1])
            throw UsageError("step list must halve: " + format_step(spec.hs[i - 1]) + " then " +
                             format_step(h));
    }

    if (!(p > 0.0) || !std::isfinite(p))
        throw UsageError("--p must be positive");
    spec.policy.divisor = p;
    if (l1_tail == "derived")
        spec.policy.l1_tail = L1TailCoefficient::Derived;
    else if (l1_tail == "printed")
        spec.policy.l1_tail = L1TailCoefficient::Printed;
    else
        throw UsageError("--l1-tail must be derived or printed");

    if (format == "csv")
        spec.format = OutputFormat::Csv;
    else if (format == "md" || format == "markdown")
        spec.format = OutputFormat::Markdown;
    else
        throw UsageError("--format must be csv or md");

    if (component == "y")
        spec.component = 0;
    else if (component == "z" && problem_is_system(spec))
        spec.component = 1;
    else
        throw UsageError("--component must be y (or z for systems)");

    if (mode == "table")
        spec.mode = RunMode::Table;
    else if (mode == "weights")
        spec.mode = RunMode::Weights;
    else if (mode == "trajectory")
        spec.mode = RunMode::Trajectory;
    else
        throw UsageError("--mode must be table, weights or trajectory");

    if (!out.empty())
        spec.out = out;
    spec.threads = thread_budget();
    return spec;
}

namespace {

CaputoProblem scalar_problem(const ExperimentSpec& spec, FractionalOrder a) {
    switch (spec.problem) {
    case ProblemId::Example1:
        return example1(a);
    case ProblemId::Example2:
        return example2(a);
    case ProblemId::Constant:
        return constant_problem(a);
    case ProblemId::Custom:
        return manufactured_problem(a, spec.custom->L, realize_terms(spec.custom->solution, a));
    default:
        throw InputError("problem is not scalar");
    }
}

SystemProblem system_problem(const ExperimentSpec& spec, FractionalOrder a) {
    if (spec.problem == ProblemId::Example3)
        return example3(a);
    if (spec.problem == ProblemId::Custom && spec.custom->system) {
        const auto& c = *spec.custom;
        return manufactured_system(a, c.A, c.B, c.C, c.D, realize_terms(c.solution, a),
                                   realize_terms(c.solution_z, a));
    }
    throw InputError("problem is not a system");
}

} // namespace

CellRun solve_cell(const ExperimentSpec& spec, double alpha, double h) {
    const FractionalOrder a(alpha);
    const std::size_t N = steps_for(h);
    if (N == 0)
        throw InputError("step does not divide [0,1]");
    if (problem_is_system(spec)) {
        const auto p = system_problem(spec, a);
        auto t = spec.solver == SolverTag::NS3 ? solve_ns3(p, spec.scheme, N, spec.policy)
                                               : solve_ns4(p, spec.scheme, N, spec.policy);
        return {std::move(t), p.exact_y, p.exact_z};
    }
    const auto p = scalar_problem(spec, a);
    auto t = spec.solver == SolverTag::NS1 ? solve_ns1(p, spec.scheme, N, spec.policy)
                                           : solve_ns2(p, spec.scheme, N, spec.policy);
    return {std::move(t), p.exact, {}};
}

std::optional<std::string> initial_value_warning(const ExperimentSpec& spec) {
    if (!requires_zero_ic(spec.scheme))
        return std::nullopt;
    const FractionalOrder a(spec.alphas.front());
    double y0 = 0.0, z0 = 0.0;
    if (problem_is_system(spec)) {
        const auto p = system_problem(spec, a);
        y0 = p.y0;
        z0 = p.z0;
    } else {
        y0 = scalar_problem(spec, a).y0;
    }
    if (y0 == 0.0 && z0 == 0.0)
        return std::nullopt;
    return std::string(scheme_name(spec.scheme)) + " assumes zero initial values but " + problem_label(spec) +
           " starts at y(0) = " + format_alpha(y0) +
           (problem_is_system(spec) ? ", z(0) = " + format_alpha(z0) : std::string()) +
           "; expect errors that do not shrink with h";
}

double run_cell(const ExperimentSpec& spec, double alpha, double h) {
    const auto r = solve_cell(spec, alpha, h);
    return max_error(r.trajectory, spec.component == 0 ? r.exact_u : r.exact_v, spec.component);
}

ConvergenceTable run_table(const ExperimentSpec& spec) {
    if (spec.hs.empty() || spec.alphas.empty())
        throw InputError("run_table: empty alpha or step list");

    // cells per alpha: optional warm-up at 2h, then the reported steps
    struct Cell {
        double alpha;
        double h;
        double error = 0.0;
        std::exception_ptr failure;
    };
    std::vector<Cell> cells;
    std::vector<bool> has_warmup;
    const double warm = 2.0 * spec.hs.front();
    const bool warm_ok = steps_for(warm) >= 2;
    for (double a : spec.alphas) {
        if (warm_ok)
            cells.push_back({a, warm, 0.0, nullptr});
        for (double h : spec.hs)
            cells.push_back({a, h, 0.0, nullptr});
    }

    // largest N first so the long solves start early
    std::vector<std::size_t> order(cells.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return cells[x].h < cells[y].h; });

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < order.size();) {
            Cell& c = cells[order[i]];
            try {
                c.error = run_cell(spec, c.alpha, c.h);
            } catch (...) {
                c.failure = std::current_exception();
            }
        }
    };
    const std::size_t nthreads = std::max<std::size_t>(1, std::min(spec.threads, cells.size()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 1; i < nthreads; ++i)
            pool.emplace_back(worker);
        worker();
    }

    for (const auto& c : cells) {
        if (!c.failure)
            continue;
        try {
            std::rethrow_exception(c.failure);
        } catch (const std::exception& e) {
            throw NumericFailure("alpha=" + format_alpha(c.alpha) + ", h=" + format_step(c.h) + ": " +
                                 e.what());
        }
    }

    ConvergenceTable table;
    std::ostringstream cap;
    cap << "Maximum error and order: " << problem_label(spec) << ", " << solver_name(spec.solver)
        << " + " << scheme_name(spec.scheme) << ", p = " << spec.policy.divisor;
    if (spec.policy.l1_tail == L1TailCoefficient::Printed)
        cap << ", printed L1 tail";
    if (spec.component == 1)
        cap << ", z component";
    table.caption = cap.str();

    std::size_t idx = 0;
    for (std::size_t ai = 0; ai < spec.alphas.size(); ++ai) {
        std::optional<double> prev;
        if (warm_ok)
            prev = cells[idx++].error;
        for (std::size_t hi = 0; hi < spec.hs.size(); ++hi) {
            const auto& c = cells[idx++];
            TableRow row{c.alpha, c.h, c.error, std::nullopt};
            if (prev && *prev > kErrorFloor && c.error > kErrorFloor)
                row.order = std::log2(*prev / c.error);
            prev = c.error;
            table.rows.push_back(row);
        }
    }
    return table;
}

} // namespace fraccal
