#include "fraccal/experiment.hpp"
#include "fraccal/error.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace fraccal {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ExperimentSpec spec;
    try {
        spec = parse_spec(args);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const UsageError& e) {
        err << "fraccal: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    } catch (const std::exception& e) {
        err << "fraccal: " << e.what() << '\n';
        return 2;
    }

    std::ostringstream text;
    try {
        if (const auto w = initial_value_warning(spec); w && spec.mode != RunMode::Weights)
            err << "fraccal: warning: " << *w << '\n';
        const double alpha = spec.alphas.front();
        const double h = spec.hs.front();
        switch (spec.mode) {
        case RunMode::Table:
            text << emit_table(run_table(spec), spec.format);
            break;
        case RunMode::Weights: {
            const auto N = static_cast<std::size_t>(std::lround(1.0 / h));
            write_weights_csv(text, build_scheme(spec.scheme, FractionalOrder(alpha), N, N, spec.policy));
            break;
        }
        case RunMode::Trajectory: {
            const auto r = solve_cell(spec, alpha, h);
            write_trajectory_csv(text, r.trajectory, r.exact_u, r.exact_v);
            break;
        }
        }
    } catch (const std::exception& e) {
        err << "fraccal: numeric failure: " << e.what() << '\n';
        return 3;
    }

    if (spec.out) {
        std::ofstream file(*spec.out);
        if (!file) {
            err << "fraccal: cannot write '" << *spec.out << "'\n";
            return 2;
        }
        file << text.str();
    } else {
        out << text.str();
    }
    return 0;
}

} // namespace fraccal
