#include <fstream>
#include <ostream>

#include <multiroot/cli/runner.hpp>
#include <multiroot/error.hpp>

#include "document.hpp"

namespace multiroot::cli
{

namespace
{

// Writes `text` to `path`, or to `out` when the path is empty.
bool emit(const std::string &text, const std::string &path, std::ostream &out, std::ostream &err)
{
    if (path.empty()) {
        out << text;
        return true;
    }
    std::ofstream file(path);
    file << text;
    if (!file) {
        err << "error: cannot write " << path << "\n";
        return false;
    }
    return true;
}

Real flag_real(const std::string &value, const char *flag)
{
    try {
        return Real(std::string_view(value));
    } catch (const Error &) {
        throw InputError(flag, 0, "'" + value + "' is not a number");
    }
}

TheoremParams theorem_params(const Problem &problem, const SolveOptions &options)
{
    auto pick = [&](const std::optional<std::string> &flag, const std::optional<Real> &file,
                    const char *name) -> std::optional<Real> {
        if (flag) {
            return flag_real(*flag, name);
        }
        return file;
    };
    const auto c = pick(options.c, problem.theorem.c, "--c");
    const auto q = pick(options.q, problem.theorem.q, "--q");
    const auto kappa = pick(options.kappa, problem.theorem.kappa, "--kappa");
    if (!c || !q) {
        throw InputError(options.problem_path, 0, "--theorems needs c and q (flags or the 'theorem' object)");
    }
    if (!problem.settings.truth) {
        throw InputError(options.problem_path, 0, "--theorems needs the exact roots ('truth' or the roots representation)");
    }
    try {
        const RootConfiguration exact(*problem.settings.truth, problem.multiplicities);
        return TheoremParams::make(problem.family, exact, *c, *q, kappa);
    } catch (const Error &e) {
        throw InputError(options.problem_path, 0, e.what());
    }
}

std::string summary(const std::string &name, const SolveOutcome &outcome)
{
    const SolveReport &r = outcome.report;
    std::string s = name + ": " + to_string(r.termination) + " after " + std::to_string(r.iterations_used)
                    + " iterations";
    if (r.estimated_order) {
        s += ", order " + r.estimated_order->order.to_string(4);
    }
    if (!r.message.empty()) {
        s += " (" + r.message + ")";
    }
    if (outcome.theorem) {
        s += outcome.theorem->passed ? ", theorem hypotheses hold" : ", theorem hypotheses fail";
    }
    if (outcome.verify_tolerance) {
        s += outcome.verification && outcome.verification->passed ? ", verified" : ", verification failed";
    }
    return s + "\n";
}

} // namespace

int run_solve(const SolveOptions &options, std::ostream &out, std::ostream &err)
{
    try {
        Problem problem = load_problem(options.problem_path, options.precision_bits);
        PrecisionScope scope(problem.settings.precision_bits);
        if (options.max_iterations) {
            if (*options.max_iterations < 1) {
                throw InputError("--max-iterations", 0, "must be at least 1");
            }
            problem.settings.max_iterations = *options.max_iterations;
        }
        if (options.tolerance) {
            problem.settings.correction_tolerance = flag_real(*options.tolerance, "--tolerance");
            if (!(*problem.settings.correction_tolerance > Real(0))) {
                throw InputError("--tolerance", 0, "must be positive");
            }
        }
        if (options.sweep) {
            problem.settings.sweep = *options.sweep;
        }
        std::optional<TheoremParams> params;
        if (options.theorems) {
            params = theorem_params(problem, options);
        }
        std::optional<Real> tolerance;
        if (options.verify) {
            tolerance = options.verify_tolerance ? flag_real(*options.verify_tolerance, "--verify-tolerance")
                                                 : default_verify_tolerance(problem.settings.precision_bits);
        }
        const SolveOutcome outcome = solve_problem(problem, params, tolerance);
        if (!emit(render_report(problem, outcome), options.output_path, out, err)) {
            return exit_input;
        }
        err << summary(problem.label.empty() ? options.problem_path : problem.label, outcome);
        return exit_code(outcome);
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}

int run_generate(const GenerateOptions &options, std::ostream &out, std::ostream &err)
{
    try {
        if (options.precision_bits < 53) {
            throw InputError("--precision-bits", 0, "must be at least 53");
        }
        PrecisionScope scope(options.precision_bits);
        RootConfiguration config;
        Real scale(1);
        try {
            config = parse_root_list(options.roots);
            if (options.scale) {
                scale = Real(std::string_view(*options.scale));
            }
        } catch (const Error &e) {
            throw InputError("--roots", 0, e.what());
        }
        std::optional<FactoredForm> form;
        try {
            form.emplace(options.family, config, scale);
        } catch (const Error &e) {
            throw InputError("--roots", 0, std::string("refused: ") + e.what());
        }
        std::vector<Real> initial;
        if (options.initial) {
            try {
                initial = parse_real_list(*options.initial);
            } catch (const Error &e) {
                throw InputError("--initial", 0, e.what());
            }
            if (initial.size() != config.size()) {
                throw InputError("--initial", 0, std::to_string(initial.size()) + " initial approximations for "
                                                     + std::to_string(config.size()) + " roots");
            }
        } else {
            // Truth shifted by a tenth of the root separation.
            const Real shift = config.size() > 1 ? config.min_gap() / Real(10) : Real(1) / Real(10);
            for (const auto &r : config.roots()) {
                initial.push_back(r + shift);
            }
        }
        SolveSettings settings;
        settings.precision_bits = options.precision_bits;
        settings.truth = config.roots();
        const Problem problem{
            .label = options.label,
            .family = options.family,
            .representation = Representation::coefficients,
            .poly = expand_from_roots(*form),
            .multiplicities = config.multiplicities(),
            .initial = std::move(initial),
            .settings = std::move(settings),
            .theorem = {},
        };
        return emit(render_problem(problem), options.output_path, out, err) ? exit_success : exit_input;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}

int run_verify(const VerifyOptions &options, std::ostream &out, std::ostream &err)
{
    try {
        const ReportDocument report = load_report(options.report_path);
        const Problem problem = load_problem(options.problem_path, report.precision_bits);
        PrecisionScope scope(report.precision_bits);
        if (report.multiplicities != problem.multiplicities) {
            throw InputError(options.report_path, 0, "report multiplicities do not match the problem file");
        }
        const Real tolerance = options.tolerance ? flag_real(*options.tolerance, "--tolerance")
                                                 : default_verify_tolerance(report.precision_bits);
        SolveOutcome outcome;
        outcome.report.final = report.final;
        outcome.report.termination = report.termination;
        outcome.verify_tolerance = tolerance;
        try {
            outcome.verification = verify_roots(problem.poly, RootConfiguration(report.final, report.multiplicities),
                                                tolerance);
        } catch (const Error &e) {
            outcome.verification_error = e.what();
        }
        detail::json doc;
        doc["report"] = options.report_path;
        doc["termination"] = to_string(report.termination);
        if (problem.settings.truth) {
            Real worst;
            for (std::size_t i = 0; i < report.final.size(); ++i) {
                worst = max(worst, abs(report.final[i] - (*problem.settings.truth)[i]));
            }
            doc["max_error"] = detail::format_real(worst, report.precision_bits);
        }
        doc["verification"] = detail::verification_json(outcome, report.precision_bits);
        out << doc.dump(2) << "\n";
        const bool passed = outcome.verification && outcome.verification->passed;
        err << (report.label.empty() ? options.report_path : report.label)
            << (passed ? ": verified\n" : ": verification failed\n");
        return passed ? exit_success : exit_nonconvergence;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}

int run_order(const OrderOptions &options, std::ostream &out, std::ostream &err)
{
    try {
        const ReportDocument report = load_report(options.report_path);
        PrecisionScope scope(report.precision_bits);
        Real floor;
        if (options.floor) {
            floor = flag_real(*options.floor, "--floor");
        } else {
            Real magnitude(1);
            for (const auto &x : report.final) {
                magnitude = max(magnitude, abs(x));
            }
            floor = unit_roundoff() * magnitude;
        }
        const OrderEstimate est = estimate_trace_order(report.trace, floor);
        detail::json doc;
        doc["order"] = detail::format_real(est.order, report.precision_bits);
        doc["first"] = est.first;
        doc["last"] = est.last;
        doc["per_step_orders"] = detail::real_array(est.per_step_orders, report.precision_bits);
        out << doc.dump(2) << "\n";
        return exit_success;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::insufficient_data ? exit_nonconvergence : exit_numeric;
    }
}

} // namespace multiroot::cli
