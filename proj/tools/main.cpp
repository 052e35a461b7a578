#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <multiroot/cli/runner.hpp>
#include <multiroot/ehrlich.hpp>
#include <multiroot/poly.hpp>

using namespace multiroot;

int main(int argc, char **argv)
{
    CLI::App app{"Simultaneous refinement of real roots with known multiplicities"};
    app.require_subcommand(1);

    cli::SolveOptions solve;
    auto *solve_cmd = app.add_subcommand("solve", "Solve a problem file and write a report");
    solve_cmd->add_option("problem", solve.problem_path, "Problem file")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("-o,--output", solve.output_path, "Report path (default: stdout)");
    solve_cmd->add_option("--precision-bits", solve.precision_bits, "Working precision in bits")
        ->check(CLI::Range(53L, 1L << 24));
    solve_cmd->add_option("--max-iterations", solve.max_iterations, "Iteration limit")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--tolerance", solve.tolerance, "Stop when every correction is at most this");
    const std::map<std::string, SweepMode> sweeps{{"simultaneous", SweepMode::simultaneous},
                                                  {"sequential", SweepMode::sequential}};
    solve_cmd->add_option("--sweep", solve.sweep, "simultaneous or sequential")
        ->transform(CLI::CheckedTransformer(sweeps));
    solve_cmd->add_flag("--theorems", solve.theorems, "Check the family's convergence hypotheses");
    solve_cmd->add_option("--c", solve.c, "Theorem constant c (overrides the problem file)");
    solve_cmd->add_option("--q", solve.q, "Theorem constant q (overrides the problem file)");
    solve_cmd->add_option("--kappa", solve.kappa, "Theorem constant kappa, trigonometric family");
    solve_cmd->add_flag("--verify", solve.verify, "Verify the final approximations");
    solve_cmd->add_option("--verify-tolerance", solve.verify_tolerance, "Default 2^-(precision_bits/5)");

    cli::GenerateOptions generate;
    auto *generate_cmd = app.add_subcommand("generate", "Write a coefficient-form problem from roots");
    const std::map<std::string, Family> families{{"algebraic", Family::algebraic},
                                                 {"trigonometric", Family::trigonometric},
                                                 {"trig", Family::trigonometric},
                                                 {"exponential", Family::exponential},
                                                 {"exp", Family::exponential}};
    generate_cmd->add_option("--family", generate.family, "algebraic, trigonometric or exponential")
        ->required()
        ->transform(CLI::CheckedTransformer(families));
    generate_cmd->add_option("--roots", generate.roots, "root:multiplicity list, e.g. --roots=-2:2,3:2")
        ->required()
        ->allow_extra_args(false);
    generate_cmd->add_option("--initial", generate.initial, "Comma-separated initial approximations");
    generate_cmd->add_option("--scale", generate.scale, "Factor multiplying the factored form");
    generate_cmd->add_option("--precision-bits", generate.precision_bits, "Working precision in bits")
        ->check(CLI::Range(53L, 1L << 24));
    generate_cmd->add_option("--label", generate.label, "Free-text label");
    generate_cmd->add_option("-o,--output", generate.output_path, "Problem path (default: stdout)");

    cli::VerifyOptions verify;
    auto *verify_cmd = app.add_subcommand("verify", "Check a report's approximations against its problem");
    verify_cmd->add_option("problem", verify.problem_path, "Problem file")->required();
    verify_cmd->add_option("report", verify.report_path, "Report written by solve")->required();
    verify_cmd->add_option("--tolerance", verify.tolerance, "Default 2^-(precision_bits/5)");

    cli::OrderOptions order;
    auto *order_cmd = app.add_subcommand("order", "Re-estimate the convergence order from a report's trace");
    order_cmd->add_option("report", order.report_path, "Report written by solve")->required();
    order_cmd->add_option("--floor", order.floor, "Round-off floor (default: unit roundoff times max |x|)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::exit_input;
    }

    if (*solve_cmd) {
        return cli::run_solve(solve, std::cout, std::cerr);
    }
    if (*generate_cmd) {
        return cli::run_generate(generate, std::cout, std::cerr);
    }
    if (*verify_cmd) {
        return cli::run_verify(verify, std::cout, std::cerr);
    }
    return cli::run_order(order, std::cout, std::cerr);
}
