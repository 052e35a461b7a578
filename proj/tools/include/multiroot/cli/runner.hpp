#ifndef MULTIROOT_CLI_RUNNER_HPP
#define MULTIROOT_CLI_RUNNER_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <multiroot/convergence.hpp>
#include <multiroot/ehrlich.hpp>
#include <multiroot/oracle.hpp>
#include <multiroot/poly.hpp>
#include <multiroot/real.hpp>

namespace multiroot::cli
{

enum ExitCode : int {
    exit_success = 0,
    exit_nonconvergence = 1,
    exit_input = 2,
    exit_numeric = 3,
};

// Malformed or schema-violating input, anchored at a line of its source.
// Line 0 stands for the source as a whole (a flag, an unreadable file).
class InputError : public std::runtime_error
{
public:
    InputError(const std::string &source, std::size_t line, const std::string &message);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class Representation { coefficients, roots };

[[nodiscard]] const char *to_string(Representation r) noexcept;

struct TheoremInput {
    std::optional<Real> c;
    std::optional<Real> q;
    std::optional<Real> kappa;
};

struct Problem {
    std::string label;
    Family family = Family::algebraic;
    Representation representation = Representation::coefficients;
    // A FactoredForm for the roots representation.
    PolyFamily poly;
    std::vector<int> multiplicities;
    std::vector<Real> initial;
    // precision_bits, iteration limit, tolerance, sweep and truth.
    SolveSettings settings;
    TheoremInput theorem;
};

// Parses a problem document. Real values are read at precision_override when
// given, otherwise at the file's precision_bits (default 53).
// Throws InputError.
[[nodiscard]] Problem parse_problem(std::string_view text, const std::string &source,
                                    std::optional<long> precision_override = std::nullopt);
[[nodiscard]] Problem load_problem(const std::string &path, std::optional<long> precision_override = std::nullopt);
[[nodiscard]] std::string render_problem(const Problem &problem);

// Everything cli_solve produces for one problem.
struct SolveOutcome {
    SolveReport report;
    std::optional<TheoremParams> theorem_params;
    std::optional<TheoremVerdict> theorem;
    std::optional<Real> verify_tolerance;
    std::optional<VerificationOutcome> verification;
    // Why verification could not run, e.g. repeated final approximations.
    std::string verification_error;
};

// Runs solve on the problem, then the theorem check (when params are given)
// and verify_roots (when a tolerance is given).
// Throws InputError when the problem does not fit its polynomial.
[[nodiscard]] SolveOutcome solve_problem(const Problem &problem,
                                         const std::optional<TheoremParams> &theorem = std::nullopt,
                                         const std::optional<Real> &verify_tolerance = std::nullopt);

// 0 iff converged and (when run) verification passed; 3 for collision or a
// non-finite value; 1 otherwise.
[[nodiscard]] int exit_code(const SolveOutcome &outcome);

[[nodiscard]] std::string render_report(const Problem &problem, const SolveOutcome &outcome);

// The parts of a persisted report that verify and order read back.
struct ReportDocument {
    std::string label;
    Family family = Family::algebraic;
    long precision_bits = 53;
    Termination termination = Termination::max_iterations;
    std::string message;
    std::size_t iterations_used = 0;
    std::vector<int> multiplicities;
    std::vector<Real> final;
    std::vector<TraceRecord> trace;
};

// Throws InputError on syntax errors and missing fields.
[[nodiscard]] ReportDocument parse_report(std::string_view text, const std::string &source);
[[nodiscard]] ReportDocument load_report(const std::string &path);

// "2:2,3:3,5:1" into roots and multiplicities, read at the working precision.
[[nodiscard]] RootConfiguration parse_root_list(std::string_view spec);
// "0.4,3.5,8" into reals at the working precision.
[[nodiscard]] std::vector<Real> parse_real_list(std::string_view spec);

struct SolveOptions {
    std::string problem_path;
    // Report destination; the output stream when empty.
    std::string output_path;
    std::optional<long> precision_bits;
    std::optional<int> max_iterations;
    std::optional<std::string> tolerance;
    std::optional<SweepMode> sweep;
    bool theorems = false;
    std::optional<std::string> c;
    std::optional<std::string> q;
    std::optional<std::string> kappa;
    bool verify = false;
    std::optional<std::string> verify_tolerance;
};

struct GenerateOptions {
    Family family = Family::algebraic;
    std::string roots;
    std::optional<std::string> initial;
    std::optional<std::string> scale;
    long precision_bits = 53;
    std::string label;
    std::string output_path;
};

struct VerifyOptions {
    std::string problem_path;
    std::string report_path;
    std::optional<std::string> tolerance;
};

struct OrderOptions {
    std::string report_path;
    std::optional<std::string> floor;
};

// Each command writes its document to the output path (or `out`) and
// diagnostics to `err`, and returns an ExitCode.
int run_solve(const SolveOptions &options, std::ostream &out, std::ostream &err);
int run_generate(const GenerateOptions &options, std::ostream &out, std::ostream &err);
int run_verify(const VerifyOptions &options, std::ostream &out, std::ostream &err);
int run_order(const OrderOptions &options, std::ostream &out, std::ostream &err);

// 2^-(precision_bits / 5): a computed root of multiplicity 4 is accurate to
// about 2^-(precision_bits / 4), which the order-3 check sees directly.
[[nodiscard]] Real default_verify_tolerance(long precision_bits);

} // namespace multiroot::cli

#endif
