#include <fstream>
#include <sstream>

#include <multiroot/cli/runner.hpp>
#include <multiroot/error.hpp>

#include "document.hpp"

namespace multiroot::cli
{

using detail::Document;
using detail::format_real;
using detail::json;
using detail::real_array;

SolveOutcome solve_problem(const Problem &problem, const std::optional<TheoremParams> &theorem,
                           const std::optional<Real> &verify_tolerance)
{
    PrecisionScope scope(problem.settings.precision_bits);
    SolveOutcome outcome;
    try {
        outcome.report = solve(problem.poly, problem.multiplicities, problem.initial, problem.settings);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::invalid_input || e.kind() == ErrorKind::invalid_configuration) {
            throw InputError(problem.label.empty() ? "problem" : problem.label, 1, e.what());
        }
        throw;
    }
    if (theorem) {
        outcome.theorem_params = theorem;
        outcome.theorem = check_theorem(*theorem);
    }
    if (verify_tolerance) {
        outcome.verify_tolerance = verify_tolerance;
        try {
            const RootConfiguration claimed(outcome.report.final, problem.multiplicities);
            outcome.verification = verify_roots(problem.poly, claimed, *verify_tolerance);
        } catch (const Error &e) {
            outcome.verification_error = e.what();
        }
    }
    return outcome;
}

int exit_code(const SolveOutcome &outcome)
{
    switch (outcome.report.termination) {
    case Termination::converged:
        break;
    case Termination::collision:
    case Termination::nonfinite:
        return exit_numeric;
    case Termination::max_iterations:
    case Termination::diverged:
        return exit_nonconvergence;
    }
    if (outcome.verify_tolerance && !(outcome.verification && outcome.verification->passed)) {
        return exit_nonconvergence;
    }
    return exit_success;
}

namespace
{

json theorem_json(const TheoremParams &params, const TheoremVerdict &verdict, const SolveReport &report, long bits)
{
    json out;
    out["theorem"] = verdict.theorem;
    out["passed"] = verdict.passed;
    out["c"] = format_real(params.c, bits);
    out["q"] = format_real(params.q, bits);
    if (params.kappa) {
        out["kappa"] = format_real(*params.kappa, bits);
    }
    out["d"] = format_real(params.d, bits);
    if (verdict.auxiliary) {
        out["auxiliary"] = format_real(*verdict.auxiliary, bits);
    }
    json clauses = json::array();
    for (const auto &c : verdict.clauses) {
        json j;
        j["name"] = c.name;
        if (c.root) {
            j["root"] = *c.root;
        }
        j["lhs"] = format_real(c.lhs, bits);
        j["rhs"] = format_real(c.rhs, bits);
        j["passed"] = c.passed;
        clauses.push_back(j);
    }
    out["clauses"] = clauses;
    // The guaranteed error bound c q^(3^k) against the observed errors.
    json bound = json::array();
    for (const auto &r : report.trace) {
        if (r.errors.empty()) {
            break;
        }
        Real worst;
        for (const auto &e : r.errors) {
            worst = max(worst, e);
        }
        const Real b = theorem_bound(params.c, params.q, static_cast<int>(r.k));
        bound.push_back({{"k", r.k},
                         {"max_error", format_real(worst, bits)},
                         {"bound", format_real(b, bits)},
                         {"holds", worst <= b}});
        if (r.k >= 3) {
            break;
        }
    }
    out["bound"] = bound;
    return out;
}

} // namespace

json detail::verification_json(const SolveOutcome &outcome, long bits)
{
    json out;
    out["tolerance"] = format_real(*outcome.verify_tolerance, bits);
    if (!outcome.verification) {
        out["passed"] = false;
        out["error"] = outcome.verification_error;
        return out;
    }
    out["passed"] = outcome.verification->passed;
    json roots = json::array();
    for (const auto &d : outcome.verification->details) {
        json j;
        j["index"] = d.index;
        j["root"] = format_real(d.root, bits);
        j["multiplicity"] = d.multiplicity;
        j["ratios"] = real_array(d.ratios, bits);
        j["passed"] = d.passed;
        if (d.failed_order) {
            j["failed_order"] = *d.failed_order;
        }
        roots.push_back(j);
    }
    out["roots"] = roots;
    return out;
}

std::string render_report(const Problem &problem, const SolveOutcome &outcome)
{
    const long bits = problem.settings.precision_bits;
    PrecisionScope scope(bits);
    const SolveReport &report = outcome.report;
    json out;
    out["label"] = problem.label;
    out["family"] = to_string(problem.family);
    out["precision_bits"] = bits;
    out["significant_digits"] = decimal_digits_for(bits);
    out["termination"] = to_string(report.termination);
    out["message"] = report.message;
    out["iterations_used"] = report.iterations_used;
    out["multiplicities"] = problem.multiplicities;
    out["final"] = real_array(report.final, bits);
    if (!report.trace.empty()) {
        out["residuals"] = real_array(report.trace.back().residuals, bits);
    }
    if (report.estimated_order) {
        const auto &o = *report.estimated_order;
        out["estimated_order"] = {{"order", format_real(o.order, bits)}, {"first", o.first}, {"last", o.last}};
    } else {
        out["estimated_order"] = nullptr;
    }
    json trace = json::array();
    for (const auto &r : report.trace) {
        json j;
        j["k"] = r.k;
        j["approximations"] = real_array(r.approximations, bits);
        j["corrections"] = real_array(r.corrections, bits);
        if (!r.errors.empty()) {
            j["errors"] = real_array(r.errors, bits);
        }
        j["settled"] = r.settled;
        trace.push_back(j);
    }
    out["trace"] = trace;
    if (outcome.theorem && outcome.theorem_params) {
        out["theorem"] = theorem_json(*outcome.theorem_params, *outcome.theorem, report, bits);
    }
    if (outcome.verify_tolerance) {
        out["verification"] = detail::verification_json(outcome, bits);
    }
    return out.dump(2) + "\n";
}

ReportDocument parse_report(std::string_view text, const std::string &source)
{
    const Document doc(text, source);
    const json &root = doc.root();
    ReportDocument out;
    out.precision_bits = doc.integer(root, "precision_bits");
    if (out.precision_bits < 53) {
        doc.fail("precision_bits", "precision_bits must be at least 53");
    }
    PrecisionScope scope(out.precision_bits);
    if (doc.find(root, "label") != nullptr) {
        out.label = doc.string(root, "label");
    }
    try {
        out.family = family_from_string(doc.string(root, "family"));
        out.termination = termination_from_string(doc.string(root, "termination"));
    } catch (const Error &e) {
        doc.fail("termination", e.what());
    }
    if (doc.find(root, "message") != nullptr) {
        out.message = doc.string(root, "message");
    }
    out.iterations_used = static_cast<std::size_t>(doc.integer(root, "iterations_used"));
    out.multiplicities = doc.integers(doc.require(root, "multiplicities"), "multiplicities");
    out.final = doc.reals(doc.require(root, "final"), "final");
    if (out.final.size() != out.multiplicities.size()) {
        doc.fail("final", std::to_string(out.final.size()) + " final approximations for "
                              + std::to_string(out.multiplicities.size()) + " multiplicities");
    }
    const json &trace = doc.require(root, "trace");
    if (!trace.is_array()) {
        doc.fail("trace", "'trace' must be an array");
    }
    for (const auto &r : trace) {
        if (!r.is_object()) {
            doc.fail("trace", "trace records must be objects");
        }
        TraceRecord rec;
        rec.k = static_cast<std::size_t>(doc.integer(r, "k"));
        rec.approximations = doc.reals(doc.require(r, "approximations"), "approximations");
        rec.corrections = doc.reals(doc.require(r, "corrections"), "corrections");
        if (const json *e = doc.find(r, "errors")) {
            rec.errors = doc.reals(*e, "errors");
        }
        if (const json *s = doc.find(r, "settled")) {
            rec.settled = doc.booleans(*s, "settled");
        }
        const std::size_t m = out.multiplicities.size();
        if (rec.approximations.size() != m || rec.corrections.size() != m
            || (!rec.errors.empty() && rec.errors.size() != m) || (!rec.settled.empty() && rec.settled.size() != m)) {
            doc.fail("trace", "trace record " + std::to_string(rec.k) + " does not hold one entry per root");
        }
        out.trace.push_back(std::move(rec));
    }
    return out;
}

ReportDocument load_report(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(path, 0, "cannot open report file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_report(text.str(), path);
}

Real default_verify_tolerance(long precision_bits)
{
    PrecisionScope scope(precision_bits);
    return pow2(-(precision_bits / 5));
}

} // namespace multiroot::cli
