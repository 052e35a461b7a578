// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <multiroot/cli/runner.hpp>
#include <multiroot/convergence.hpp>
#include <multiroot/ehrlich.hpp>
#include <multiroot/error.hpp>
#include <multiroot/oracle.hpp>

#include "support/generators.hpp"
#include "support/theorem_oracles.hpp"

using namespace multiroot;

namespace
{

struct Verdict {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string &why)
    {
        if (!ok) {
            passed = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += why;
        }
    }
};

std::string problem_path(const std::string &name)
{
    return std::string(MULTIROOT_PROBLEMS_DIR) + "/" + name + ".json";
}

std::string fmt(const Real &x, std::size_t digits = 3)
{
    return x.to_string(digits);
}

Real max_of(const std::vector<Real> &v)
{
    Real m;
    for (const auto &x : v) {
        m = max(m, x);
    }
    return m;
}

// Solves a bundled problem through the CLI runner at 192 bits and checks that
// some iterate k <= max_k is within 1e-18 of the truth, with runtime < 1 s.
Verdict example_criterion(const std::string &name, std::size_t max_k)
{
    Verdict v;
    const auto report = (std::filesystem::temp_directory_path() / ("multiroot_acceptance_" + name + ".json")).string();
    cli::SolveOptions options;
    options.problem_path = problem_path(name);
    options.output_path = report;
    options.precision_bits = 192;
    std::ostringstream out;
    std::ostringstream err;
    const auto start = std::chrono::steady_clock::now();
    const int code = cli::run_solve(options, out, err);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(code == cli::exit_success, "exit " + std::to_string(code) + ": " + err.str());
    if (code != cli::exit_success) {
        return v;
    }
    const cli::ReportDocument doc = cli::load_report(report);
    PrecisionScope scope(doc.precision_bits);
    std::optional<std::size_t> reached;
    for (const auto &r : doc.trace) {
        if (!r.errors.empty() && max_of(r.errors) <= Real("1e-18")) {
            reached = r.k;
            break;
        }
    }
    v.require(reached && *reached <= max_k, "1e-18 not reached within " + std::to_string(max_k) + " iterations");
    v.require(seconds < 1.0, "runtime " + std::to_string(seconds) + " s");
    std::string errors;
    for (std::size_t k = 0; k <= max_k && k < doc.trace.size(); ++k) {
        errors += (k ? ", " : "") + fmt(max_of(doc.trace[k].errors), 2);
    }
    v.detail = (v.passed ? "" : v.detail + "; ") + "max error by k: " + errors + "; 1e-18 at k = "
               + (reached ? std::to_string(*reached) : std::string("never")) + "; " + std::to_string(seconds).substr(0, 5)
               + " s";
    return v;
}

Verdict criterion4()
{
    Verdict v;
    std::string detail;
    for (const char *name : {"example1", "example2", "example3"}) {
        const cli::Problem p = cli::load_problem(problem_path(name), 256);
        PrecisionScope scope(256);
        const cli::SolveOutcome s = cli::solve_problem(p);
        const auto &truth = *p.settings.truth;
        std::string line = std::string(name) + ": ehrlich ";
        if (s.report.estimated_order) {
            const Real &order = s.report.estimated_order->order;
            line += fmt(order);
            v.require(order >= Real("2.6") && order <= Real("3.4"), std::string(name) + " order " + fmt(order));
        } else {
            line += "none";
            v.require(false, std::string(name) + " has no order estimate");
        }
        line += ", newton";
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const auto t = newton_multiplicity_solve(p.poly, p.multiplicities[i], p.initial[i], p.settings);
            std::vector<Real> errors;
            for (const auto &x : t.iterates) {
                errors.push_back(abs(x - truth[i]));
            }
            try {
                const auto est = estimate_order(errors, unit_roundoff() * max(Real(1), abs(truth[i])));
                line += " " + fmt(est.order);
                v.require(est.order >= Real("1.7") && est.order <= Real("2.3"),
                          std::string(name) + " newton root " + std::to_string(i) + " order " + fmt(est.order));
            } catch (const Error &e) {
                line += " none";
                v.require(false, std::string(name) + " newton root " + std::to_string(i) + ": " + e.what());
            }
        }
        detail += (detail.empty() ? "" : "; ") + line;
    }
    v.detail = v.passed ? detail : v.detail + " | " + detail;
    return v;
}

// Separated points drawn from uniform doubles, so products of differences
// are not exact at 53 bits.
std::vector<Real> off_grid_points(std::mt19937_64 &rng, int count)
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Real> pts;
    while (static_cast<int>(pts.size()) < count) {
        const Real candidate(u(rng));
        bool ok = true;
        for (const auto &p : pts) {
            ok = ok && abs(p - candidate) >= Real("0.3");
        }
        if (ok) {
            pts.push_back(candidate);
        }
    }
    return pts;
}

Verdict criterion5()
{
    Verdict v;
    PrecisionScope scope(53);
    std::mt19937_64 rng(5001);
    std::uniform_int_distribution<int> count(2, 5);
    Real worst_identity;
    for (int instance = 0; instance < 100; ++instance) {
        const auto knots = off_grid_points(rng, count(rng));
        for (std::size_t i = 0; i < knots.size(); ++i) {
            // Relative to the absolute-term size of Q''/Q' = 2 sum 1/(x_i - x_j).
            Real scale;
            for (std::size_t j = 0; j < knots.size(); ++j) {
                if (j != i) {
                    scale += Real(2) / abs(knots[i] - knots[j]);
                }
            }
            worst_identity = max(worst_identity, abs(lemma1_residual(knots, i)) / scale);
        }
    }
    v.require(worst_identity <= Real("1e-10"), "reduction identity residual " + fmt(worst_identity));

    SolveSettings settings;
    settings.precision_bits = 53;
    Real worst_ulps;
    for (int instance = 0; instance < 100; ++instance) {
        const int m = count(rng);
        const auto roots = off_grid_points(rng, m);
        const PolyFamily f = expand_from_roots(
            FactoredForm(Family::algebraic, RootConfiguration(roots, std::vector<int>(static_cast<std::size_t>(m), 1))));
        const auto x = testing::perturbed(rng, roots, Real("0.1"));
        const std::vector<int> ones(static_cast<std::size_t>(m), 1);
        for (SweepMode mode : {SweepMode::simultaneous, SweepMode::sequential}) {
            settings.sweep = mode;
            const auto ours = step(f, ones, initial_state(f, x, settings), settings).approximations;
            const auto reference = classical_ehrlich_step(f, x, mode);
            for (std::size_t i = 0; i < x.size(); ++i) {
                worst_ulps = max(worst_ulps, abs(ours[i] - reference[i]) / ulp(max(abs(x[i]), abs(reference[i]))));
            }
        }
    }
    v.require(worst_ulps <= Real(4), "step differs by " + fmt(worst_ulps) + " ulp");
    v.detail = (v.passed ? "" : v.detail + "; ") + "max relative identity residual " + fmt(worst_identity)
               + ", max step difference " + fmt(worst_ulps) + " ulp over 100 states x 2 sweeps";
    return v;
}

Verdict criterion6()
{
    Verdict v;
    PrecisionScope scope(128);
    const Real q("0.5");
    struct Case {
        const char *name;
        Family family;
        RootConfiguration exact;
        Real c;
        std::optional<Real> kappa;
    };
    std::vector<Case> cases;
    cases.push_back({"algebraic", Family::algebraic, RootConfiguration({Real(2), Real(3), Real(5)}, {2, 3, 1}),
                     testing::bisect(testing::example1_feasible, Real("1e-9"), Real("0.5")) * Real("0.999"),
                     std::nullopt});
    const auto grid = testing::example2_grid_optimum();
    if (!grid) {
        v.require(false, "no feasible grid point for the trigonometric case");
        return v;
    }
    cases.push_back({"trigonometric", Family::trigonometric,
                     RootConfiguration({Real(1), Real(2), Real("2.5")}, {3, 2, 1}), grid->first, grid->second});
    cases.push_back({"exponential", Family::exponential, RootConfiguration({Real(-2), Real(3)}, {2, 2}),
                     testing::bisect(testing::example3_feasible, Real("1e-9"), Real("2.5")) * Real("0.999"),
                     std::nullopt});

    std::mt19937_64 rng(6001);
    std::string detail;
    for (const auto &tc : cases) {
        const auto params = TheoremParams::make(tc.family, tc.exact, tc.c, q, tc.kappa);
        const auto verdict = check_theorem(params);
        v.require(verdict.passed, std::string(tc.name) + " feasible point fails its check");
        const PolyFamily f = expand_from_roots(FactoredForm(tc.family, tc.exact));
        SolveSettings s;
        s.precision_bits = 128;
        int violations = 0;
        Real tightest;
        for (int sample = 0; sample < 20; ++sample) {
            auto state = initial_state(f, testing::perturbed(rng, tc.exact.roots(), tc.c * q), s);
            for (int k = 1; k <= 3; ++k) {
                try {
                    state = step(f, tc.exact.multiplicities(), state, s);
                } catch (const Error &e) {
                    ++violations;
                    break;
                }
                const Real bound = theorem_bound(tc.c, q, k);
                for (std::size_t i = 0; i < tc.exact.size(); ++i) {
                    const Real ratio = abs(state.approximations[i] - tc.exact.roots()[i]) / bound;
                    tightest = max(tightest, ratio);
                    if (ratio > Real(1)) {
                        ++violations;
                    }
                }
            }
        }
        v.require(violations == 0, std::string(tc.name) + " has " + std::to_string(violations) + " bound violations");
        detail += (detail.empty() ? "" : "; ") + std::string(tc.name) + " c = " + fmt(tc.c, 4)
                  + (tc.kappa ? " kappa = " + fmt(*tc.kappa, 2) : "") + ", max error/bound " + fmt(tightest, 2);
    }
    v.detail = v.passed ? detail : v.detail + " | " + detail;
    return v;
}

Verdict criterion7()
{
    Verdict v;
    const long bits = 128;
    PrecisionScope scope(bits);
    const Real tolerance = cli::default_verify_tolerance(bits);
    std::mt19937_64 rng(7001);
    std::string detail;
    for (Family family : {Family::algebraic, Family::trigonometric, Family::exponential}) {
        testing::ConfigShape shape;
        shape.lo = family == Family::trigonometric ? 0.5 : -2.0;
        shape.hi = family == Family::trigonometric ? 5.5 : 2.0;
        int failures = 0;
        std::size_t most_iterations = 0;
        for (int instance = 0; instance < 50; ++instance) {
            const auto config = testing::random_configuration(rng, family, shape);
            const PolyFamily f = expand_from_roots(FactoredForm(family, config));
            const Real d = config.size() > 1 ? config.min_gap() : Real(1);
            SolveSettings s;
            s.precision_bits = bits;
            const auto report = solve(f, config.multiplicities(),
                                      testing::perturbed(rng, config.roots(), Real("0.1") * d), s);
            most_iterations = std::max(most_iterations, report.iterations_used);
            bool ok = report.termination == Termination::converged;
            if (ok) {
                try {
                    ok = verify_roots(f, RootConfiguration(report.final, config.multiplicities()), tolerance).passed;
                } catch (const Error &) {
                    ok = false;
                }
            }
            if (!ok) {
                ++failures;
                std::string where;
                for (std::size_t i = 0; i < config.size(); ++i) {
                    where += (i ? "," : "") + fmt(config.roots()[i], 6) + ":" + std::to_string(config.multiplicities()[i]);
                }
                v.require(false, std::string(to_string(family)) + " {" + where + "} " + to_string(report.termination)
                                     + " " + report.message);
            }
        }
        detail += (detail.empty() ? "" : "; ") + std::string(to_string(family)) + " "
                  + std::to_string(50 - failures) + "/50 verified (at most "
                  + std::to_string(most_iterations) + " iterations)";
    }
    v.detail = (v.passed ? "" : v.detail + " | ") + detail + ", tolerance 2^-25";
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria{
        {"1 example 1 reproduction", [] { return example_criterion("example1", 4); }},
        {"2 example 2 reproduction", [] { return example_criterion("example2", 5); }},
        {"3 example 3 reproduction", [] { return example_criterion("example3", 4); }},
        {"4 cubic order vs newton baseline", criterion4},
        {"5 simple-root reduction", criterion5},
        {"6 theorem predicate consistency", criterion6},
        {"7 round-trip oracle equivalence", criterion7},
    };
    int failed = 0;
    for (const auto &[name, run] : criteria) {
        Verdict v;
        try {
            v = run();
        } catch (const std::exception &e) {
            v.passed = false;
            v.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %s: %s\n", v.passed ? "PASS" : "FAIL", name, v.detail.c_str());
        failed += v.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
