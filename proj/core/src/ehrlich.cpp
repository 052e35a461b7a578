#include <multiroot/ehrlich.hpp>

#include <algorithm>
#include <string>
#include <utility>

#include <multiroot/error.hpp>

namespace multiroot
{

namespace
{

std::size_t expected_multiplicity_sum(const PolyFamily &poly)
{
    const auto n = degree(poly);
    return family_of(poly) == Family::algebraic ? n : 2 * n;
}

void validate_problem(const PolyFamily &poly, std::span<const int> multiplicities, std::span<const Real> initial)
{
    if (initial.empty()) {
        throw Error(ErrorKind::invalid_input, "no initial approximations");
    }
    if (initial.size() != multiplicities.size()) {
        throw Error(ErrorKind::invalid_input, std::to_string(initial.size()) + " initial approximations for "
                                                  + std::to_string(multiplicities.size()) + " multiplicities");
    }
    std::size_t sum = 0;
    for (int a : multiplicities) {
        if (a < 1) {
            throw Error(ErrorKind::invalid_input, "multiplicities must be at least 1");
        }
        sum += static_cast<std::size_t>(a);
    }
    if (sum != expected_multiplicity_sum(poly)) {
        throw Error(ErrorKind::invalid_input,
                    "multiplicities sum to " + std::to_string(sum) + " but the " + to_string(family_of(poly))
                        + " polynomial of degree " + std::to_string(degree(poly)) + " needs "
                        + std::to_string(expected_multiplicity_sum(poly)));
    }
    const Real threshold = collision_threshold();
    for (std::size_t i = 0; i < initial.size(); ++i) {
        if (!initial[i].is_finite()) {
            throw Error(ErrorKind::invalid_input, "initial approximation " + std::to_string(i) + " is not finite");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (abs(initial[i] - initial[j]) < threshold) {
                throw Error(ErrorKind::invalid_input, "initial approximations " + std::to_string(j) + " and "
                                                          + std::to_string(i) + " are not distinct");
            }
        }
    }
}

TraceRecord make_record(const PolyFamily &poly, std::size_t k, std::vector<Real> approximations,
                        std::vector<Real> corrections, const SolveSettings &settings)
{
    TraceRecord r;
    r.k = k;
    r.residuals.reserve(approximations.size());
    for (const auto &x : approximations) {
        const Evaluation ev = evaluate(poly, x);
        r.settled.push_back(abs(ev.value) <= ev.error_bound);
        r.residuals.push_back(ev.value);
    }
    if (settings.truth && settings.truth->size() == approximations.size()) {
        for (std::size_t i = 0; i < approximations.size(); ++i) {
            r.errors.push_back(abs(approximations[i] - (*settings.truth)[i]));
        }
    }
    r.approximations = std::move(approximations);
    r.corrections = std::move(corrections);
    return r;
}

// Ascending coefficients of prod_{j != skip} (x - knots[j]).
std::vector<Real> knot_product(std::span<const Real> knots, std::size_t skip)
{
    std::vector<Real> c{Real(1)};
    for (std::size_t j = 0; j < knots.size(); ++j) {
        if (j == skip) {
            continue;
        }
        std::vector<Real> next(c.size() + 1);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= knots[j] * c[k];
        }
        c = std::move(next);
    }
    return c;
}

std::vector<Real> derive(const std::vector<Real> &c)
{
    std::vector<Real> d(c.size() > 1 ? c.size() - 1 : 1);
    for (std::size_t k = 1; k < c.size(); ++k) {
        d[k - 1] = c[k] * Real(static_cast<long>(k));
    }
    return d;
}

Real horner(const std::vector<Real> &c, const Real &x)
{
    Real r;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * x + *it;
    }
    return r;
}

} // namespace

const char *to_string(SweepMode mode) noexcept
{
    return mode == SweepMode::simultaneous ? "simultaneous" : "sequential";
}

SweepMode sweep_mode_from_string(std::string_view name)
{
    if (name == "simultaneous") {
        return SweepMode::simultaneous;
    }
    if (name == "sequential") {
        return SweepMode::sequential;
    }
    throw Error(ErrorKind::invalid_input, "unknown sweep mode '" + std::string(name) + "'");
}

const char *to_string(Termination t) noexcept
{
    switch (t) {
    case Termination::converged:
        return "converged";
    case Termination::max_iterations:
        return "max_iterations";
    case Termination::collision:
        return "collision";
    case Termination::diverged:
        return "diverged";
    case Termination::nonfinite:
        return "nonfinite";
    }
    return "unknown";
}

Termination termination_from_string(std::string_view name)
{
    for (auto t : {Termination::converged, Termination::max_iterations, Termination::collision,
                   Termination::diverged, Termination::nonfinite}) {
        if (name == to_string(t)) {
            return t;
        }
    }
    throw Error(ErrorKind::invalid_input, "unknown termination '" + std::string(name) + "'");
}

Real SolveSettings::tolerance() const
{
    if (correction_tolerance) {
        return *correction_tolerance;
    }
    return pow2(-(precision_bits - 8));
}

IterationState initial_state(const PolyFamily &poly, std::vector<Real> initial, const SolveSettings &settings)
{
    PrecisionScope scope(settings.precision_bits);
    IterationState s;
    s.corrections.assign(initial.size(), Real(0));
    s.trace.push_back(make_record(poly, 0, initial, s.corrections, settings));
    s.approximations = std::move(initial);
    return s;
}

IterationState step(const PolyFamily &poly, std::span<const int> multiplicities, const IterationState &state,
                    const SolveSettings &settings)
{
    PrecisionScope scope(settings.precision_bits);
    const Family family = family_of(poly);
    const std::size_t m = state.approximations.size();
    if (multiplicities.size() != m) {
        throw Error(ErrorKind::invalid_input, "state and multiplicities differ in length");
    }
    const Real degenerate = pow2(-(settings.precision_bits - 4));

    const std::vector<Real> &incoming = state.approximations;
    std::vector<Real> next = incoming;
    std::vector<Real> corrections(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Real &x = incoming[i];
        const Evaluation ev = evaluate(poly, x);
        if (abs(ev.value) <= ev.error_bound) {
            // Numerically a root: the residual carries no usable sign or size.
            continue;
        }
        const std::span<const Real> coupling = settings.sweep == SweepMode::simultaneous ? incoming : next;
        const Real q_ratio = log_derivative_q(family, coupling, multiplicities, i, x);
        const Real denominator = ev.derivative - ev.value * q_ratio;
        if (denominator.is_zero() || abs(denominator) < degenerate * abs(ev.derivative)) {
            throw DegenerateDenominatorError(i, "degenerate iteration denominator for root " + std::to_string(i)
                                                    + " at x = " + x.to_string(20));
        }
        const Real delta = Real(multiplicities[i]) * ev.value / denominator;
        Real updated = x - delta;
        if (!updated.is_finite()) {
            throw Error(ErrorKind::nonfinite, "non-finite update for root " + std::to_string(i));
        }
        corrections[i] = abs(updated - x);
        next[i] = std::move(updated);
    }

    IterationState out;
    out.k = state.k + 1;
    out.trace = state.trace;
    out.trace.push_back(make_record(poly, out.k, next, corrections, settings));
    out.approximations = std::move(next);
    out.corrections = std::move(corrections);
    return out;
}

std::vector<Real> error_sequence(std::span<const TraceRecord> trace)
{
    std::vector<Real> seq;
    if (trace.empty()) {
        return seq;
    }
    const bool known = !trace.front().errors.empty();
    for (const auto &r : trace) {
        if (!known && r.k == 0) {
            continue;
        }
        const auto &values = known ? r.errors : r.corrections;
        Real worst;
        for (const auto &v : values) {
            worst = max(worst, v);
        }
        seq.push_back(std::move(worst));
    }
    return seq;
}

OrderEstimate estimate_trace_order(std::span<const TraceRecord> trace, const Real &floor)
{
    auto errors = error_sequence(trace);
    const bool known = !trace.empty() && !trace.front().errors.empty();
    // Entry e pairs with record k = e (errors) or k = e + 1 (corrections); it is
    // usable only if every approximation of record k - 1 was still iterating.
    std::size_t usable = errors.size();
    for (std::size_t e = 0; e < errors.size(); ++e) {
        const std::size_t k = known ? e : e + 1;
        if (k == 0) {
            continue;
        }
        const auto &prev = trace[k - 1].settled;
        if (std::find(prev.begin(), prev.end(), true) != prev.end()) {
            usable = e;
            break;
        }
    }
    errors.resize(usable);
    return estimate_order(errors, floor);
}

SolveReport solve(const PolyFamily &poly, std::span<const int> multiplicities, std::vector<Real> initial,
                  const SolveSettings &settings)
{
    PrecisionScope scope(settings.precision_bits);
    if (settings.max_iterations < 1) {
        throw Error(ErrorKind::invalid_input, "max_iterations must be at least 1");
    }
    const Real tolerance = settings.tolerance();
    if (!(tolerance > Real(0))) {
        throw Error(ErrorKind::invalid_input, "correction tolerance must be positive");
    }
    validate_problem(poly, multiplicities, initial);

    IterationState state = initial_state(poly, std::move(initial), settings);
    SolveReport report;
    report.termination = Termination::max_iterations;
    report.message = "iteration limit reached";
    try {
        while (state.k < static_cast<std::size_t>(settings.max_iterations)) {
            state = step(poly, multiplicities, state, settings);
            bool done = true;
            for (const auto &c : state.corrections) {
                done = done && c <= tolerance;
            }
            if (done) {
                report.termination = Termination::converged;
                report.message.clear();
                break;
            }
        }
    } catch (const CollisionError &e) {
        report.termination = Termination::collision;
        report.message = e.what();
    } catch (const DegenerateDenominatorError &e) {
        report.termination = Termination::diverged;
        report.message = e.what();
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::nonfinite && e.kind() != ErrorKind::overflow) {
            throw;
        }
        report.termination = Termination::nonfinite;
        report.message = e.what();
    }

    report.final = state.approximations;
    report.iterations_used = state.k;
    report.trace = std::move(state.trace);

    Real magnitude(1);
    for (const auto &x : report.final) {
        magnitude = max(magnitude, abs(x));
    }
    try {
        report.estimated_order = estimate_trace_order(report.trace, unit_roundoff() * magnitude);
    } catch (const Error &) {
        report.estimated_order.reset();
    }
    return report;
}

Real lemma1_residual(std::span<const Real> simple_roots, std::size_t i)
{
    if (i >= simple_roots.size()) {
        throw Error(ErrorKind::invalid_input, "knot index out of range");
    }
    for (std::size_t a = 0; a < simple_roots.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            if (simple_roots[a] == simple_roots[b]) {
                throw Error(ErrorKind::invalid_input, "repeated knot " + std::to_string(a));
            }
        }
    }
    const Real &x = simple_roots[i];
    const auto q = knot_product(simple_roots, simple_roots.size());
    const auto dq = derive(q);
    const auto ddq = derive(dq);
    const auto qi = knot_product(simple_roots, i);
    const auto dqi = derive(qi);
    return horner(ddq, x) / horner(dq, x) - Real(2) * horner(dqi, x) / horner(qi, x);
}

} // namespace multiroot
