#include <multiroot/oracle.hpp>

#include <string>
#include <utility>

#include <multiroot/error.hpp>

namespace multiroot
{

namespace
{

// |scale| of the factored form scale * prod g(x - x_j)^(alpha_j) that matches
// the leading coefficients of the given coefficient form.
Real factored_scale(const PolyFamily &coefficients, const RootConfiguration &claimed)
{
    if (const auto *t = std::get_if<TrigPoly>(&coefficients)) {
        const long n = static_cast<long>(t->degree());
        const Real &a = t->cos_coeffs().back();
        const Real &b = t->sin_coeffs().back();
        return ldexp(sqrt(a * a + b * b), 2 * n - 1);
    }
    if (const auto *e = std::get_if<ExpPoly>(&coefficients)) {
        const long n = static_cast<long>(e->degree());
        Real shift;
        for (std::size_t j = 0; j < claimed.size(); ++j) {
            shift += Real(claimed.multiplicities()[j]) * claimed.roots()[j];
        }
        return ldexp(abs(e->ch_coeffs().back() + e->sh_coeffs().back()) * exp(shift / Real(2)), 2 * n - 1);
    }
    return Real(1);
}

// |f^(a)(x_i)| for f = scale * prod g(x - x_j)^(alpha_j) built from the claim.
Real expected_leading_derivative(const PolyFamily &coefficients, const RootConfiguration &claimed, std::size_t i)
{
    const Family family = family_of(coefficients);
    const auto &roots = claimed.roots();
    const int alpha = claimed.multiplicities()[i];
    Real out = factored_scale(coefficients, claimed);
    for (int k = 2; k <= alpha; ++k) {
        out *= Real(k);
    }
    if (family != Family::algebraic) {
        out = ldexp(out, -alpha);
    }
    for (std::size_t j = 0; j < claimed.size(); ++j) {
        if (j == i) {
            continue;
        }
        const Real t = roots[i] - roots[j];
        const Real g = family == Family::algebraic      ? t
                       : family == Family::trigonometric ? sin(t / Real(2))
                                                         : sinh(t / Real(2));
        out *= pow(abs(g), static_cast<long>(claimed.multiplicities()[j]));
    }
    return out;
}

} // namespace

NewtonTrace newton_multiplicity_solve(const PolyFamily &poly, int multiplicity, const Real &initial,
                                      const SolveSettings &settings)
{
    PrecisionScope scope(settings.precision_bits);
    if (multiplicity < 1) {
        throw Error(ErrorKind::invalid_input, "multiplicity must be at least 1");
    }
    const Real tolerance = settings.tolerance();
    const Real alpha(multiplicity);
    NewtonTrace trace;
    Real x = initial;
    trace.iterates.push_back(x);
    for (int k = 0; k < settings.max_iterations; ++k) {
        const Evaluation ev = evaluate(poly, x);
        if (abs(ev.value) <= ev.error_bound) {
            trace.converged = true;
            break;
        }
        if (ev.derivative.is_zero()) {
            throw Error(ErrorKind::degenerate_derivative, "f' vanishes at x = " + x.to_string(20));
        }
        const Real delta = alpha * ev.value / ev.derivative;
        if (!delta.is_finite()) {
            throw Error(ErrorKind::degenerate_derivative, "f' underflows at x = " + x.to_string(20));
        }
        x -= delta;
        trace.iterates.push_back(x);
        trace.corrections.push_back(abs(delta));
        if (abs(delta) <= tolerance) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

VerificationOutcome verify_roots(const PolyFamily &poly, const RootConfiguration &claimed, const Real &tolerance)
{
    // Coefficient form once, so every derivative is analytic.
    const PolyFamily coefficients =
        std::holds_alternative<FactoredForm>(poly) ? expand_from_roots(std::get<FactoredForm>(poly)) : poly;

    VerificationOutcome out;
    out.passed = true;
    for (std::size_t i = 0; i < claimed.size(); ++i) {
        RootCheck check;
        check.index = i;
        check.root = claimed.roots()[i];
        check.multiplicity = claimed.multiplicities()[i];
        check.passed = true;
        const auto alpha = static_cast<std::size_t>(check.multiplicity);
        for (std::size_t j = 0; j <= alpha; ++j) {
            const Real value = abs(eval_nth_derivative(coefficients, j, check.root));
            Real magnitude = j < alpha ? nth_derivative_magnitude(coefficients, j, check.root)
                                       : expected_leading_derivative(coefficients, claimed, i);
            if (magnitude.is_zero()) {
                magnitude = Real(1);
            }
            if (j == 0) {
                out.residuals.push_back(value);
            }
            Real ratio = value / magnitude;
            // Derivatives below the multiplicity must vanish, the next one must not.
            const bool ok = j < alpha ? ratio <= tolerance : ratio > tolerance;
            if (!ok && !check.failed_order) {
                check.failed_order = j;
                check.passed = false;
            }
            check.ratios.push_back(std::move(ratio));
        }
        out.derivative_checks.push_back(check.ratios);
        out.passed = out.passed && check.passed;
        out.details.push_back(std::move(check));
    }
    return out;
}

std::vector<Real> classical_ehrlich_step(const PolyFamily &poly, std::span<const Real> approximations,
                                         SweepMode mode)
{
    if (family_of(poly) != Family::algebraic) {
        throw Error(ErrorKind::invalid_input, "classical Ehrlich step is defined for algebraic polynomials");
    }
    const Real threshold = collision_threshold();
    std::vector<Real> out(approximations.begin(), approximations.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Real &x = approximations[i];
        const Real newton = eval(poly, x) / eval_derivative(poly, x);
        Real coupling;
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (j == i) {
                continue;
            }
            const Real &other = mode == SweepMode::sequential && j < i ? out[j] : approximations[j];
            const Real gap = x - other;
            if (abs(gap) < threshold) {
                throw CollisionError(i, j, "approximations " + std::to_string(i) + " and " + std::to_string(j)
                                               + " collide");
            }
            coupling += Real(1) / gap;
        }
        out[i] = x - newton / (Real(1) - newton * coupling);
    }
    return out;
}

} // namespace multiroot
