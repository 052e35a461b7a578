#include <multiroot/convergence.hpp>

#include <string>
#include <utility>

#include <multiroot/error.hpp>

namespace multiroot
{

namespace
{

void add(TheoremVerdict &v, std::string name, Real lhs, Real rhs, std::optional<std::size_t> root = std::nullopt)
{
    const bool ok = lhs < rhs;
    v.clauses.push_back({std::move(name), root, std::move(lhs), std::move(rhs), ok});
}

void finish(TheoremVerdict &v)
{
    v.passed = true;
    for (const auto &c : v.clauses) {
        v.passed = v.passed && c.passed;
    }
}

void add_q_and_c(TheoremVerdict &v, const TheoremParams &p)
{
    add(v, "q > 0", Real(0), p.q);
    add(v, "q < 1", p.q, Real(1));
    add(v, "c > 0", Real(0), p.c);
    add(v, "d - 2c > 0", Real(0), p.d - ldexp(p.c, 1));
}

void require_family(const TheoremParams &p, Family expected)
{
    if (p.family != expected) {
        throw Error(ErrorKind::invalid_input, std::string("theorem for the ") + to_string(expected)
                                                  + " family applied to " + to_string(p.family) + " parameters");
    }
}

} // namespace

TheoremParams TheoremParams::make(Family family, const RootConfiguration &exact, Real c, Real q,
                                  std::optional<Real> kappa)
{
    if (kappa.has_value() != (family == Family::trigonometric)) {
        throw Error(ErrorKind::invalid_input, "kappa must be given exactly for the trigonometric family");
    }
    const int total = exact.total_multiplicity();
    if (family != Family::algebraic && total % 2 != 0) {
        throw Error(ErrorKind::invalid_input, "multiplicity sum must be even (2n) for the "
                                                  + std::string(to_string(family)) + " family");
    }
    TheoremParams p;
    p.family = family;
    p.c = std::move(c);
    p.q = std::move(q);
    p.d = exact.min_gap();
    p.max_gap = exact.max_gap();
    p.kappa = std::move(kappa);
    p.n = family == Family::algebraic ? total : total / 2;
    p.multiplicities = exact.multiplicities();
    return p;
}

std::vector<Clause> TheoremVerdict::failures() const
{
    std::vector<Clause> out;
    for (const auto &c : clauses) {
        if (!c.passed) {
            out.push_back(c);
        }
    }
    return out;
}

TheoremVerdict check_theorem1(const TheoremParams &p)
{
    require_family(p, Family::algebraic);
    TheoremVerdict v;
    v.theorem = 1;
    add_q_and_c(v, p);
    const Real n(p.n);
    const Real c2 = p.c * p.c;
    for (std::size_t i = 0; i < p.multiplicities.size(); ++i) {
        const Real a(p.multiplicities[i]);
        const Real middle = c2 * (n - Real(3) * a) + p.c * (n + (Real(3) * p.d - Real(1)) * a);
        add(v, "0 < c^2(n - 3a_i) + c(n + (3d - 1)a_i)", Real(0), middle, i);
        add(v, "c^2(n - 3a_i) + c(n + (3d - 1)a_i) < d^2 a_i", middle, p.d * p.d * a, i);
    }
    finish(v);
    return v;
}

TheoremVerdict check_theorem2(const TheoremParams &p)
{
    require_family(p, Family::trigonometric);
    if (!p.kappa) {
        throw Error(ErrorKind::invalid_input, "trigonometric theorem needs kappa");
    }
    const Real &kappa = *p.kappa;
    TheoremVerdict v;
    v.theorem = 2;
    add(v, "q > 0", Real(0), p.q);
    add(v, "q < 1", p.q, Real(1));
    add(v, "c > 0", Real(0), p.c);
    add(v, "kappa > 0", Real(0), kappa);
    add(v, "2c < kappa", ldexp(p.c, 1), kappa);
    add(v, "d - 2c > 0", Real(0), p.d - ldexp(p.c, 1));
    add(v, "max gap < 2 pi - 2 kappa", p.max_gap, ldexp(pi() - kappa, 1));

    const Real A = min(abs(sin(ldexp(kappa, -1))), abs(sin(ldexp(p.d, -1) - p.c)));
    v.auxiliary = A;
    const Real A2 = A * A;
    const Real c2 = p.c * p.c;
    const Real four_n(4 * p.n);
    for (std::size_t i = 0; i < p.multiplicities.size(); ++i) {
        const Real a(p.multiplicities[i]);
        const Real lhs = c2 * (four_n + a * (Real(9) * A2 / Real(8) - Real(2)));
        add(v, "c^2(4n + a_i(9A^2/8 - 2)) < A^2 a_i", lhs, A2 * a, i);
    }
    finish(v);
    return v;
}

TheoremVerdict check_theorem3(const TheoremParams &p)
{
    require_family(p, Family::exponential);
    TheoremVerdict v;
    v.theorem = 3;
    add_q_and_c(v, p);
    const Real S = sinh(ldexp(p.d - ldexp(p.c, 1), -1));
    v.auxiliary = S;
    const Real S2 = S * S;
    const Real c2 = p.c * p.c;
    const Real four_n(4 * p.n);
    for (std::size_t i = 0; i < p.multiplicities.size(); ++i) {
        const Real a(p.multiplicities[i]);
        const Real lhs = c2 * (four_n + (S2 - Real(2)) * a);
        add(v, "c^2(4n + (S^2 - 2)a_i) < S^2 a_i", lhs, S2 * a, i);
    }
    finish(v);
    return v;
}

TheoremVerdict check_theorem(const TheoremParams &params)
{
    switch (params.family) {
    case Family::algebraic:
        return check_theorem1(params);
    case Family::trigonometric:
        return check_theorem2(params);
    case Family::exponential:
        return check_theorem3(params);
    }
    throw Error(ErrorKind::invalid_input, "unknown family");
}

Real theorem_bound(const Real &c, const Real &q, int k)
{
    long e = 1;
    for (int i = 0; i < k; ++i) {
        e *= 3;
    }
    return c * pow(q, e);
}

OrderEstimate estimate_order(std::span<const Real> errors, const Real &floor)
{
    const Real cutoff = ldexp(floor, 8);
    auto usable = [&](std::size_t k) { return errors[k].sign() > 0 && errors[k] > cutoff && errors[k].is_finite(); };

    // Scan backwards for the last maximal strictly decreasing run of usable entries.
    std::size_t end = errors.size();
    while (end > 0) {
        while (end > 0 && !usable(end - 1)) {
            --end;
        }
        if (end == 0) {
            break;
        }
        std::size_t begin = end - 1;
        while (begin > 0 && usable(begin - 1) && errors[begin - 1] > errors[begin]) {
            --begin;
        }
        if (end - begin >= 4) {
            OrderEstimate est;
            est.first = begin;
            est.last = end - 1;
            for (std::size_t k = begin + 1; k + 1 < end; ++k) {
                est.per_step_orders.push_back(log(errors[k + 1] / errors[k]) / log(errors[k] / errors[k - 1]));
            }
            est.order = est.per_step_orders.back();
            return est;
        }
        end = begin;
    }
    throw Error(ErrorKind::insufficient_data,
                "no run of at least 4 strictly decreasing positive errors above the precision floor");
}

} // namespace multiroot
