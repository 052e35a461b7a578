#include <multiroot/poly.hpp>

#include <algorithm>
#include <string>
#include <utility>

#include <multiroot/error.hpp>

namespace multiroot
{

namespace
{

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(const Real &value, Family family, const Real &x)
{
    if (!value.is_finite()) {
        throw Error(ErrorKind::overflow, std::string("non-finite value while evaluating ") + to_string(family)
                                             + " polynomial at x = " + x.to_string(20));
    }
}

// Ascending-power coefficients c_0 + c_1 x + ... of the monic polynomial.
std::vector<Real> ascending(const AlgebraicPoly &p)
{
    const auto &a = p.coefficients();
    std::vector<Real> c(a.size() + 1);
    c[a.size()] = Real(1);
    for (std::size_t k = 0; k < a.size(); ++k) {
        c[a.size() - 1 - k] = a[k];
    }
    return c;
}

std::vector<Real> differentiate(const std::vector<Real> &c, std::size_t order)
{
    std::vector<Real> d = c;
    for (std::size_t j = 0; j < order; ++j) {
        if (d.size() <= 1) {
            return {Real(0)};
        }
        std::vector<Real> next(d.size() - 1);
        for (std::size_t k = 1; k < d.size(); ++k) {
            next[k - 1] = d[k] * Real(static_cast<long>(k));
        }
        d = std::move(next);
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

Evaluation evaluate_algebraic(const AlgebraicPoly &p, const Real &x)
{
    Real value(1);
    Real derivative;
    Real magnitude(1);
    const Real ax = abs(x);
    for (const auto &a : p.coefficients()) {
        derivative = derivative * x + value;
        value = value * x + a;
        magnitude = magnitude * ax + abs(a);
    }
    require_finite(value, Family::algebraic, x);
    require_finite(derivative, Family::algebraic, x);
    const auto n = static_cast<long>(p.degree());
    return {std::move(value), std::move(derivative), unit_roundoff() * Real(2 * n + 2) * magnitude};
}

Evaluation evaluate_trig(const TrigPoly &p, const Real &x)
{
    Real value = ldexp(p.a0(), -1);
    Real derivative;
    Real magnitude = abs(value);
    const auto n = static_cast<long>(p.degree());
    const Real ax = abs(x);
    for (std::size_t l = 1; l <= p.degree(); ++l) {
        const Real lr(static_cast<long>(l));
        const Real arg = lr * x;
        const Real c = cos(arg);
        const Real s = sin(arg);
        const auto &a = p.cos_coeffs()[l - 1];
        const auto &b = p.sin_coeffs()[l - 1];
        value += a * c + b * s;
        derivative += lr * (b * c - a * s);
        magnitude += (abs(a) + abs(b)) * (Real(2 * n + 6) + lr * ax);
    }
    require_finite(value, Family::trigonometric, x);
    return {std::move(value), std::move(derivative), unit_roundoff() * magnitude};
}

Evaluation evaluate_exp(const ExpPoly &p, const Real &x)
{
    Real value = ldexp(p.a0(), -1);
    Real derivative;
    Real magnitude = abs(value);
    const auto n = static_cast<long>(p.degree());
    const Real ax = abs(x);
    for (std::size_t l = 1; l <= p.degree(); ++l) {
        const Real lr(static_cast<long>(l));
        const Real arg = lr * x;
        const Real ch = cosh(arg);
        const Real sh = sinh(arg);
        require_finite(ch, Family::exponential, x);
        const auto &a = p.ch_coeffs()[l - 1];
        const auto &b = p.sh_coeffs()[l - 1];
        value += a * ch + b * sh;
        derivative += lr * (a * sh + b * ch);
        magnitude += (abs(a) + abs(b)) * ch * (Real(2 * n + 6) + lr * ax);
    }
    require_finite(value, Family::exponential, x);
    require_finite(derivative, Family::exponential, x);
    return {std::move(value), std::move(derivative), unit_roundoff() * magnitude};
}

struct Kernel {
    Real g;
    Real dg;
};

Kernel kernel(Family family, const Real &t)
{
    switch (family) {
    case Family::algebraic:
        return {t, Real(1)};
    case Family::trigonometric: {
        const Real h = ldexp(t, -1);
        return {sin(h), ldexp(cos(h), -1)};
    }
    case Family::exponential: {
        const Real h = ldexp(t, -1);
        return {sinh(h), ldexp(cosh(h), -1)};
    }
    }
    return {t, Real(1)};
}

Evaluation evaluate_factored(const FactoredForm &f, const Real &x)
{
    const auto &roots = f.config().roots();
    const auto &mult = f.config().multiplicities();
    const std::size_t m = roots.size();

    std::vector<Kernel> k;
    std::vector<Real> powered;
    k.reserve(m);
    powered.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        k.push_back(kernel(f.family(), x - roots[j]));
        powered.push_back(pow(k.back().g, mult[j]));
    }

    Real value = f.scale();
    for (const auto &p : powered) {
        value *= p;
    }

    // Product rule; stays valid when x sits exactly on a root.
    Real derivative;
    for (std::size_t j = 0; j < m; ++j) {
        Real term = f.scale() * Real(mult[j]) * pow(k[j].g, mult[j] - 1) * k[j].dg;
        for (std::size_t i = 0; i < m; ++i) {
            if (i != j) {
                term *= powered[i];
            }
        }
        derivative += term;
    }
    require_finite(value, f.family(), x);
    require_finite(derivative, f.family(), x);

    const long terms = 4L * f.config().total_multiplicity() + 4L * static_cast<long>(m) + 4L;
    Real bound = unit_roundoff() * Real(terms) * abs(value);
    return {std::move(value), std::move(derivative), std::move(bound)};
}

PolyFamily expand_algebraic(const FactoredForm &form)
{
    // Ascending powers, built by multiplying with (x - r) alpha times.
    std::vector<Real> c{Real(1)};
    const auto &roots = form.config().roots();
    const auto &mult = form.config().multiplicities();
    for (std::size_t j = 0; j < roots.size(); ++j) {
        for (int rep = 0; rep < mult[j]; ++rep) {
            std::vector<Real> next(c.size() + 1);
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k + 1] += c[k];
                next[k] -= roots[j] * c[k];
            }
            c = std::move(next);
        }
    }
    // The scale multiplies every coefficient, so the monic form needs scale = 1.
    if (form.scale() != Real(1)) {
        throw Error(ErrorKind::invalid_configuration,
                    "algebraic coefficient form is monic; factored scale must be 1");
    }
    const std::size_t n = c.size() - 1;
    std::vector<Real> a(n);
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = c[n - 1 - k];
    }
    return AlgebraicPoly(std::move(a));
}

// Half-angle basis sum_k (C_k cos(k x/2) + S_k sin(k x/2)) for the trigonometric
// family, or with ch/sh for the exponential family.
struct HalfAngleSeries {
    std::vector<Real> even; // cos / ch
    std::vector<Real> odd;  // sin / sh
};

// Multiplies the series by w(theta) = p * odd(theta) + q * even(theta), theta = x/2.
HalfAngleSeries multiply_half_angle(const HalfAngleSeries &s, const Real &p, const Real &q, bool hyperbolic)
{
    const std::size_t top = s.even.size();
    HalfAngleSeries r{std::vector<Real>(top + 1), std::vector<Real>(top + 1)};

    // Adds coefficient v of the "even"/"odd" basis at (possibly negative) index k.
    auto add_even = [&](long k, const Real &v) { r.even[static_cast<std::size_t>(k < 0 ? -k : k)] += v; };
    // odd(0) = sin 0 = sh 0 vanishes identically.
    auto add_odd = [&](long k, const Real &v) {
        if (k == 0) {
            return;
        }
        if (k < 0) {
            r.odd[static_cast<std::size_t>(-k)] -= v;
        } else {
            r.odd[static_cast<std::size_t>(k)] += v;
        }
    };

    for (std::size_t ku = 0; ku < top; ++ku) {
        const long k = static_cast<long>(ku);
        const Real ce = ldexp(s.even[ku], -1);
        const Real co = ldexp(s.odd[ku], -1);
        if (!ce.is_zero()) {
            // even(k) * odd(1) = [odd(k+1) - odd(k-1)] / 2   (both families)
            add_odd(k + 1, p * ce);
            add_odd(k - 1, -(p * ce));
            // even(k) * even(1) = [even(k+1) + even(k-1)] / 2
            add_even(k + 1, q * ce);
            add_even(k - 1, q * ce);
        }
        if (!co.is_zero()) {
            // sin sin = [cos(k-1) - cos(k+1)] / 2 ; sh sh = [ch(k+1) - ch(k-1)] / 2
            if (hyperbolic) {
                add_even(k + 1, p * co);
                add_even(k - 1, -(p * co));
            } else {
                add_even(k - 1, p * co);
                add_even(k + 1, -(p * co));
            }
            // odd(k) * even(1) = [odd(k+1) + odd(k-1)] / 2
            add_odd(k + 1, q * co);
            add_odd(k - 1, q * co);
        }
    }
    return r;
}

PolyFamily expand_periodic(const FactoredForm &form)
{
    const bool hyperbolic = form.family() == Family::exponential;
    HalfAngleSeries s{{form.scale()}, {Real(0)}};
    const auto &roots = form.config().roots();
    const auto &mult = form.config().multiplicities();
    for (std::size_t j = 0; j < roots.size(); ++j) {
        // g((x - r)/2) = c(r/2) * odd(x/2) - s(r/2) * even(x/2)
        const Real h = ldexp(roots[j], -1);
        const Real p = hyperbolic ? cosh(h) : cos(h);
        const Real q = -(hyperbolic ? sinh(h) : sin(h));
        for (int rep = 0; rep < mult[j]; ++rep) {
            s = multiply_half_angle(s, p, q, hyperbolic);
        }
    }
    const std::size_t n = form.degree();
    std::vector<Real> a(n);
    std::vector<Real> b(n);
    for (std::size_t l = 1; l <= n; ++l) {
        a[l - 1] = s.even[2 * l];
        b[l - 1] = s.odd[2 * l];
    }
    Real a0 = ldexp(s.even[0], 1);
    if (hyperbolic) {
        return ExpPoly(std::move(a0), std::move(a), std::move(b));
    }
    return TrigPoly(std::move(a0), std::move(a), std::move(b));
}

// Checks the coefficient form against the factored form at points spread over
// and around the roots.
void check_round_trip(const FactoredForm &form, const PolyFamily &expanded)
{
    const auto &roots = form.config().roots();
    const Real lo = *std::min_element(roots.begin(), roots.end()) - Real(1);
    const Real hi = *std::max_element(roots.begin(), roots.end()) + Real(1);
    const long samples = 2 * static_cast<long>(form.degree()) + 5;
    const PolyFamily factored = form;
    for (long s = 0; s < samples; ++s) {
        // Irrational-ish offsets keep samples off the roots.
        const Real t = (Real(s) + Real("0.318309886183790671")) / Real(samples);
        const Real x = lo + (hi - lo) * t;
        const auto ev = evaluate(expanded, x);
        const auto fv = evaluate(factored, x);
        const Real allowed = ldexp(ev.error_bound + fv.error_bound, 10);
        if (abs(ev.value - fv.value) > allowed) {
            throw Error(ErrorKind::invalid_configuration,
                        std::string("expanded ") + to_string(form.family())
                            + " polynomial does not match its factored form at x = " + x.to_string(20));
        }
    }
}

} // namespace

const char *to_string(Family family) noexcept
{
    switch (family) {
    case Family::algebraic:
        return "algebraic";
    case Family::trigonometric:
        return "trigonometric";
    case Family::exponential:
        return "exponential";
    }
    return "unknown";
}

Family family_from_string(std::string_view name)
{
    if (name == "algebraic") {
        return Family::algebraic;
    }
    if (name == "trigonometric" || name == "trig") {
        return Family::trigonometric;
    }
    if (name == "exponential" || name == "exp") {
        return Family::exponential;
    }
    throw Error(ErrorKind::invalid_input, "unknown polynomial family '" + std::string(name) + "'");
}

RootConfiguration::RootConfiguration(std::vector<Real> roots, std::vector<int> multiplicities)
    : roots_(std::move(roots)), multiplicities_(std::move(multiplicities))
{
    if (roots_.empty()) {
        throw Error(ErrorKind::invalid_configuration, "root configuration is empty");
    }
    if (roots_.size() != multiplicities_.size()) {
        throw Error(ErrorKind::invalid_configuration,
                    "root configuration has " + std::to_string(roots_.size()) + " roots but "
                        + std::to_string(multiplicities_.size()) + " multiplicities");
    }
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (!roots_[i].is_finite()) {
            throw Error(ErrorKind::invalid_configuration, "root " + std::to_string(i) + " is not finite");
        }
        if (multiplicities_[i] < 1) {
            throw Error(ErrorKind::invalid_configuration,
                        "multiplicity of root " + std::to_string(i) + " must be at least 1");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (roots_[i] == roots_[j]) {
                throw Error(ErrorKind::invalid_configuration,
                            "roots " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
            }
        }
    }
}

int RootConfiguration::total_multiplicity() const noexcept
{
    int s = 0;
    for (int a : multiplicities_) {
        s += a;
    }
    return s;
}

Real RootConfiguration::min_gap() const
{
    if (roots_.size() < 2) {
        return Real(0);
    }
    Real best = abs(roots_[0] - roots_[1]);
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        for (std::size_t j = i + 1; j < roots_.size(); ++j) {
            best = min(best, abs(roots_[i] - roots_[j]));
        }
    }
    return best;
}

Real RootConfiguration::max_gap() const
{
    Real best;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        for (std::size_t j = i + 1; j < roots_.size(); ++j) {
            best = max(best, abs(roots_[i] - roots_[j]));
        }
    }
    return best;
}

AlgebraicPoly::AlgebraicPoly(std::vector<Real> coefficients) : coefficients_(std::move(coefficients))
{
    if (coefficients_.empty()) {
        throw Error(ErrorKind::invalid_input, "algebraic polynomial must have degree >= 1");
    }
}

TrigPoly::TrigPoly(Real a0, std::vector<Real> cos_coeffs, std::vector<Real> sin_coeffs)
    : a0_(std::move(a0)), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs))
{
    if (cos_.empty() || cos_.size() != sin_.size()) {
        throw Error(ErrorKind::invalid_input,
                    "trigonometric polynomial needs equally many (>= 1) cos and sin coefficients");
    }
    if (cos_.back().is_zero() && sin_.back().is_zero()) {
        throw Error(ErrorKind::invalid_input, "trigonometric polynomial has zero leading coefficients a_n and b_n");
    }
}

ExpPoly::ExpPoly(Real a0, std::vector<Real> ch_coeffs, std::vector<Real> sh_coeffs)
    : a0_(std::move(a0)), ch_(std::move(ch_coeffs)), sh_(std::move(sh_coeffs))
{
    if (ch_.empty() || ch_.size() != sh_.size()) {
        throw Error(ErrorKind::invalid_input,
                    "exponential polynomial needs equally many (>= 1) ch and sh coefficients");
    }
    if (ch_.back().is_zero() && sh_.back().is_zero()) {
        throw Error(ErrorKind::invalid_input, "exponential polynomial has zero leading coefficients a_n and b_n");
    }
}

FactoredForm::FactoredForm(Family family, RootConfiguration config, Real scale)
    : family_(family), config_(std::move(config)), scale_(std::move(scale))
{
    if (config_.size() == 0) {
        throw Error(ErrorKind::invalid_configuration, "factored form needs at least one root");
    }
    if (family_ != Family::algebraic && config_.total_multiplicity() % 2 != 0) {
        throw Error(ErrorKind::invalid_configuration,
                    std::string(to_string(family_)) + " polynomial needs an even multiplicity sum (2n), got "
                        + std::to_string(config_.total_multiplicity()));
    }
    if (scale_.is_zero() || !scale_.is_finite()) {
        throw Error(ErrorKind::invalid_configuration, "factored form scale must be finite and nonzero");
    }
}

std::size_t FactoredForm::degree() const noexcept
{
    const auto total = static_cast<std::size_t>(config_.total_multiplicity());
    return family_ == Family::algebraic ? total : total / 2;
}

Family family_of(const PolyFamily &poly) noexcept
{
    return std::visit(overloaded{
                          [](const AlgebraicPoly &) { return Family::algebraic; },
                          [](const TrigPoly &) { return Family::trigonometric; },
                          [](const ExpPoly &) { return Family::exponential; },
                          [](const FactoredForm &f) { return f.family(); },
                      },
                      poly);
}

std::size_t degree(const PolyFamily &poly) noexcept
{
    return std::visit([](const auto &p) { return p.degree(); }, poly);
}

Evaluation evaluate(const PolyFamily &poly, const Real &x)
{
    return std::visit(overloaded{
                          [&](const AlgebraicPoly &p) { return evaluate_algebraic(p, x); },
                          [&](const TrigPoly &p) { return evaluate_trig(p, x); },
                          [&](const ExpPoly &p) { return evaluate_exp(p, x); },
                          [&](const FactoredForm &p) { return evaluate_factored(p, x); },
                      },
                      poly);
}

Real eval(const PolyFamily &poly, const Real &x)
{
    return evaluate(poly, x).value;
}

Real eval_derivative(const PolyFamily &poly, const Real &x)
{
    return evaluate(poly, x).derivative;
}

Real eval_nth_derivative(const PolyFamily &poly, std::size_t order, const Real &x)
{
    return std::visit(
        overloaded{
            [&](const AlgebraicPoly &p) {
                Real v = horner(differentiate(ascending(p), order), x);
                require_finite(v, Family::algebraic, x);
                return v;
            },
            [&](const TrigPoly &p) {
                Real v = order == 0 ? ldexp(p.a0(), -1) : Real(0);
                for (std::size_t l = 1; l <= p.degree(); ++l) {
                    const Real lr(static_cast<long>(l));
                    const Real c = cos(lr * x);
                    const Real s = sin(lr * x);
                    const auto &a = p.cos_coeffs()[l - 1];
                    const auto &b = p.sin_coeffs()[l - 1];
                    // d^j/dx^j of (a cos + b sin) cycles with period 4.
                    Real term;
                    switch (order % 4) {
                    case 0: term = a * c + b * s; break;
                    case 1: term = b * c - a * s; break;
                    case 2: term = -(a * c + b * s); break;
                    default: term = a * s - b * c; break;
                    }
                    v += pow(lr, static_cast<long>(order)) * term;
                }
                require_finite(v, Family::trigonometric, x);
                return v;
            },
            [&](const ExpPoly &p) {
                Real v = order == 0 ? ldexp(p.a0(), -1) : Real(0);
                for (std::size_t l = 1; l <= p.degree(); ++l) {
                    const Real lr(static_cast<long>(l));
                    const Real ch = cosh(lr * x);
                    const Real sh = sinh(lr * x);
                    const auto &a = p.ch_coeffs()[l - 1];
                    const auto &b = p.sh_coeffs()[l - 1];
                    const Real term = order % 2 == 0 ? a * ch + b * sh : a * sh + b * ch;
                    v += pow(lr, static_cast<long>(order)) * term;
                }
                require_finite(v, Family::exponential, x);
                return v;
            },
            [&](const FactoredForm &p) { return eval_nth_derivative(expand_from_roots(p), order, x); },
        },
        poly);
}

Real nth_derivative_magnitude(const PolyFamily &poly, std::size_t order, const Real &x)
{
    return std::visit(overloaded{
                          [&](const AlgebraicPoly &p) {
                              auto c = differentiate(ascending(p), order);
                              for (auto &v : c) {
                                  v = abs(v);
                              }
                              return horner(c, abs(x));
                          },
                          [&](const TrigPoly &p) {
                              Real v = order == 0 ? abs(ldexp(p.a0(), -1)) : Real(0);
                              for (std::size_t l = 1; l <= p.degree(); ++l) {
                                  const Real lr(static_cast<long>(l));
                                  v += pow(lr, static_cast<long>(order))
                                       * (abs(p.cos_coeffs()[l - 1]) + abs(p.sin_coeffs()[l - 1]));
                              }
                              return v;
                          },
                          [&](const ExpPoly &p) {
                              Real v = order == 0 ? abs(ldexp(p.a0(), -1)) : Real(0);
                              for (std::size_t l = 1; l <= p.degree(); ++l) {
                                  const Real lr(static_cast<long>(l));
                                  v += pow(lr, static_cast<long>(order)) * cosh(lr * x)
                                       * (abs(p.ch_coeffs()[l - 1]) + abs(p.sh_coeffs()[l - 1]));
                              }
                              return v;
                          },
                          [&](const FactoredForm &p) {
                              return nth_derivative_magnitude(expand_from_roots(p), order, x);
                          },
                      },
                      poly);
}

PolyFamily expand_from_roots(const FactoredForm &form)
{
    PolyFamily guarded = [&] {
        // The recurrences cancel heavily; guard bits keep the final rounding
        // the only error that reaches the coefficients.
        PrecisionScope scope(working_precision() + 64 + 2L * form.config().total_multiplicity());
        return form.family() == Family::algebraic ? expand_algebraic(form) : expand_periodic(form);
    }();
    const auto round_all = [](const std::vector<Real> &v) {
        std::vector<Real> out;
        out.reserve(v.size());
        for (const auto &x : v) {
            out.push_back(rounded(x));
        }
        return out;
    };
    PolyFamily expanded = std::visit(
        overloaded{
            [&](const AlgebraicPoly &p) -> PolyFamily { return AlgebraicPoly(round_all(p.coefficients())); },
            [&](const TrigPoly &p) -> PolyFamily {
                return TrigPoly(rounded(p.a0()), round_all(p.cos_coeffs()), round_all(p.sin_coeffs()));
            },
            [&](const ExpPoly &p) -> PolyFamily {
                return ExpPoly(rounded(p.a0()), round_all(p.ch_coeffs()), round_all(p.sh_coeffs()));
            },
            [&](const FactoredForm &p) -> PolyFamily { return p; },
        },
        guarded);
    check_round_trip(form, expanded);
    return expanded;
}

Real collision_threshold()
{
    return pow2(-(working_precision() / 2));
}

Real log_derivative_q(Family family, std::span<const Real> points, std::span<const int> multiplicities,
                      std::size_t exclude, const Real &x)
{
    if (points.size() != multiplicities.size()) {
        throw Error(ErrorKind::invalid_input, "points and multiplicities differ in length");
    }
    const Real threshold = collision_threshold();
    Real sum;
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (j == exclude) {
            continue;
        }
        const Real t = x - points[j];
        if (abs(t) < threshold) {
            throw CollisionError(exclude, j,
                                 "approximation collision: x = " + x.to_string(20) + " is within "
                                     + threshold.to_string(3) + " of point " + std::to_string(j));
        }
        const Real alpha(multiplicities[j]);
        switch (family) {
        case Family::algebraic:
            sum += alpha / t;
            break;
        case Family::trigonometric:
            sum += ldexp(alpha, -1) * cot(ldexp(t, -1));
            break;
        case Family::exponential:
            sum += ldexp(alpha, -1) * coth(ldexp(t, -1));
            break;
        }
    }
    if (!sum.is_finite()) {
        throw Error(ErrorKind::nonfinite, "non-finite log-derivative at x = " + x.to_string(20));
    }
    return sum;
}

Real log_derivative_q(Family family, const RootConfiguration &others, const Real &x)
{
    return log_derivative_q(family, others.roots(), others.multiplicities(), others.size(), x);
}

} // namespace multiroot
