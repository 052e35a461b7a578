#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include <multiroot/ehrlich.hpp>
#include <multiroot/error.hpp>
#include <multiroot/oracle.hpp>

#include "support/generators.hpp"

using namespace multiroot;

namespace
{

std::vector<Real> reals(std::initializer_list<const char *> values)
{
    std::vector<Real> out;
    for (const char *v : values) {
        out.emplace_back(v);
    }
    return out;
}

Real max_error(const std::vector<Real> &x, const std::vector<Real> &truth)
{
    Real worst;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = max(worst, abs(x[i] - truth[i]));
    }
    return worst;
}

SolveSettings settings_at(long bits)
{
    SolveSettings s;
    s.precision_bits = bits;
    return s;
}

} // namespace

TEST_CASE("step: single root reduces to Newton with multiplicity")
{
    const PolyFamily f = AlgebraicPoly({Real(-4), Real(4)}); // (x-2)^2
    const std::vector<int> mult{2};
    const auto s = settings_at(53);
    const auto next = step(f, mult, initial_state(f, {Real(3)}, s), s);
    CHECK(next.approximations[0] == Real(2));
    CHECK(next.k == 1);
    CHECK(next.trace.size() == 2);
}

TEST_CASE("step: all-simple roots match the classical Ehrlich step")
{
    // x^2 - 1 from (0.9, -1.2).
    const PolyFamily f = AlgebraicPoly({Real(0), Real(-1)});
    const std::vector<int> mult{1, 1};
    const auto s = settings_at(53);
    const std::vector<Real> x{Real(0.9), Real(-1.2)};
    const auto ours = step(f, mult, initial_state(f, x, s), s).approximations;
    const auto classical = classical_ehrlich_step(f, x, SweepMode::simultaneous);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(abs(ours[i] - classical[i]) <= Real(4) * ulp(max(abs(x[i]), abs(classical[i]))));
    }
}

TEST_CASE("step: example 1 reaches 1e-18 after four iterations at 192 bits")
{
    PrecisionScope scope(192);
    const auto truth = reals({"2", "3", "5"});
    const RootConfiguration c(truth, {2, 3, 1});
    const auto s = settings_at(192);
    for (const PolyFamily &f : {PolyFamily(FactoredForm(Family::algebraic, c)),
                                expand_from_roots(FactoredForm(Family::algebraic, c))}) {
        auto state = initial_state(f, reals({"0.4", "3.5", "8"}), s);
        for (int k = 0; k < 4; ++k) {
            state = step(f, c.multiplicities(), state, s);
        }
        CHECK(max_error(state.approximations, truth) <= Real("1e-18"));
        CHECK(state.trace.size() == 5);
    }
}

TEST_CASE("solve: example 2 trigonometric problem")
{
    PrecisionScope scope(192);
    const auto truth = reals({"1", "2", "2.5"});
    const RootConfiguration c(truth, {3, 2, 1});
    auto s = settings_at(192);
    s.truth = truth;
    const PolyFamily f = expand_from_roots(FactoredForm(Family::trigonometric, c));
    const auto report = solve(f, c.multiplicities(), reals({"0.2", "1.7", "3"}), s);
    CHECK(report.termination == Termination::converged);
    REQUIRE(report.trace.size() > 5);
    CHECK(max_error(report.trace[5].approximations, truth) <= Real("1e-18"));
    CHECK(max_error(report.trace[4].approximations, truth) > Real("1e-18"));
    CHECK(max_error(report.final, truth) <= Real("1e-18"));
}

TEST_CASE("solve: example 3 exponential problem")
{
    PrecisionScope scope(192);
    const auto truth = reals({"-2", "3"});
    const RootConfiguration c(truth, {2, 2});
    auto s = settings_at(192);
    s.truth = truth;
    const PolyFamily f = expand_from_roots(FactoredForm(Family::exponential, c));
    const auto report = solve(f, c.multiplicities(), reals({"-1", "4"}), s);
    CHECK(report.termination == Termination::converged);
    REQUIRE(report.trace.size() > 4);
    CHECK(max_error(report.trace[4].approximations, truth) <= Real("1e-18"));
    REQUIRE(report.estimated_order.has_value());
    CHECK(report.estimated_order->order > Real("2.6"));
    CHECK(report.estimated_order->order < Real("3.4"));
}

TEST_CASE("solve: exact roots converge immediately")
{
    PrecisionScope scope(128);
    const auto truth = reals({"2", "3", "5"});
    const RootConfiguration c(truth, {2, 3, 1});
    const PolyFamily f = expand_from_roots(FactoredForm(Family::algebraic, c));
    const auto report = solve(f, c.multiplicities(), truth, settings_at(128));
    CHECK(report.termination == Termination::converged);
    CHECK(report.iterations_used <= 1);
    CHECK(report.final == truth);
}

TEST_CASE("solve: rejects malformed initial vectors")
{
    const PolyFamily f = AlgebraicPoly({Real(0), Real(-1)});
    const std::vector<int> two{1, 1};
    CHECK_THROWS_AS((void)solve(f, two, {Real(1)}, settings_at(53)), Error);
    CHECK_THROWS_AS((void)solve(f, two, {Real(1), Real(1)}, settings_at(53)), Error);
    const std::vector<int> wrong_sum{1, 2};
    CHECK_THROWS_AS((void)solve(f, wrong_sum, {Real(1), Real(-1)}, settings_at(53)), Error);
    auto bad = settings_at(53);
    bad.max_iterations = 0;
    CHECK_THROWS_AS((void)solve(f, two, {Real(1), Real(-1)}, bad), Error);
}

TEST_CASE("solve: vanishing denominator terminates as diverged")
{
    // x^2 - 1 treated as one double root from 0, where f' = 0.
    const PolyFamily f = AlgebraicPoly({Real(0), Real(-1)});
    const std::vector<int> mult{2};
    const auto report = solve(f, mult, {Real(0)}, settings_at(53));
    CHECK(report.termination == Termination::diverged);
    CHECK(report.trace.size() == 1);
    CHECK_FALSE(report.message.empty());
}

TEST_CASE("solve: colliding approximations abort with the trace intact")
{
    // Two simple-root approximations of the double root of x^2 close in
    // linearly and symmetrically until they collide.
    const PolyFamily f = AlgebraicPoly({Real(0), Real(0)});
    const std::vector<int> mult{1, 1};
    const auto report = solve(f, mult, {Real(-1), Real(1)}, settings_at(53));
    CHECK(report.termination == Termination::collision);
    CHECK(report.trace.size() == report.iterations_used + 1);
    CHECK(report.iterations_used > 5);
}

TEST_CASE("step: collision inside a state is thrown")
{
    const PolyFamily f = AlgebraicPoly({Real(0), Real(-1)});
    const std::vector<int> mult{1, 1};
    const auto s = settings_at(53);
    const auto state = initial_state(f, {Real(1), Real(1) + pow2(-40)}, s);
    CHECK_THROWS_AS((void)step(f, mult, state, s), CollisionError);
}

TEST_CASE("solve: sequential sweep also converges on example 1")
{
    PrecisionScope scope(192);
    const auto truth = reals({"2", "3", "5"});
    const RootConfiguration c(truth, {2, 3, 1});
    auto s = settings_at(192);
    s.sweep = SweepMode::sequential;
    const PolyFamily f = FactoredForm(Family::algebraic, c);
    const auto report = solve(f, c.multiplicities(), reals({"0.4", "3.5", "8"}), s);
    CHECK(report.termination == Termination::converged);
    CHECK(max_error(report.final, truth) <= Real("1e-50"));
    // Gauss-Seidel coupling changes the iterates relative to the default mode.
    const auto jacobi = solve(f, c.multiplicities(), reals({"0.4", "3.5", "8"}), settings_at(192));
    CHECK(jacobi.trace[1].approximations[1] != report.trace[1].approximations[1]);
}

TEST_CASE("lemma 1: forced arithmetic and expansion oracle")
{
    CHECK(lemma1_residual(std::vector<Real>{Real(0), Real(1)}, 0).is_zero());
    CHECK(abs(lemma1_residual(std::vector<Real>{Real(1), Real(2), Real(5)}, 1)) <= Real("1e-12"));
    CHECK_THROWS_AS((void)lemma1_residual(std::vector<Real>{Real(1), Real(1)}, 0), Error);

    std::mt19937_64 rng(2024);
    for (int instance = 0; instance < 20; ++instance) {
        const auto knots = testing::separated_points(rng, 4, -2.0, 2.0, 0.3);
        for (std::size_t i = 0; i < knots.size(); ++i) {
            // |Q''/Q'| at a simple knot, from the product rule on the factored form.
            Real ratio;
            for (std::size_t j = 0; j < knots.size(); ++j) {
                if (j != i) {
                    ratio += Real(2) / (knots[i] - knots[j]);
                }
            }
            CHECK(abs(lemma1_residual(knots, i)) <= Real("1e-10") * abs(ratio));
        }
    }
}

TEST_CASE("property: exact roots are a fixed point")
{
    PrecisionScope scope(128);
    std::mt19937_64 rng(11);
    for (Family family : {Family::algebraic, Family::trigonometric, Family::exponential}) {
        testing::ConfigShape shape;
        shape.lo = family == Family::trigonometric ? 0.5 : -2.0;
        shape.hi = family == Family::trigonometric ? 5.5 : 2.0;
        for (int instance = 0; instance < 10; ++instance) {
            const auto c = testing::random_configuration(rng, family, shape);
            const PolyFamily f = expand_from_roots(FactoredForm(family, c));
            const auto s = settings_at(128);
            const auto next = step(f, c.multiplicities(), initial_state(f, c.roots(), s), s);
            for (std::size_t i = 0; i < c.size(); ++i) {
                CHECK(abs(next.approximations[i] - c.roots()[i]) <= pow2(-(128 - 10)));
            }
        }
    }
}

TEST_CASE("property: translation equivariance of the algebraic iteration")
{
    PrecisionScope scope(192);
    const auto s = settings_at(192);
    const std::vector<int> mult{2, 3, 1};
    const auto base_roots = reals({"2", "3", "5"});
    const auto base_init = reals({"0.4", "3.5", "8"});
    const PolyFamily base = expand_from_roots(FactoredForm(Family::algebraic, RootConfiguration(base_roots, mult)));
    const auto reference = solve(base, mult, base_init, s);
    for (int t : {1, -3}) {
        std::vector<Real> roots;
        std::vector<Real> init;
        for (std::size_t i = 0; i < 3; ++i) {
            roots.push_back(base_roots[i] + Real(t));
            init.push_back(base_init[i] + Real(t));
        }
        const PolyFamily shifted = expand_from_roots(FactoredForm(Family::algebraic, RootConfiguration(roots, mult)));
        const auto moved = solve(shifted, mult, init, s);
        const std::size_t common = std::min(moved.trace.size(), reference.trace.size());
        REQUIRE(common >= 5);
        for (std::size_t k = 0; k < common; ++k) {
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(abs(moved.trace[k].approximations[i] - (reference.trace[k].approximations[i] + Real(t)))
                      <= Real("1e-12"));
            }
        }
    }
}

TEST_CASE("property: simultaneous mode is permutation equivariant")
{
    PrecisionScope scope(192);
    const auto s = settings_at(192);
    const RootConfiguration c(reals({"1", "2", "2.5"}), {3, 2, 1});
    const PolyFamily f = expand_from_roots(FactoredForm(Family::trigonometric, c));
    const auto init = reals({"0.2", "1.7", "3"});
    const std::vector<std::size_t> perm{2, 0, 1};
    std::vector<Real> p_init;
    std::vector<int> p_mult;
    for (auto j : perm) {
        p_init.push_back(init[j]);
        p_mult.push_back(c.multiplicities()[j]);
    }
    const auto ref = solve(f, c.multiplicities(), init, s);
    const auto out = solve(f, p_mult, p_init, s);
    REQUIRE(ref.trace.size() == out.trace.size());
    for (std::size_t k = 0; k < ref.trace.size(); ++k) {
        for (std::size_t i = 0; i < perm.size(); ++i) {
            // Summation order of the coupling terms differs; allow a few roundings.
            CHECK(abs(out.trace[k].approximations[i] - ref.trace[k].approximations[perm[i]]) <= pow2(-(192 - 10)));
        }
    }
}

TEST_CASE("error_sequence falls back to corrections without exact roots")
{
    PrecisionScope scope(192);
    const RootConfiguration c(reals({"-2", "3"}), {2, 2});
    const PolyFamily f = FactoredForm(Family::exponential, c);
    const auto report = solve(f, c.multiplicities(), reals({"-1", "4"}), settings_at(192));
    const auto seq = error_sequence(report.trace);
    CHECK(seq.size() == report.trace.size() - 1);
    REQUIRE(report.estimated_order.has_value());
    CHECK(report.estimated_order->order > Real("2.6"));
    CHECK(report.estimated_order->order < Real("3.4"));
}
