#ifndef MULTIROOT_POLY_HPP
#define MULTIROOT_POLY_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <multiroot/real.hpp>

namespace multiroot
{

enum class Family { algebraic, trigonometric, exponential };

[[nodiscard]] const char *to_string(Family family) noexcept;
// Accepts "algebraic", "trigonometric" / "trig", "exponential" / "exp".
[[nodiscard]] Family family_from_string(std::string_view name);

// Distinct real roots paired with their multiplicities.
class RootConfiguration
{
public:
    RootConfiguration() = default;
    // Throws Error(invalid_configuration) on size mismatch, empty input,
    // repeated roots or multiplicities below 1.
    RootConfiguration(std::vector<Real> roots, std::vector<int> multiplicities);

    [[nodiscard]] std::size_t size() const noexcept { return roots_.size(); }
    [[nodiscard]] const std::vector<Real> &roots() const noexcept { return roots_; }
    [[nodiscard]] const std::vector<int> &multiplicities() const noexcept { return multiplicities_; }
    [[nodiscard]] int total_multiplicity() const noexcept;

    // Min / max pairwise distance; zero when there is a single root.
    [[nodiscard]] Real min_gap() const;
    [[nodiscard]] Real max_gap() const;

private:
    std::vector<Real> roots_;
    std::vector<int> multiplicities_;
};

// Monic x^n + a_1 x^(n-1) + ... + a_n, stored as (a_1, ..., a_n).
class AlgebraicPoly
{
public:
    explicit AlgebraicPoly(std::vector<Real> coefficients);

    [[nodiscard]] std::size_t degree() const noexcept { return coefficients_.size(); }
    [[nodiscard]] const std::vector<Real> &coefficients() const noexcept { return coefficients_; }

private:
    std::vector<Real> coefficients_;
};

// a0/2 + sum_{l=1..n} (a_l cos lx + b_l sin lx).
class TrigPoly
{
public:
    TrigPoly(Real a0, std::vector<Real> cos_coeffs, std::vector<Real> sin_coeffs);

    [[nodiscard]] std::size_t degree() const noexcept { return cos_.size(); }
    [[nodiscard]] const Real &a0() const noexcept { return a0_; }
    [[nodiscard]] const std::vector<Real> &cos_coeffs() const noexcept { return cos_; }
    [[nodiscard]] const std::vector<Real> &sin_coeffs() const noexcept { return sin_; }

private:
    Real a0_;
    std::vector<Real> cos_;
    std::vector<Real> sin_;
};

// a0/2 + sum_{l=1..n} (a_l ch lx + b_l sh lx).
class ExpPoly
{
public:
    ExpPoly(Real a0, std::vector<Real> ch_coeffs, std::vector<Real> sh_coeffs);

    [[nodiscard]] std::size_t degree() const noexcept { return ch_.size(); }
    [[nodiscard]] const Real &a0() const noexcept { return a0_; }
    [[nodiscard]] const std::vector<Real> &ch_coeffs() const noexcept { return ch_; }
    [[nodiscard]] const std::vector<Real> &sh_coeffs() const noexcept { return sh_; }

private:
    Real a0_;
    std::vector<Real> ch_;
    std::vector<Real> sh_;
};

// scale * prod_j g(x - x_j)^(alpha_j) with g(t) = t, sin(t/2) or sh(t/2).
class FactoredForm
{
public:
    // Trigonometric and exponential forms need an even total multiplicity.
    FactoredForm(Family family, RootConfiguration config, Real scale = Real(1));

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] const RootConfiguration &config() const noexcept { return config_; }
    [[nodiscard]] const Real &scale() const noexcept { return scale_; }
    // n, with sum(alpha) = n (algebraic) or 2n (trigonometric, exponential).
    [[nodiscard]] std::size_t degree() const noexcept;

private:
    Family family_;
    RootConfiguration config_;
    Real scale_;
};

using PolyFamily = std::variant<AlgebraicPoly, TrigPoly, ExpPoly, FactoredForm>;

[[nodiscard]] Family family_of(const PolyFamily &poly) noexcept;
[[nodiscard]] std::size_t degree(const PolyFamily &poly) noexcept;

// Value, first derivative and an a-priori bound on the rounding error of the
// computed value.
struct Evaluation {
    Real value;
    Real derivative;
    Real error_bound;
};

// Throws Error(overflow) when an intermediate is not finite.
[[nodiscard]] Evaluation evaluate(const PolyFamily &poly, const Real &x);
[[nodiscard]] Real eval(const PolyFamily &poly, const Real &x);
[[nodiscard]] Real eval_derivative(const PolyFamily &poly, const Real &x);

// j-th derivative by analytic differentiation of the coefficient form.
// Factored forms are expanded first.
[[nodiscard]] Real eval_nth_derivative(const PolyFamily &poly, std::size_t order, const Real &x);
// Evaluation of the j-th derivative with every term taken in absolute value;
// the natural magnitude against which that derivative is small or not.
[[nodiscard]] Real nth_derivative_magnitude(const PolyFamily &poly, std::size_t order, const Real &x);

// Coefficient form of a factored polynomial. Algebraic: repeated convolution
// by (x - x_j). Trigonometric / exponential: product-to-sum recurrences in the
// half-angle basis. The result is checked pointwise against the factored form.
[[nodiscard]] PolyFamily expand_from_roots(const FactoredForm &form);

// Q_i'(x)/Q_i(x) for Q_i = prod_{j != exclude} g(x - x_j)^(alpha_j), as a sum
// of per-root terms. Pass exclude >= points.size() to include every point.
// Throws CollisionError when |x - x_j| < 2^-(p/2).
[[nodiscard]] Real log_derivative_q(Family family, std::span<const Real> points,
                                    std::span<const int> multiplicities, std::size_t exclude, const Real &x);
[[nodiscard]] Real log_derivative_q(Family family, const RootConfiguration &others, const Real &x);

// |x - y| below this triggers a collision at the working precision.
[[nodiscard]] Real collision_threshold();

} // namespace multiroot

#endif
