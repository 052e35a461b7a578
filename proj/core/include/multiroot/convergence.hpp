#ifndef MULTIROOT_CONVERGENCE_HPP
#define MULTIROOT_CONVERGENCE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <multiroot/poly.hpp>
#include <multiroot/real.hpp>

namespace multiroot
{

// Constants feeding the convergence hypotheses for one family.
struct TheoremParams {
    Family family = Family::algebraic;
    Real c;
    Real q;
    // Minimum and maximum pairwise distance of the exact roots.
    Real d;
    Real max_gap;
    // Separation constant of the trigonometric theorem; present iff trigonometric.
    std::optional<Real> kappa;
    // Degree: sum(alpha) for algebraic, sum(alpha)/2 otherwise.
    long n = 0;
    std::vector<int> multiplicities;

    // Derives d, max_gap and n from the exact roots. Throws Error(invalid_input)
    // when kappa is given for a non-trigonometric family (or missing for the
    // trigonometric one) or the multiplicity sum does not fit the family.
    [[nodiscard]] static TheoremParams make(Family family, const RootConfiguration &exact, Real c, Real q,
                                            std::optional<Real> kappa = std::nullopt);
};

// One strict inequality lhs < rhs of a hypothesis, with both sides evaluated.
struct Clause {
    std::string name;
    // Root index for the per-root inequalities.
    std::optional<std::size_t> root;
    Real lhs;
    Real rhs;
    bool passed = false;
};

struct TheoremVerdict {
    int theorem = 0;
    bool passed = false;
    std::vector<Clause> clauses;
    // A for the trigonometric theorem, S for the exponential one.
    std::optional<Real> auxiliary;

    [[nodiscard]] std::vector<Clause> failures() const;
};

// 1 > q > 0, c > 0, d - 2c > 0 and, for every i,
// 0 < c^2 (n - 3 a_i) + c (n + (3d - 1) a_i) < d^2 a_i.
[[nodiscard]] TheoremVerdict check_theorem1(const TheoremParams &params);

// With A = min{|sin(kappa/2)|, |sin(d/2 - c)|}: c, q, kappa > 0, q < 1,
// 2c < kappa, d - 2c > 0, max gap < 2 pi - 2 kappa and, for every i,
// c^2 (4n + a_i (9 A^2 / 8 - 2)) < A^2 a_i.
[[nodiscard]] TheoremVerdict check_theorem2(const TheoremParams &params);

// With S = sh((d - 2c)/2): 1 > q > 0, c > 0, d - 2c > 0 and, for every i,
// c^2 (4n + (S^2 - 2) a_i) < S^2 a_i.
[[nodiscard]] TheoremVerdict check_theorem3(const TheoremParams &params);

// Dispatches on params.family.
[[nodiscard]] TheoremVerdict check_theorem(const TheoremParams &params);

// c * q^(3^k), the error bound the theorems guarantee at iteration k.
[[nodiscard]] Real theorem_bound(const Real &c, const Real &q, int k);

struct OrderEstimate {
    Real order;
    // Inclusive index range of the error entries used.
    std::size_t first = 0;
    std::size_t last = 0;
    std::vector<Real> per_step_orders;
};

// Empirical convergence order from an error sequence. Uses the last maximal
// run (length >= 4) of strictly decreasing positive entries above 2^8 * floor
// and returns p_k = log(e_{k+1}/e_k) / log(e_k/e_{k-1}) over it; `order` is
// the final p_k. Throws Error(insufficient_data) when no such run exists.
[[nodiscard]] OrderEstimate estimate_order(std::span<const Real> errors, const Real &floor = Real(0));

} // namespace multiroot

#endif
