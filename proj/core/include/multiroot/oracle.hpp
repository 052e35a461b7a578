#ifndef MULTIROOT_ORACLE_HPP
#define MULTIROOT_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <multiroot/ehrlich.hpp>
#include <multiroot/poly.hpp>
#include <multiroot/real.hpp>

namespace multiroot
{

struct NewtonTrace {
    std::vector<Real> iterates;
    std::vector<Real> corrections;
    bool converged = false;
};

// x <- x - a f(x)/f'(x) from a single starting point. Stops when the
// correction is within tolerance or f(x) is below its rounding-error bound.
// Throws Error(degenerate_derivative) when f' vanishes at an iterate.
[[nodiscard]] NewtonTrace newton_multiplicity_solve(const PolyFamily &poly, int multiplicity, const Real &initial,
                                                    const SolveSettings &settings);

struct RootCheck {
    std::size_t index = 0;
    Real root;
    int multiplicity = 0;
    // |f^(j)(r)| / magnitude_j(r) for j < multiplicity, then |f^(a)(r)| over
    // the value the claimed factorization predicts.
    std::vector<Real> ratios;
    bool passed = false;
    // First derivative order that violated its requirement.
    std::optional<std::size_t> failed_order;
};

struct VerificationOutcome {
    std::vector<Real> residuals;
    std::vector<std::vector<Real>> derivative_checks;
    std::vector<RootCheck> details;
    bool passed = false;
};

// For each claimed root r of multiplicity a: f^(j)(r) is negligible for
// j < a relative to the absolute-term magnitude of that derivative at r, and
// f^(a)(r) is not negligible relative to a! * scale * prod_{j != i} g(r - x_j)^(alpha_j),
// the value the claimed factorization predicts. Derivatives come from the
// coefficient form.
[[nodiscard]] VerificationOutcome verify_roots(const PolyFamily &poly, const RootConfiguration &claimed,
                                               const Real &tolerance);

// One classical simple-root Ehrlich step in Newton-correction form,
// x_i - N_i / (1 - N_i sum_{j != i} 1/(x_i - x_j)) with N_i = f(x_i)/f'(x_i).
// Algebraic family only.
[[nodiscard]] std::vector<Real> classical_ehrlich_step(const PolyFamily &poly, std::span<const Real> approximations,
                                                       SweepMode mode);

} // namespace multiroot

#endif
