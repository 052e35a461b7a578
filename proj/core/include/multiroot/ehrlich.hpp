#ifndef MULTIROOT_EHRLICH_HPP
#define MULTIROOT_EHRLICH_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <multiroot/convergence.hpp>
#include <multiroot/poly.hpp>
#include <multiroot/real.hpp>

namespace multiroot
{

enum class SweepMode {
    // Every coupling term reads the incoming approximation vector.
    simultaneous,
    // Index j < i reads the value already updated in this sweep.
    sequential,
};

enum class Termination { converged, max_iterations, collision, diverged, nonfinite };

[[nodiscard]] const char *to_string(SweepMode mode) noexcept;
[[nodiscard]] SweepMode sweep_mode_from_string(std::string_view name);
[[nodiscard]] const char *to_string(Termination t) noexcept;
[[nodiscard]] Termination termination_from_string(std::string_view name);

struct SolveSettings {
    long precision_bits = 53;
    int max_iterations = 50;
    // Defaults to 2^-(precision_bits - 8).
    std::optional<Real> correction_tolerance;
    SweepMode sweep = SweepMode::simultaneous;
    // Exact roots, when known; enables per-iteration errors in the trace.
    std::optional<std::vector<Real>> truth;

    [[nodiscard]] Real tolerance() const;
};

struct TraceRecord {
    std::size_t k = 0;
    std::vector<Real> approximations;
    // f(x_i) at these approximations.
    std::vector<Real> residuals;
    // |x_i^[k] - x_i^[k-1]|; zero for the initial record.
    std::vector<Real> corrections;
    // |x_i^[k] - x_i^*| when the exact roots are known, otherwise empty.
    std::vector<Real> errors;
    // |f(x_i)| within the rounding-error bound of its evaluation: round-off
    // dominates and the next sweep leaves x_i in place.
    std::vector<bool> settled;
};

struct IterationState {
    std::vector<Real> approximations;
    std::size_t k = 0;
    std::vector<Real> corrections;
    // trace.size() == k + 1; trace.front() is the initial state.
    std::vector<TraceRecord> trace;
};

struct SolveReport {
    std::vector<Real> final;
    std::size_t iterations_used = 0;
    Termination termination = Termination::max_iterations;
    std::vector<TraceRecord> trace;
    std::optional<OrderEstimate> estimated_order;
    // Reason for a non-converged termination.
    std::string message;
};

// Builds record 0 for the given starting approximations.
[[nodiscard]] IterationState initial_state(const PolyFamily &poly, std::vector<Real> initial,
                                           const SolveSettings &settings);

// One sweep of x_i <- x_i - a_i f(x_i) / (f'(x_i) - f(x_i) Q_i'(x_i)/Q_i(x_i)).
// An approximation whose residual is within the rounding-error bound of its
// evaluation is left in place.
//
// Throws CollisionError, DegenerateDenominatorError or Error(nonfinite).
[[nodiscard]] IterationState step(const PolyFamily &poly, std::span<const int> multiplicities,
                                  const IterationState &state, const SolveSettings &settings);

// Iterates step() until every correction is <= the tolerance, a step fails or
// max_iterations is reached. Step failures become the termination reason.
// Throws Error(invalid_input) when the initial vector does not fit the problem.
[[nodiscard]] SolveReport solve(const PolyFamily &poly, std::span<const int> multiplicities,
                                std::vector<Real> initial, const SolveSettings &settings);

// Per-iteration error proxy used for order estimation: max_i error when the
// exact roots are known, otherwise max_i correction (shifted by one index).
[[nodiscard]] std::vector<Real> error_sequence(std::span<const TraceRecord> trace);

// estimate_order over error_sequence(trace), cut before the first entry that
// was produced from a record holding a settled approximation.
[[nodiscard]] OrderEstimate estimate_trace_order(std::span<const TraceRecord> trace, const Real &floor);

// Q''(x_i)/Q'(x_i) - 2 Q_i'(x_i)/Q_i(x_i) for Q = prod_j (x - x_j), computed
// from explicitly expanded coefficient vectors. Vanishes for simple knots.
[[nodiscard]] Real lemma1_residual(std::span<const Real> simple_roots, std::size_t i);

} // namespace multiroot

#endif
