#pragma once

#include <vector>

#include "balfilt/states.hpp"

namespace balfilt::flow {

/// Numerical failure inside the integrator (step underflow, overflow of the
/// potential terms, residual undefined on the tail).
struct flow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
    double tau_reached = 0.0;
    flow_error(const std::string& msg, double tau) : std::runtime_error(msg), tau_reached(tau) {}
};

/// Double-precision image of a semistable state plus integration settings.
/// Exactness ends here: the state crosses the boundary once, by exact-to-
/// float conversion of characters, polarisation and the inverse Gram matrix.
struct FlowProblem {
    std::size_t dim = 0;
    std::vector<std::vector<double>> characters;
    std::vector<double> polarisation;
    std::vector<std::vector<double>> gram;
    std::vector<double> gram_inverse;  // row-major dim×dim
    std::vector<double> start;

    double tau_min = 2.0;
    double tau_max = 1000.0;
    double rtol = 1e-9;
    double atol = 1e-11;

    /// Rejects non-semistable states (their potential is unbounded below).
    static FlowProblem from_state(const PolarisedState& s, std::vector<double> start);
};

struct FlowVerdict {
    double tail_max = 0.0;    // max ‖z‖∞ over the tail window
    double drift = 0.0;       // slope of ‖z‖∞ per log10(τ) over the last decade
    bool bounded = false;
    double box = 5.0;
    double drift_tol = 1e-2;
    double tail_fraction = 0.5;
};

struct FlowResult {
    std::vector<double> tau;
    std::vector<std::vector<double>> trajectory;  // h(τ) per grid point
    std::vector<std::vector<double>> residual;    // z(τ); empty before residual_check
    FlowVerdict verdict;
};

/// f(ξ) = Σ_χ e^⟨ξ,χ⟩ − ⟨ξ, a⟩, evaluated with a shifted exponent so large
/// arguments overflow only when the true value does.
double potential(const FlowProblem& p, const std::vector<double>& xi);

/// Metric gradient G⁻¹(Σ_χ e^⟨ξ,χ⟩·χ − a).
std::vector<double> gradient(const FlowProblem& p, const std::vector<double>& xi);

/// Integrates dh/dτ = −e^τ·∇f(h) in τ = log t with an adaptive
/// Dormand-Prince 5(4) pair. Near a stationary point the right-hand side is
/// treated as zero once it falls below the round-off floor of its own terms,
/// which lets converged (polystable) trajectories coast to τ_max.
/// Deterministic for fixed input and tolerances.
FlowResult integrate(const FlowProblem& p);

/// Attaches the iterated-logarithm residual z(τ) = h(τ) + τ·ν₁ + log(τ)·ν₂
/// + … for the given prediction and renders the boundedness verdict: tail
/// max within the box and tail drift indistinguishable from zero.
FlowResult residual_check(const FlowProblem& p, const std::vector<std::vector<double>>& prediction,
                          const FlowVerdict& settings = {});

/// Exact-to-float conversion of a sequential filtration.
std::vector<std::vector<double>> prediction_from(const SequentialFiltration& seq);

/// One residual_check per start, through the parallel loop; results are
/// slot-indexed and independent of scheduling.
std::vector<FlowResult> run_batch(const PolarisedState& s,
                                  const std::vector<std::vector<double>>& starts,
                                  const std::vector<std::vector<double>>& prediction,
                                  double tau_min, double tau_max, double rtol, double atol,
                                  const FlowVerdict& settings);

}  // namespace balfilt::flow
