#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "conint/phase_state.hpp"

namespace conint {

// One-step method in fixed-point form.  A step x^k -> x^{k+1} solves
//   x^{k+1} = fixed_point_map(x^{k+1}, x^k, t^k, tau)
// by substitution; explicit methods ignore the guess argument and a single
// evaluation is the step.
class OneStepScheme {
public:
    virtual ~OneStepScheme() = default;

    virtual std::size_t dim() const = 0;

    // Right-hand side f(t, x) of the underlying ODE (used for Euler guesses
    // and consistency checks).
    virtual PhaseState rhs(double t, const PhaseState& x) const = 0;

    virtual PhaseState fixed_point_map(const PhaseState& guess, const PhaseState& x_k,
                                       double t_k, double tau) const = 0;

    // Defect of the fixed-point equation at `guess`: map(guess) - guess.
    PhaseState residual(const PhaseState& guess, const PhaseState& x_k, double t_k,
                        double tau) const;

    virtual bool is_symmetric() const noexcept = 0;
    virtual bool is_explicit() const noexcept = 0;
};

struct GuessStrategy {
    enum class Kind { ForwardEuler, PreviousSolution, PerturbedPrevious };

    Kind kind = Kind::ForwardEuler;
    double rel_magnitude = 1e-7;   // PerturbedPrevious only
    std::uint64_t seed = 0;        // PerturbedPrevious only

    static GuessStrategy forward_euler() { return {}; }
    static GuessStrategy previous_solution() { return {Kind::PreviousSolution, 0.0, 0}; }
    static GuessStrategy perturbed_previous(double rel_magnitude = 1e-7,
                                            std::uint64_t seed = 0) {
        return {Kind::PerturbedPrevious, rel_magnitude, seed};
    }
};

struct SolverConfig {
    double abs_tolerance = 1e-14;  // max-norm of successive iterates
    int max_iterations = 200;
    GuessStrategy guess_strategy{};

    void validate() const;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fixed-point iteration ran out of iterations.
class NonconvergenceError : public SolverError {
public:
    NonconvergenceError(const std::string& msg, int iterations, double residual_norm)
        : SolverError(msg), iterations(iterations), residual_norm(residual_norm) {}
    int iterations;
    double residual_norm;  // last successive-iterate max-norm
};

// An iterate picked up NaN/Inf.
class DivergenceError : public SolverError {
public:
    DivergenceError(const std::string& msg, int iterations)
        : SolverError(msg), iterations(iterations) {}
    int iterations;
};

struct StepRecord {
    double t = 0.0;
    PhaseState state;
    int iterations = 0;
    double residual_norm = 0.0;
};

struct TimeSeries {
    double t0 = 0.0;
    double tau = 0.0;
    std::vector<StepRecord> records;  // records[k].t == t0 + k*tau exactly

    std::size_t n_steps() const { return records.empty() ? 0 : records.size() - 1; }
    const PhaseState& back_state() const { return records.back().state; }
};

// Uniform [-1, 1] draw with platform-independent bit mapping.
double uniform_signed_unit(std::mt19937_64& rng);

PhaseState make_initial_guess(const GuessStrategy& strategy, const PhaseState& x_k,
                              const PhaseState& rhs_at_xk, double tau,
                              std::mt19937_64& rng);

// Convenience overload; seeds a fresh generator from strategy.seed, so the
// same strategy yields the same guess every call.
PhaseState make_initial_guess(const GuessStrategy& strategy, const PhaseState& x_k,
                              const PhaseState& rhs_at_xk, double tau);

struct StepResult {
    PhaseState state;
    int iterations = 0;
    double residual_norm = 0.0;
};

// One step of the scheme from x_k.  Implicit schemes iterate
// x <- fixed_point_map(x, x_k, t_k, tau) from the configured guess until the
// max-norm of successive iterates drops to abs_tolerance; if the map throws a
// domain error mid-iteration the solve restarts once from a half-damped Euler
// guess before giving up.  Explicit schemes evaluate the map once.
StepResult solve_step(const OneStepScheme& scheme, const PhaseState& x_k, double t_k,
                      double tau, const SolverConfig& config, std::mt19937_64& rng);

StepResult solve_step(const OneStepScheme& scheme, const PhaseState& x_k, double t_k,
                      double tau, const SolverConfig& config);

// Drives n_steps of solve_step; record 0 is (t0, x0) and record k sits at
// t0 + k*tau (computed as such, not accumulated).  Deterministic for a fixed
// config, including the perturbation seed.
TimeSeries integrate(const OneStepScheme& scheme, const PhaseState& x0, double t0,
                     double tau, std::int64_t n_steps, const SolverConfig& config);

}  // namespace conint
