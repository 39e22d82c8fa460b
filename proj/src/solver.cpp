#include "conint/scheme.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace conint {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

PhaseState OneStepScheme::residual(const PhaseState& guess, const PhaseState& x_k,
                                   double t_k, double tau) const {
    PhaseState r = fixed_point_map(guess, x_k, t_k, tau);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= guess[i];
    return r;
}

void SolverConfig::validate() const {
    if (!(abs_tolerance > 0.0))
        throw std::invalid_argument("SolverConfig: abs_tolerance must be > 0");
    if (max_iterations < 1)
        throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
    if (guess_strategy.kind == GuessStrategy::Kind::PerturbedPrevious &&
        !(guess_strategy.rel_magnitude >= 0.0))
        throw std::invalid_argument("SolverConfig: rel_magnitude must be >= 0");
}

double uniform_signed_unit(std::mt19937_64& rng) {
    // 53 random bits -> [0,1), then stretch to [-1,1)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

PhaseState make_initial_guess(const GuessStrategy& strategy, const PhaseState& x_k,
                              const PhaseState& rhs_at_xk, double tau,
                              std::mt19937_64& rng) {
    require_finite(rhs_at_xk, "make_initial_guess");
    PhaseState guess = x_k;
    switch (strategy.kind) {
        case GuessStrategy::Kind::ForwardEuler:
            for (std::size_t i = 0; i < guess.size(); ++i) guess[i] += tau * rhs_at_xk[i];
            break;
        case GuessStrategy::Kind::PreviousSolution:
            break;
        case GuessStrategy::Kind::PerturbedPrevious:
            for (double& g : guess) g *= 1.0 + strategy.rel_magnitude * uniform_signed_unit(rng);
            break;
    }
    return guess;
}

PhaseState make_initial_guess(const GuessStrategy& strategy, const PhaseState& x_k,
                              const PhaseState& rhs_at_xk, double tau) {
    std::mt19937_64 rng(strategy.seed);
    return make_initial_guess(strategy, x_k, rhs_at_xk, tau, rng);
}

namespace {

StepResult iterate_to_fixed_point(const OneStepScheme& scheme, const PhaseState& x_k,
                                  double t_k, double tau, const SolverConfig& config,
                                  PhaseState x) {
    double diff = 0.0;
    for (int it = 1; it <= config.max_iterations; ++it) {
        PhaseState next = scheme.fixed_point_map(x, x_k, t_k, tau);
        if (!all_finite(next))
            throw DivergenceError("fixed-point iteration diverged (NaN/Inf) after " +
                                      std::to_string(it) + " iterations",
                                  it);
        diff = max_abs_diff(next, x);
        x = std::move(next);
        if (diff <= config.abs_tolerance) return {std::move(x), it, diff};
    }
    throw NonconvergenceError("fixed-point iteration did not reach tolerance " +
                                  sci(config.abs_tolerance) + " within " +
                                  std::to_string(config.max_iterations) +
                                  " iterations (last residual " + sci(diff) + ")",
                              config.max_iterations, diff);
}

}  // namespace

StepResult solve_step(const OneStepScheme& scheme, const PhaseState& x_k, double t_k,
                      double tau, const SolverConfig& config, std::mt19937_64& rng) {
    config.validate();
    require_dim(x_k, scheme.dim(), "solve_step");
    require_finite(x_k, "solve_step");

    if (scheme.is_explicit()) {
        PhaseState next = scheme.fixed_point_map(x_k, x_k, t_k, tau);
        if (!all_finite(next)) throw DivergenceError("explicit step produced NaN/Inf", 1);
        return {std::move(next), 1, 0.0};
    }

    PhaseState f_k = scheme.rhs(t_k, x_k);
    PhaseState guess = make_initial_guess(config.guess_strategy, x_k, f_k, tau, rng);
    try {
        return iterate_to_fixed_point(scheme, x_k, t_k, tau, config, std::move(guess));
    } catch (const SolverError&) {
        throw;
    } catch (const std::domain_error&) {
        // One retry from a half-damped Euler guess; keeps geometric-mean maps
        // away from the nonpositive region a full Euler step can land in.
        PhaseState damped = x_k;
        for (std::size_t i = 0; i < damped.size(); ++i) damped[i] += 0.5 * tau * f_k[i];
        return iterate_to_fixed_point(scheme, x_k, t_k, tau, config, std::move(damped));
    }
}

StepResult solve_step(const OneStepScheme& scheme, const PhaseState& x_k, double t_k,
                      double tau, const SolverConfig& config) {
    std::mt19937_64 rng(config.guess_strategy.seed);
    return solve_step(scheme, x_k, t_k, tau, config, rng);
}

TimeSeries integrate(const OneStepScheme& scheme, const PhaseState& x0, double t0,
                     double tau, std::int64_t n_steps, const SolverConfig& config) {
    config.validate();
    if (n_steps < 0) throw std::invalid_argument("integrate: n_steps must be >= 0");
    require_dim(x0, scheme.dim(), "integrate");
    require_finite(x0, "integrate");

    TimeSeries series;
    series.t0 = t0;
    series.tau = tau;
    series.records.reserve(static_cast<std::size_t>(n_steps) + 1);
    series.records.push_back({t0, x0, 0, 0.0});

    std::mt19937_64 rng(config.guess_strategy.seed);
    for (std::int64_t k = 0; k < n_steps; ++k) {
        const double t_k = t0 + static_cast<double>(k) * tau;
        try {
            StepResult r = solve_step(scheme, series.records.back().state, t_k, tau, config, rng);
            series.records.push_back({t0 + static_cast<double>(k + 1) * tau, std::move(r.state),
                                      r.iterations, r.residual_norm});
        } catch (const NonconvergenceError& e) {
            throw NonconvergenceError("step " + std::to_string(k + 1) + ": " + e.what(),
                                      e.iterations, e.residual_norm);
        } catch (const DivergenceError& e) {
            throw DivergenceError("step " + std::to_string(k + 1) + ": " + e.what(),
                                  e.iterations);
        } catch (const std::domain_error& e) {
            throw std::domain_error("step " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return series;
}

}  // namespace conint
