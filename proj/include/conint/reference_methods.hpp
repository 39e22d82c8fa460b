#pragma once

#include <functional>

#include "conint/scheme.hpp"

namespace conint {

enum class ReferenceMethod { ImplicitMidpoint, ExplicitRK4, StormerVerlet };

using RhsFn = std::function<PhaseState(double t, const PhaseState& x)>;

// Fixed-point map of the implicit midpoint rule:
//   x_k + tau * f(t_k + tau/2, (x_k + guess)/2)
PhaseState midpoint_map(const RhsFn& rhs, const PhaseState& x_k, const PhaseState& x_guess,
                        double t_k, double tau);

// Classical explicit RK4 (stages at t, t+tau/2, t+tau/2, t+tau; weights
// 1/6, 1/3, 1/3, 1/6).  Domain errors from a stage are rethrown with the
// stage index attached.
PhaseState rk4_step(const RhsFn& rhs, const PhaseState& x_k, double t_k, double tau);

class ImplicitMidpointScheme : public OneStepScheme {
public:
    ImplicitMidpointScheme(std::size_t dim, RhsFn rhs);

    std::size_t dim() const override { return dim_; }
    PhaseState rhs(double t, const PhaseState& x) const override { return rhs_(t, x); }
    PhaseState fixed_point_map(const PhaseState& guess, const PhaseState& x_k, double t_k,
                               double tau) const override;
    bool is_symmetric() const noexcept override { return true; }
    bool is_explicit() const noexcept override { return false; }

private:
    std::size_t dim_;
    RhsFn rhs_;
};

class ExplicitRk4Scheme : public OneStepScheme {
public:
    ExplicitRk4Scheme(std::size_t dim, RhsFn rhs);

    std::size_t dim() const override { return dim_; }
    PhaseState rhs(double t, const PhaseState& x) const override { return rhs_(t, x); }
    PhaseState fixed_point_map(const PhaseState& guess, const PhaseState& x_k, double t_k,
                               double tau) const override;
    bool is_symmetric() const noexcept override { return false; }
    bool is_explicit() const noexcept override { return true; }

private:
    std::size_t dim_;
    RhsFn rhs_;
};

}  // namespace conint
