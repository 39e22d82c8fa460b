#include "conint/reference_methods.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace conint {

PhaseState midpoint_map(const RhsFn& rhs, const PhaseState& x_k, const PhaseState& x_guess,
                        double t_k, double tau) {
    PhaseState mid(x_k.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (x_k[i] + x_guess[i]);
    PhaseState f = rhs(t_k + 0.5 * tau, mid);
    PhaseState out(x_k.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x_k[i] + tau * f[i];
    return out;
}

PhaseState rk4_step(const RhsFn& rhs, const PhaseState& x_k, double t_k, double tau) {
    const std::size_t n = x_k.size();
    auto stage = [&](int index, double t, const PhaseState& x) {
        try {
            return rhs(t, x);
        } catch (const std::domain_error& e) {
            throw std::domain_error("rk4 stage " + std::to_string(index) + ": " + e.what());
        }
    };

    PhaseState k1 = stage(1, t_k, x_k);
    PhaseState x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = x_k[i] + 0.5 * tau * k1[i];
    PhaseState k2 = stage(2, t_k + 0.5 * tau, x);
    for (std::size_t i = 0; i < n; ++i) x[i] = x_k[i] + 0.5 * tau * k2[i];
    PhaseState k3 = stage(3, t_k + 0.5 * tau, x);
    for (std::size_t i = 0; i < n; ++i) x[i] = x_k[i] + tau * k3[i];
    PhaseState k4 = stage(4, t_k + tau, x);

    PhaseState out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x_k[i] + tau / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

ImplicitMidpointScheme::ImplicitMidpointScheme(std::size_t dim, RhsFn rhs)
    : dim_(dim), rhs_(std::move(rhs)) {}

PhaseState ImplicitMidpointScheme::fixed_point_map(const PhaseState& guess,
                                                   const PhaseState& x_k, double t_k,
                                                   double tau) const {
    return midpoint_map(rhs_, x_k, guess, t_k, tau);
}

ExplicitRk4Scheme::ExplicitRk4Scheme(std::size_t dim, RhsFn rhs)
    : dim_(dim), rhs_(std::move(rhs)) {}

PhaseState ExplicitRk4Scheme::fixed_point_map(const PhaseState&, const PhaseState& x_k,
                                              double t_k, double tau) const {
    return rk4_step(rhs_, x_k, t_k, tau);
}

}  // namespace conint
