#include "conint/lotka_volterra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "conint/stable_g.hpp"

namespace conint {

void LVSystem::validate() const {
    if (n == 0) throw std::invalid_argument("LVSystem: n must be >= 1");
    if (interaction.size() != n * n)
        throw std::invalid_argument("LVSystem: interaction matrix must be n x n");
    if (equilibrium.size() != n)
        throw std::invalid_argument("LVSystem: equilibrium vector must have length n");
    for (double xi : equilibrium)
        if (!(xi > 0.0)) throw std::invalid_argument("LVSystem: equilibrium entries must be > 0");
    if (!invariant_weights.empty()) {
        if (invariant_weights.size() != n)
            throw std::invalid_argument("LVSystem: invariant weights must have length n");
        if (!lv_check_compatibility(interaction, invariant_weights, n))
            throw std::invalid_argument("LVSystem: D*A is not skew-symmetric (tolerance 1e-12)");
    }
}

bool lv_check_compatibility(std::span<const double> interaction_rowmajor,
                            std::span<const double> weights_diag, std::size_t n) {
    if (interaction_rowmajor.size() != n * n || weights_diag.size() != n)
        throw std::invalid_argument("lv_check_compatibility: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // (DA + A^T D)_ij = d_i a_ij + a_ji d_j
            const double s = weights_diag[i] * interaction_rowmajor[i * n + j] +
                             interaction_rowmajor[j * n + i] * weights_diag[j];
            worst = std::max(worst, std::abs(s));
        }
    return worst <= 1e-12;
}

namespace {

void require_positive(const PhaseState& x, const char* who) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] > 0.0))
            throw std::domain_error(std::string(who) + ": population " + std::to_string(i) +
                                    " is nonpositive (" + std::to_string(x[i]) + ")");
}

}  // namespace

PhaseState lv_rhs(const LVSystem& sys, const PhaseState& x) {
    require_dim(x, sys.n, "lv_rhs");
    require_positive(x, "lv_rhs");
    const std::size_t n = sys.n;
    PhaseState out(n);
    detail::parallel_for(sys.kernel, n, [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += sys.a(i, j) * (x[j] - sys.equilibrium[j]);
        out[i] = x[i] * acc;
    });
    return out;
}

double lv_conserved_V(const LVSystem& sys, const PhaseState& x) {
    if (!sys.has_invariant())
        throw std::logic_error("lv_conserved_V: system has no invariant weights D");
    require_dim(x, sys.n, "lv_conserved_V");
    require_positive(x, "lv_conserved_V");
    double v = 0.0;
    for (std::size_t i = 0; i < sys.n; ++i)
        v += sys.invariant_weights[i] * (sys.equilibrium[i] * std::log(x[i]) - x[i]);
    return v;
}

PhaseState lv_dmm_map(const LVSystem& sys, MeanVariant variant, const PhaseState& x_k,
                      const PhaseState& x_guess, double tau) {
    const std::size_t n = sys.n;
    require_dim(x_k, n, "lv_dmm_map");
    require_dim(x_guess, n, "lv_dmm_map");
    require_positive(x_k, "lv_dmm_map");
    require_positive(x_guess, "lv_dmm_map");

    // x^tau and the bracket 1 - xi_j/x_j^k g(x_j^guess/x_j^k) are shared by
    // every row; precompute once.
    PhaseState mean(n), bracket(n);
    for (std::size_t j = 0; j < n; ++j) {
        mean[j] = variant == MeanVariant::Geometric ? std::sqrt(x_k[j] * x_guess[j])
                                                    : 0.5 * (x_k[j] + x_guess[j]);
        bracket[j] = 1.0 - sys.equilibrium[j] * symmetric_log_ratio(x_k[j], x_guess[j]);
    }

    PhaseState out(n);
    detail::parallel_for(sys.kernel, n, [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += sys.a(i, j) * mean[j] * bracket[j];
        out[i] = x_k[i] + tau * mean[i] * acc;
    });
    return out;
}

LVDmmScheme::LVDmmScheme(LVSystem sys, MeanVariant variant)
    : sys_(std::move(sys)), variant_(variant) {
    sys_.validate();
}

PhaseState LVDmmScheme::rhs(double, const PhaseState& x) const { return lv_rhs(sys_, x); }

PhaseState LVDmmScheme::fixed_point_map(const PhaseState& guess, const PhaseState& x_k,
                                        double, double tau) const {
    return lv_dmm_map(sys_, variant_, x_k, guess, tau);
}

}  // namespace conint
