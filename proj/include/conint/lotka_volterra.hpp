#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "conint/kernel.hpp"
#include "conint/scheme.hpp"

namespace conint {

// n-species Lotka-Volterra system
//   xdot_i = x_i * sum_j a_ij (x_j - xi_j),   x_i > 0.
// If a diagonal D with D*A skew-symmetric is known, the system conserves
//   V(x) = sum_i d_i (xi_i log x_i - x_i).
struct LVSystem {
    std::size_t n = 0;
    std::vector<double> interaction;        // A, row-major n x n
    std::vector<double> equilibrium;        // xi, all entries > 0
    std::vector<double> invariant_weights;  // D diagonal; empty when unknown
    Kernel kernel = Kernel::Auto;

    double a(std::size_t i, std::size_t j) const { return interaction[i * n + j]; }
    bool has_invariant() const { return !invariant_weights.empty(); }
    void validate() const;
};

enum class MeanVariant { Arithmetic, Geometric };

// max |(DA + A^T D)_ij| <= 1e-12, i.e. D*A skew-symmetric up to entry noise.
bool lv_check_compatibility(std::span<const double> interaction_rowmajor,
                            std::span<const double> weights_diag, std::size_t n);

PhaseState lv_rhs(const LVSystem& sys, const PhaseState& x);

double lv_conserved_V(const LVSystem& sys, const PhaseState& x);

// Fixed-point map of the conservative scheme: component i maps to
//   x_i^k + tau * x_i^tau * sum_j a_ij x_j^tau (1 - xi_j * slr(x_j^k, x_j^guess))
// with x^tau the arithmetic or geometric mean of x^k and the guess and
// slr the symmetric divided difference of log.
PhaseState lv_dmm_map(const LVSystem& sys, MeanVariant variant, const PhaseState& x_k,
                      const PhaseState& x_guess, double tau);

class LVDmmScheme : public OneStepScheme {
public:
    LVDmmScheme(LVSystem sys, MeanVariant variant);

    std::size_t dim() const override { return sys_.n; }
    PhaseState rhs(double t, const PhaseState& x) const override;
    PhaseState fixed_point_map(const PhaseState& guess, const PhaseState& x_k, double t_k,
                               double tau) const override;
    bool is_symmetric() const noexcept override { return true; }
    bool is_explicit() const noexcept override { return false; }

    const LVSystem& system() const { return sys_; }
    MeanVariant variant() const { return variant_; }

private:
    LVSystem sys_;
    MeanVariant variant_;
};

}  // namespace conint
