#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "conint/kernel.hpp"
#include "conint/scheme.hpp"

namespace conint {

struct GravityPotential {
    double G = 1.0;  // attractive pair potential -G m_i m_j / q
};

struct LennardJonesPotential {
    double epsilon = 1.0;  // well depth
    double sigma = 1.0;    // zero-crossing distance
};

using RadialPotential = std::variant<GravityPotential, LennardJonesPotential>;

// n point masses in 2 or 3 dimensions with a pairwise radial potential.
// Phase packing: all positions, then all momenta (n*dim each).
struct NBodySystem {
    std::size_t n = 0;
    int dim = 3;
    std::vector<double> masses;
    RadialPotential potential = GravityPotential{};
    double collision_threshold = 1e-12;  // pair distance below this is a hard error
    Kernel kernel = Kernel::Auto;

    std::size_t phase_dim() const { return 2 * n * static_cast<std::size_t>(dim); }
    double total_mass() const;
    void validate() const;
};

// How nbody_rhs accumulates forces.  PerBody sums j ascending for each i
// (the default; deterministic and parallelizable).  PairSymmetric walks pairs
// i<j once and applies the exact negation to both bodies, so a two-body force
// sum cancels identically.
enum class ForceAccumulation { PerBody, PairSymmetric };

// Analytic pair-force magnitude V'(q).
double radial_potential_derivative(const RadialPotential& pot, double m_i, double m_j,
                                   double q);
// Pair potential value V(q).
double radial_potential_value(const RadialPotential& pot, double m_i, double m_j, double q);

// Symmetric divided difference (V(q1) - V(q0))/(q1 - q0) in closed form.
// Gravity: G m_i m_j / (q0 q1).
double gravity_divided_difference(double G, double m_i, double m_j, double q0, double q1);
// Lennard-Jones: the two power sums of the closed-form quotient; evaluated in
// a canonical argument order so the result is bitwise symmetric under swap.
double lj_divided_difference(double epsilon, double sigma, double q0, double q1);

double radial_divided_difference(const RadialPotential& pot, double m_i, double m_j,
                                 double q0, double q1);

PhaseState nbody_rhs(const NBodySystem& sys, const PhaseState& state,
                     ForceAccumulation accumulation = ForceAccumulation::PerBody);

struct NBodyInvariants {
    double H = 0.0;
    std::array<double, 3> P{};  // z component 0 in 2D
    std::array<double, 3> L{};  // only L_z nonzero in 2D
    std::array<double, 3> C{};  // initial center of mass, z component 0 in 2D
};

NBodyInvariants nbody_conserved(const NBodySystem& sys, const PhaseState& state, double t);

// Fixed-point map of the conservative (Greenspan-Labudde) scheme:
//   q_i <- q_i^k + tau * mean(p_i)/m_i
//   p_i <- p_i^k - tau * sum_j dd(q_ij^k, q_ij^guess) * (mean(q_i)-mean(q_j)) / mean(q_ij)
// where mean(q_ij) is the mean of the scalar distances, not the distance of
// the mean positions.
PhaseState nbody_dmm_map(const NBodySystem& sys, const PhaseState& state_k,
                         const PhaseState& state_guess, double tau);

// Kick-drift-kick Stormer-Verlet step.
PhaseState stormer_verlet_step(const NBodySystem& sys, const PhaseState& state, double tau);

class NBodyDmmScheme : public OneStepScheme {
public:
    explicit NBodyDmmScheme(NBodySystem sys);

    std::size_t dim() const override { return sys_.phase_dim(); }
    PhaseState rhs(double t, const PhaseState& x) const override;
    PhaseState fixed_point_map(const PhaseState& guess, const PhaseState& x_k, double t_k,
                               double tau) const override;
    bool is_symmetric() const noexcept override { return true; }
    bool is_explicit() const noexcept override { return false; }

    const NBodySystem& system() const { return sys_; }

private:
    NBodySystem sys_;
};

class StormerVerletScheme : public OneStepScheme {
public:
    explicit StormerVerletScheme(NBodySystem sys);

    std::size_t dim() const override { return sys_.phase_dim(); }
    PhaseState rhs(double t, const PhaseState& x) const override;
    PhaseState fixed_point_map(const PhaseState& guess, const PhaseState& x_k, double t_k,
                               double tau) const override;
    bool is_symmetric() const noexcept override { return true; }
    bool is_explicit() const noexcept override { return true; }

    const NBodySystem& system() const { return sys_; }

private:
    NBodySystem sys_;
};

}  // namespace conint
