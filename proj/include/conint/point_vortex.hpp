#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "conint/kernel.hpp"
#include "conint/scheme.hpp"

namespace conint {

// n point vortices in the plane.  Phase packing: [x_1..x_n, y_1..y_n].
struct PlanarVortexSystem {
    std::size_t n = 0;
    std::vector<double> gamma;  // circulation strengths, nonzero
    double singularity_threshold = 1e-12;  // pair distance below this is a hard error
    Kernel kernel = Kernel::Auto;

    std::size_t phase_dim() const { return 2 * n; }
    void validate() const;
};

// n point vortices on the unit sphere.  Phase packing: [x_1 y_1 z_1, ...].
// States carry unit 3-vectors (| |x_i| - 1 | <= 1e-10); the schemes conserve
// the norms, so nothing here renormalizes.
struct SphereVortexSystem {
    std::size_t n = 0;
    std::vector<double> gamma;
    double singularity_threshold = 1e-14;  // on 1 - x_i . x_j
    Kernel kernel = Kernel::Auto;

    std::size_t phase_dim() const { return 3 * n; }
    void validate() const;
};

// Signed pair differences used by the planar kernels; antisymmetric in (i,j).
struct PlanarPairDelta {
    double dx;  // x_i - x_j
    double dy;  // y_i - y_j
    double r2;  // dx^2 + dy^2
};
PlanarPairDelta planar_pair_delta(const PhaseState& state, std::size_t n, std::size_t i,
                                  std::size_t j);

PhaseState plane_rhs(const PlanarVortexSystem& sys, const PhaseState& state);

struct PlanarInvariants {
    std::array<double, 2> P{};
    double L = 0.0;
    double H = 0.0;
};
PlanarInvariants plane_conserved(const PlanarVortexSystem& sys, const PhaseState& state);

// Conservative fixed-point map; the g-factor is evaluated through
// symmetric_log_ratio on the squared radii so the scheme's symmetry holds to
// the ulp.
PhaseState plane_dmm_map(const PlanarVortexSystem& sys, const PhaseState& state_k,
                         const PhaseState& state_guess, double tau);

PhaseState sphere_rhs(const SphereVortexSystem& sys, const PhaseState& state);

struct SphereInvariants {
    std::array<double, 3> P{};  // Noether momentum, sum Gamma_i x_i
    double H = 0.0;
};
SphereInvariants sphere_conserved(const SphereVortexSystem& sys, const PhaseState& state);

PhaseState sphere_dmm_map(const SphereVortexSystem& sys, const PhaseState& state_k,
                          const PhaseState& state_guess, double tau);

// max_i | |x_i| - 1 |, the unit-norm defect of a sphere state.
double sphere_max_norm_defect(const PhaseState& state);

struct VortexEnsemble {
    PhaseState state;
    std::vector<double> gamma;
};

// Uniform positions on [-w, w]^2, resampled so no pair is closer than
// min_dist; strengths uniform on [-strength_scale, strength_scale].
// Deterministic per seed.  Throws when 10^6 candidate draws are exhausted.
VortexEnsemble sample_plane_vortices(std::size_t n, double box_half_width, double min_dist,
                                     double strength_scale, std::uint64_t seed);

// Uniform positions on the unit sphere (Marsaglia disk rejection), chordal
// min-distance filter, strengths as in the planar sampler.
VortexEnsemble sample_sphere_vortices(std::size_t n, double min_dist, double strength_scale,
                                      std::uint64_t seed);

class PlaneVortexDmmScheme : public OneStepScheme {
public:
    explicit PlaneVortexDmmScheme(PlanarVortexSystem sys);

    std::size_t dim() const override { return sys_.phase_dim(); }
    PhaseState rhs(double t, const PhaseState& x) const override;
    PhaseState fixed_point_map(const PhaseState& guess, const PhaseState& x_k, double t_k,
                               double tau) const override;
    bool is_symmetric() const noexcept override { return true; }
    bool is_explicit() const noexcept override { return false; }

    const PlanarVortexSystem& system() const { return sys_; }

private:
    PlanarVortexSystem sys_;
};

class SphereVortexDmmScheme : public OneStepScheme {
public:
    explicit SphereVortexDmmScheme(SphereVortexSystem sys);

    std::size_t dim() const override { return sys_.phase_dim(); }
    PhaseState rhs(double t, const PhaseState& x) const override;
    PhaseState fixed_point_map(const PhaseState& guess, const PhaseState& x_k, double t_k,
                               double tau) const override;
    bool is_symmetric() const noexcept override { return true; }
    bool is_explicit() const noexcept override { return false; }

    const SphereVortexSystem& system() const { return sys_; }

private:
    SphereVortexSystem sys_;
};

}  // namespace conint
