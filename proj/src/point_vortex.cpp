#include "conint/point_vortex.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "conint/stable_g.hpp"

namespace conint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr std::int64_t kSamplerBudget = 1'000'000;

void validate_gamma(std::size_t n, const std::vector<double>& gamma, const char* who) {
    if (n == 0) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
    if (gamma.size() != n)
        throw std::invalid_argument(std::string(who) + ": gamma must have length n");
    for (double g : gamma)
        if (g == 0.0 || !std::isfinite(g))
            throw std::invalid_argument(std::string(who) + ": strengths must be nonzero");
}

}  // namespace

void PlanarVortexSystem::validate() const { validate_gamma(n, gamma, "PlanarVortexSystem"); }
void SphereVortexSystem::validate() const { validate_gamma(n, gamma, "SphereVortexSystem"); }

PlanarPairDelta planar_pair_delta(const PhaseState& state, std::size_t n, std::size_t i,
                                  std::size_t j) {
    const double dx = state[i] - state[j];
    const double dy = state[n + i] - state[n + j];
    return {dx, dy, dx * dx + dy * dy};
}

namespace {

inline void check_plane_separation(const PlanarVortexSystem& sys, double r2, std::size_t i,
                                   std::size_t j) {
    if (!(r2 > sys.singularity_threshold * sys.singularity_threshold))
        throw SingularityError("coincident vortices " + std::to_string(i) + " and " +
                                   std::to_string(j),
                               i, j);
}

inline double sphere_dot(const double* a, const double* b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline void check_sphere_separation(const SphereVortexSystem& sys, double h, std::size_t i,
                                    std::size_t j) {
    // h = 1 - x_i . x_j vanishes at coincidence
    if (!(h > sys.singularity_threshold))
        throw SingularityError("coincident sphere vortices " + std::to_string(i) + " and " +
                                   std::to_string(j),
                               i, j);
}

}  // namespace

PhaseState plane_rhs(const PlanarVortexSystem& sys, const PhaseState& state) {
    const std::size_t n = sys.n;
    require_dim(state, sys.phase_dim(), "plane_rhs");
    PhaseState out(sys.phase_dim());
    detail::parallel_for(sys.kernel, n, [&](std::size_t i) {
        double u = 0.0, v = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const PlanarPairDelta d = planar_pair_delta(state, n, i, j);
            check_plane_separation(sys, d.r2, i, j);
            u -= sys.gamma[j] * d.dy / d.r2;
            v += sys.gamma[j] * d.dx / d.r2;
        }
        out[i] = u / kTwoPi;
        out[n + i] = v / kTwoPi;
    });
    return out;
}

PlanarInvariants plane_conserved(const PlanarVortexSystem& sys, const PhaseState& state) {
    const std::size_t n = sys.n;
    require_dim(state, sys.phase_dim(), "plane_conserved");
    PlanarInvariants inv;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = state[i], y = state[n + i];
        inv.P[0] += sys.gamma[i] * x;
        inv.P[1] += sys.gamma[i] * y;
        inv.L += sys.gamma[i] * (x * x + y * y);
    }
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const PlanarPairDelta d = planar_pair_delta(state, n, i, j);
            check_plane_separation(sys, d.r2, i, j);
            h += sys.gamma[i] * sys.gamma[j] * 0.5 * std::log(d.r2);
        }
    inv.H = -h / kTwoPi;
    return inv;
}

PhaseState plane_dmm_map(const PlanarVortexSystem& sys, const PhaseState& state_k,
                         const PhaseState& state_guess, double tau) {
    const std::size_t n = sys.n;
    require_dim(state_k, sys.phase_dim(), "plane_dmm_map");
    require_dim(state_guess, sys.phase_dim(), "plane_dmm_map");
    PhaseState out(sys.phase_dim());
    detail::parallel_for(sys.kernel, n, [&](std::size_t i) {
        double u = 0.0, v = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const PlanarPairDelta dk = planar_pair_delta(state_k, n, i, j);
            const PlanarPairDelta dg = planar_pair_delta(state_guess, n, i, j);
            check_plane_separation(sys, dk.r2, i, j);
            check_plane_separation(sys, dg.r2, i, j);
            // (1/(r_ij^k)^2) g((r^guess/r^k)^2) on squared radii
            const double factor = symmetric_log_ratio(dk.r2, dg.r2);
            const double bdx = 0.5 * (dk.dx + dg.dx);
            const double bdy = 0.5 * (dk.dy + dg.dy);
            u -= sys.gamma[j] * bdy * factor;
            v += sys.gamma[j] * bdx * factor;
        }
        out[i] = state_k[i] + tau * u / kTwoPi;
        out[n + i] = state_k[n + i] + tau * v / kTwoPi;
    });
    return out;
}

PhaseState sphere_rhs(const SphereVortexSystem& sys, const PhaseState& state) {
    const std::size_t n = sys.n;
    require_dim(state, sys.phase_dim(), "sphere_rhs");
    PhaseState out(sys.phase_dim());
    detail::parallel_for(sys.kernel, n, [&](std::size_t i) {
        const double* xi = state.data() + 3 * i;
        double acc[3] = {0.0, 0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* xj = state.data() + 3 * j;
            const double h = 1.0 - sphere_dot(xi, xj);
            check_sphere_separation(sys, h, i, j);
            const double w = sys.gamma[j] / h;
            // x_j x x_i
            acc[0] += w * (xj[1] * xi[2] - xj[2] * xi[1]);
            acc[1] += w * (xj[2] * xi[0] - xj[0] * xi[2]);
            acc[2] += w * (xj[0] * xi[1] - xj[1] * xi[0]);
        }
        out[3 * i] = acc[0] / kFourPi;
        out[3 * i + 1] = acc[1] / kFourPi;
        out[3 * i + 2] = acc[2] / kFourPi;
    });
    return out;
}

SphereInvariants sphere_conserved(const SphereVortexSystem& sys, const PhaseState& state) {
    const std::size_t n = sys.n;
    require_dim(state, sys.phase_dim(), "sphere_conserved");
    SphereInvariants inv;
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = state.data() + 3 * i;
        inv.P[0] += sys.gamma[i] * xi[0];
        inv.P[1] += sys.gamma[i] * xi[1];
        inv.P[2] += sys.gamma[i] * xi[2];
    }
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double hij = 1.0 - sphere_dot(state.data() + 3 * i, state.data() + 3 * j);
            check_sphere_separation(sys, hij, i, j);
            h += sys.gamma[i] * sys.gamma[j] * std::log(2.0 * hij);
        }
    inv.H = -h / kFourPi;
    return inv;
}

PhaseState sphere_dmm_map(const SphereVortexSystem& sys, const PhaseState& state_k,
                          const PhaseState& state_guess, double tau) {
    const std::size_t n = sys.n;
    require_dim(state_k, sys.phase_dim(), "sphere_dmm_map");
    require_dim(state_guess, sys.phase_dim(), "sphere_dmm_map");
    PhaseState out(sys.phase_dim());
    detail::parallel_for(sys.kernel, n, [&](std::size_t i) {
        const double* xki = state_k.data() + 3 * i;
        const double* xgi = state_guess.data() + 3 * i;
        const double bi[3] = {0.5 * (xki[0] + xgi[0]), 0.5 * (xki[1] + xgi[1]),
                              0.5 * (xki[2] + xgi[2])};
        double acc[3] = {0.0, 0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* xkj = state_k.data() + 3 * j;
            const double* xgj = state_guess.data() + 3 * j;
            const double hk = 1.0 - sphere_dot(xki, xkj);
            const double hg = 1.0 - sphere_dot(xgi, xgj);
            check_sphere_separation(sys, hk, i, j);
            check_sphere_separation(sys, hg, i, j);
            const double factor = sys.gamma[j] * symmetric_log_ratio(hk, hg);
            const double bj[3] = {0.5 * (xkj[0] + xgj[0]), 0.5 * (xkj[1] + xgj[1]),
                                  0.5 * (xkj[2] + xgj[2])};
            // mean(x_j) x mean(x_i)
            acc[0] += factor * (bj[1] * bi[2] - bj[2] * bi[1]);
            acc[1] += factor * (bj[2] * bi[0] - bj[0] * bi[2]);
            acc[2] += factor * (bj[0] * bi[1] - bj[1] * bi[0]);
        }
        out[3 * i] = xki[0] + tau * acc[0] / kFourPi;
        out[3 * i + 1] = xki[1] + tau * acc[1] / kFourPi;
        out[3 * i + 2] = xki[2] + tau * acc[2] / kFourPi;
    });
    return out;
}

double sphere_max_norm_defect(const PhaseState& state) {
    double worst = 0.0;
    for (std::size_t i = 0; i + 2 < state.size(); i += 3) {
        const double r = std::sqrt(state[i] * state[i] + state[i + 1] * state[i + 1] +
                                   state[i + 2] * state[i + 2]);
        worst = std::max(worst, std::abs(r - 1.0));
    }
    return worst;
}

VortexEnsemble sample_plane_vortices(std::size_t n, double box_half_width, double min_dist,
                                     double strength_scale, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_plane_vortices: n must be >= 1");
    if (!(box_half_width > 0.0))
        throw std::invalid_argument("sample_plane_vortices: box_half_width must be > 0");
    std::mt19937_64 rng(seed);
    VortexEnsemble ens;
    ens.state.assign(2 * n, 0.0);
    ens.gamma.assign(n, 0.0);

    const double min2 = min_dist * min_dist;
    std::int64_t draws = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (;;) {
            if (++draws > kSamplerBudget)
                throw std::runtime_error(
                    "sample_plane_vortices: rejection budget exhausted; packing infeasible");
            const double x = box_half_width * uniform_signed_unit(rng);
            const double y = box_half_width * uniform_signed_unit(rng);
            bool ok = true;
            for (std::size_t j = 0; j < i; ++j) {
                const double dx = x - ens.state[j];
                const double dy = y - ens.state[n + j];
                if (dx * dx + dy * dy < min2) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                ens.state[i] = x;
                ens.state[n + i] = y;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) ens.gamma[i] = strength_scale * uniform_signed_unit(rng);
    return ens;
}

VortexEnsemble sample_sphere_vortices(std::size_t n, double min_dist, double strength_scale,
                                      std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_sphere_vortices: n must be >= 1");
    std::mt19937_64 rng(seed);
    VortexEnsemble ens;
    ens.state.assign(3 * n, 0.0);
    ens.gamma.assign(n, 0.0);

    const double min2 = min_dist * min_dist;
    std::int64_t draws = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (;;) {
            if (++draws > kSamplerBudget)
                throw std::runtime_error(
                    "sample_sphere_vortices: rejection budget exhausted; packing infeasible");
            // Marsaglia: (u, v) uniform on the unit disk maps to the sphere
            const double u = uniform_signed_unit(rng);
            const double v = uniform_signed_unit(rng);
            const double s = u * u + v * v;
            if (s >= 1.0) continue;
            const double f = 2.0 * std::sqrt(1.0 - s);
            const double cand[3] = {u * f, v * f, 1.0 - 2.0 * s};
            bool ok = true;
            for (std::size_t j = 0; j < i; ++j) {
                const double dx = cand[0] - ens.state[3 * j];
                const double dy = cand[1] - ens.state[3 * j + 1];
                const double dz = cand[2] - ens.state[3 * j + 2];
                if (dx * dx + dy * dy + dz * dz < min2) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                ens.state[3 * i] = cand[0];
                ens.state[3 * i + 1] = cand[1];
                ens.state[3 * i + 2] = cand[2];
                break;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) ens.gamma[i] = strength_scale * uniform_signed_unit(rng);
    return ens;
}

PlaneVortexDmmScheme::PlaneVortexDmmScheme(PlanarVortexSystem sys) : sys_(std::move(sys)) {
    sys_.validate();
}

PhaseState PlaneVortexDmmScheme::rhs(double, const PhaseState& x) const {
    return plane_rhs(sys_, x);
}

PhaseState PlaneVortexDmmScheme::fixed_point_map(const PhaseState& guess,
                                                 const PhaseState& x_k, double,
                                                 double tau) const {
    return plane_dmm_map(sys_, x_k, guess, tau);
}

SphereVortexDmmScheme::SphereVortexDmmScheme(SphereVortexSystem sys) : sys_(std::move(sys)) {
    sys_.validate();
}

PhaseState SphereVortexDmmScheme::rhs(double, const PhaseState& x) const {
    return sphere_rhs(sys_, x);
}

PhaseState SphereVortexDmmScheme::fixed_point_map(const PhaseState& guess,
                                                  const PhaseState& x_k, double,
                                                  double tau) const {
    return sphere_dmm_map(sys_, x_k, guess, tau);
}

}  // namespace conint
