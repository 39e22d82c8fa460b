#include "conint/nbody.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conint {

double NBodySystem::total_mass() const {
    double m = 0.0;
    for (double mi : masses) m += mi;
    return m;
}

void NBodySystem::validate() const {
    if (n == 0) throw std::invalid_argument("NBodySystem: n must be >= 1");
    if (dim != 2 && dim != 3) throw std::invalid_argument("NBodySystem: dim must be 2 or 3");
    if (masses.size() != n)
        throw std::invalid_argument("NBodySystem: masses must have length n");
    for (double m : masses)
        if (!(m > 0.0)) throw std::invalid_argument("NBodySystem: masses must be > 0");
    if (const auto* g = std::get_if<GravityPotential>(&potential)) {
        if (!(g->G > 0.0)) throw std::invalid_argument("NBodySystem: G must be > 0");
    } else {
        const auto& lj = std::get<LennardJonesPotential>(potential);
        if (!(lj.epsilon > 0.0) || !(lj.sigma > 0.0))
            throw std::invalid_argument("NBodySystem: epsilon and sigma must be > 0");
    }
}

namespace {

// Position/momentum views into the flat [q; p] packing.
inline const double* pos(const PhaseState& s, const NBodySystem& sys, std::size_t i) {
    return s.data() + i * static_cast<std::size_t>(sys.dim);
}
inline const double* mom(const PhaseState& s, const NBodySystem& sys, std::size_t i) {
    return s.data() + (sys.n + i) * static_cast<std::size_t>(sys.dim);
}
inline double* pos(PhaseState& s, const NBodySystem& sys, std::size_t i) {
    return s.data() + i * static_cast<std::size_t>(sys.dim);
}
inline double* mom(PhaseState& s, const NBodySystem& sys, std::size_t i) {
    return s.data() + (sys.n + i) * static_cast<std::size_t>(sys.dim);
}

inline double pair_distance(const double* qi, const double* qj, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double diff = qi[d] - qj[d];
        s += diff * diff;
    }
    return std::sqrt(s);
}

inline void check_separation(const NBodySystem& sys, double q, std::size_t i, std::size_t j) {
    if (!(q > sys.collision_threshold))
        throw SingularityError("close encounter: bodies " + std::to_string(i) + " and " +
                                   std::to_string(j) + " at distance " + std::to_string(q),
                               i, j);
}

// All pairwise distances, collision-checked. r[i*n+j]; diagonal unused.
std::vector<double> pair_distances(const NBodySystem& sys, const PhaseState& s) {
    const std::size_t n = sys.n;
    std::vector<double> r(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double q = pair_distance(pos(s, sys, i), pos(s, sys, j), sys.dim);
            check_separation(sys, q, i, j);
            r[i * n + j] = q;
            r[j * n + i] = q;
        }
    return r;
}

}  // namespace

double radial_potential_value(const RadialPotential& pot, double m_i, double m_j, double q) {
    if (const auto* g = std::get_if<GravityPotential>(&pot)) return -g->G * m_i * m_j / q;
    const auto& lj = std::get<LennardJonesPotential>(pot);
    const double s3 = (lj.sigma / q) * (lj.sigma / q) * (lj.sigma / q);
    const double s6 = s3 * s3;
    return 4.0 * lj.epsilon * (s6 * s6 - s6);
}

double radial_potential_derivative(const RadialPotential& pot, double m_i, double m_j,
                                   double q) {
    if (const auto* g = std::get_if<GravityPotential>(&pot)) return g->G * m_i * m_j / (q * q);
    const auto& lj = std::get<LennardJonesPotential>(pot);
    const double inv = 1.0 / q;
    const double s3 = (lj.sigma * inv) * (lj.sigma * inv) * (lj.sigma * inv);
    const double s6 = s3 * s3;
    // 4 eps (-12 sigma^12 q^-13 + 6 sigma^6 q^-7)
    return 4.0 * lj.epsilon * (-12.0 * s6 * s6 + 6.0 * s6) * inv;
}

double gravity_divided_difference(double G, double m_i, double m_j, double q0, double q1) {
    if (!(q0 > 0.0) || !(q1 > 0.0))
        throw std::domain_error("gravity_divided_difference: distances must be > 0");
    return G * m_i * m_j / (q1 * q0);
}

double lj_divided_difference(double epsilon, double sigma, double q0, double q1) {
    if (!(q0 > 0.0) || !(q1 > 0.0))
        throw std::domain_error("lj_divided_difference: distances must be > 0");
    // The two power sums are invariant as term sets under q0 <-> q1 (reindex
    // l -> degree-l), so evaluating in canonical (lo, hi) order makes the
    // result bitwise symmetric.
    const double lo = std::min(q0, q1);
    const double hi = std::max(q0, q1);
    const double ilo = 1.0 / lo;
    const double ihi = 1.0 / hi;

    // ihi_pow[m] = hi^-m, ilo_pow[m] = lo^-m, m = 0..11
    double ihi_pow[12], ilo_pow[12];
    ihi_pow[0] = 1.0;
    ilo_pow[0] = 1.0;
    for (int m = 1; m < 12; ++m) {
        ihi_pow[m] = ihi_pow[m - 1] * ihi;
        ilo_pow[m] = ilo_pow[m - 1] * ilo;
    }

    double sum12 = 0.0;  // sum_{l=0}^{11} hi^{l-11} lo^{-l}
    for (int l = 0; l < 12; ++l) sum12 += ihi_pow[11 - l] * ilo_pow[l];
    double sum6 = 0.0;  // sum_{l=0}^{5} hi^{l-5} lo^{-l}
    for (int l = 0; l < 6; ++l) sum6 += ihi_pow[5 - l] * ilo_pow[l];

    const double s2 = sigma * sigma;
    const double s6 = s2 * s2 * s2;
    const double s12 = s6 * s6;
    const double inv_prod = ihi * ilo;
    return 4.0 * epsilon * (-s12 * inv_prod * sum12 + s6 * inv_prod * sum6);
}

double radial_divided_difference(const RadialPotential& pot, double m_i, double m_j,
                                 double q0, double q1) {
    if (const auto* g = std::get_if<GravityPotential>(&pot))
        return gravity_divided_difference(g->G, m_i, m_j, q0, q1);
    const auto& lj = std::get<LennardJonesPotential>(pot);
    return lj_divided_difference(lj.epsilon, lj.sigma, q0, q1);
}

PhaseState nbody_rhs(const NBodySystem& sys, const PhaseState& state,
                     ForceAccumulation accumulation) {
    require_dim(state, sys.phase_dim(), "nbody_rhs");
    const std::size_t n = sys.n;
    const int dim = sys.dim;
    PhaseState out(sys.phase_dim(), 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const double* pi = mom(state, sys, i);
        double* qdot = pos(out, sys, i);
        for (int d = 0; d < dim; ++d) qdot[d] = pi[d] / sys.masses[i];
    }

    if (accumulation == ForceAccumulation::PairSymmetric) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double* qi = pos(state, sys, i);
                const double* qj = pos(state, sys, j);
                const double q = pair_distance(qi, qj, dim);
                check_separation(sys, q, i, j);
                const double dd = radial_potential_derivative(sys.potential, sys.masses[i],
                                                              sys.masses[j], q);
                double* fi = mom(out, sys, i);
                double* fj = mom(out, sys, j);
                for (int d = 0; d < dim; ++d) {
                    const double t = dd * (qi[d] - qj[d]) / q;
                    fi[d] -= t;
                    fj[d] += t;
                }
            }
        return out;
    }

    detail::parallel_for(sys.kernel, n, [&](std::size_t i) {
        const double* qi = pos(state, sys, i);
        double* fi = mom(out, sys, i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* qj = pos(state, sys, j);
            const double q = pair_distance(qi, qj, dim);
            check_separation(sys, q, i, j);
            const double dd =
                radial_potential_derivative(sys.potential, sys.masses[i], sys.masses[j], q);
            for (int d = 0; d < dim; ++d) fi[d] -= dd * (qi[d] - qj[d]) / q;
        }
    });
    return out;
}

NBodyInvariants nbody_conserved(const NBodySystem& sys, const PhaseState& state, double t) {
    require_dim(state, sys.phase_dim(), "nbody_conserved");
    const std::size_t n = sys.n;
    const int dim = sys.dim;
    NBodyInvariants inv;

    for (std::size_t i = 0; i < n; ++i) {
        const double* pi = mom(state, sys, i);
        double p2 = 0.0;
        for (int d = 0; d < dim; ++d) p2 += pi[d] * pi[d];
        inv.H += p2 / (2.0 * sys.masses[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double q = pair_distance(pos(state, sys, i), pos(state, sys, j), dim);
            check_separation(sys, q, i, j);
            inv.H += radial_potential_value(sys.potential, sys.masses[i], sys.masses[j], q);
        }

    for (std::size_t i = 0; i < n; ++i) {
        const double* pi = mom(state, sys, i);
        for (int d = 0; d < dim; ++d) inv.P[static_cast<std::size_t>(d)] += pi[d];
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double* qi = pos(state, sys, i);
        const double* pi = mom(state, sys, i);
        if (dim == 2) {
            inv.L[2] += qi[0] * pi[1] - qi[1] * pi[0];
        } else {
            inv.L[0] += qi[1] * pi[2] - qi[2] * pi[1];
            inv.L[1] += qi[2] * pi[0] - qi[0] * pi[2];
            inv.L[2] += qi[0] * pi[1] - qi[1] * pi[0];
        }
    }

    const double M = sys.total_mass();
    for (std::size_t i = 0; i < n; ++i) {
        const double* qi = pos(state, sys, i);
        for (int d = 0; d < dim; ++d)
            inv.C[static_cast<std::size_t>(d)] += sys.masses[i] * qi[d];
    }
    for (int d = 0; d < dim; ++d) {
        auto di = static_cast<std::size_t>(d);
        inv.C[di] = inv.C[di] / M - inv.P[di] / M * t;
    }
    return inv;
}

PhaseState nbody_dmm_map(const NBodySystem& sys, const PhaseState& state_k,
                         const PhaseState& state_guess, double tau) {
    require_dim(state_k, sys.phase_dim(), "nbody_dmm_map");
    require_dim(state_guess, sys.phase_dim(), "nbody_dmm_map");
    const std::size_t n = sys.n;
    const int dim = sys.dim;

    const std::vector<double> r_k = pair_distances(sys, state_k);
    const std::vector<double> r_g = pair_distances(sys, state_guess);

    PhaseState out(sys.phase_dim());
    for (std::size_t i = 0; i < n; ++i) {
        const double* qk = pos(state_k, sys, i);
        const double* pk = mom(state_k, sys, i);
        const double* pg = mom(state_guess, sys, i);
        double* qn = pos(out, sys, i);
        for (int d = 0; d < dim; ++d)
            qn[d] = qk[d] + tau * 0.5 * (pk[d] + pg[d]) / sys.masses[i];
    }

    detail::parallel_for(sys.kernel, n, [&](std::size_t i) {
        const double* qki = pos(state_k, sys, i);
        const double* qgi = pos(state_guess, sys, i);
        const double* pk = mom(state_k, sys, i);
        double* pn = mom(out, sys, i);
        double acc[3] = {0.0, 0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* qkj = pos(state_k, sys, j);
            const double* qgj = pos(state_guess, sys, j);
            const double dd = radial_divided_difference(sys.potential, sys.masses[i],
                                                        sys.masses[j], r_k[i * n + j],
                                                        r_g[i * n + j]);
            const double r_bar = 0.5 * (r_k[i * n + j] + r_g[i * n + j]);
            for (int d = 0; d < dim; ++d) {
                // mean(q_i) - mean(q_j), component d
                const double diff =
                    0.5 * (qki[d] + qgi[d]) - 0.5 * (qkj[d] + qgj[d]);
                acc[d] += dd * diff / r_bar;
            }
        }
        for (int d = 0; d < dim; ++d) pn[d] = pk[d] - tau * acc[d];
    });
    return out;
}

PhaseState stormer_verlet_step(const NBodySystem& sys, const PhaseState& state, double tau) {
    require_dim(state, sys.phase_dim(), "stormer_verlet_step");
    const std::size_t n = sys.n;
    const int dim = sys.dim;

    // half kick
    PhaseState half = state;
    {
        PhaseState f = nbody_rhs(sys, state);
        for (std::size_t i = 0; i < n; ++i) {
            const double* fi = mom(f, sys, i);
            double* pi = mom(half, sys, i);
            for (int d = 0; d < dim; ++d) pi[d] += 0.5 * tau * fi[d];
        }
    }
    // drift
    for (std::size_t i = 0; i < n; ++i) {
        const double* pi = mom(half, sys, i);
        double* qi = pos(half, sys, i);
        for (int d = 0; d < dim; ++d) qi[d] += tau * pi[d] / sys.masses[i];
    }
    // half kick at the new positions
    {
        PhaseState f = nbody_rhs(sys, half);
        for (std::size_t i = 0; i < n; ++i) {
            const double* fi = mom(f, sys, i);
            double* pi = mom(half, sys, i);
            for (int d = 0; d < dim; ++d) pi[d] += 0.5 * tau * fi[d];
        }
    }
    return half;
}

NBodyDmmScheme::NBodyDmmScheme(NBodySystem sys) : sys_(std::move(sys)) { sys_.validate(); }

PhaseState NBodyDmmScheme::rhs(double, const PhaseState& x) const { return nbody_rhs(sys_, x); }

PhaseState NBodyDmmScheme::fixed_point_map(const PhaseState& guess, const PhaseState& x_k,
                                           double, double tau) const {
    return nbody_dmm_map(sys_, x_k, guess, tau);
}

StormerVerletScheme::StormerVerletScheme(NBodySystem sys) : sys_(std::move(sys)) {
    sys_.validate();
}

PhaseState StormerVerletScheme::rhs(double, const PhaseState& x) const {
    return nbody_rhs(sys_, x);
}

PhaseState StormerVerletScheme::fixed_point_map(const PhaseState&, const PhaseState& x_k,
                                                double, double tau) const {
    return stormer_verlet_step(sys_, x_k, tau);
}

}  // namespace conint
