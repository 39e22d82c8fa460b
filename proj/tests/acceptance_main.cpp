// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are pinned here, not configurable.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "conint/diagnostics.hpp"
#include "conint/experiment.hpp"
#include "conint/stable_g.hpp"
#include "oracles.hpp"

using namespace conint;

namespace {

int g_failures = 0;
using Clock = std::chrono::steady_clock;

void report(int criterion, const std::string& what, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %d: %-52s %s  (%.1fs)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str(), seconds);
    if (!pass) ++g_failures;
}

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }
};

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double lv_drift(MethodKind method) {
    ExperimentConfig cfg = preset("lv3", PresetScale::Paper);
    cfg.method = method;
    ExperimentSetup setup = build_setup(cfg);
    const TimeSeries series =
        integrate(*setup.scheme, setup.x0, 0.0, cfg.tau, cfg.n_steps, cfg.solver);
    const ConservationReport rep = conservation_report(series, setup.quantities, 1);
    return rep["V"].linf_drift;
}

// --- criterion 1: Table 1 reproduction at full paper scale -----------------
void criterion_1() {
    Timer timer;
    const double arith = lv_drift(MethodKind::DmmArith);
    const double geo = lv_drift(MethodKind::DmmGeo);
    const double mid = lv_drift(MethodKind::Midpoint);
    const double rk4 = lv_drift(MethodKind::Rk4);

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "V drift: arith %.2e, geo %.2e, midpoint %.2e, rk4 %.2e", arith, geo, mid,
                  rk4);
    const bool pass = arith <= 1e-13 && geo <= 1e-13 && mid >= 5e-4 && mid <= 5e-3 &&
                      rk4 >= 1e-6 && rk4 <= 1e-5 && timer.seconds() < 10.0;
    report(1, "lv3 conservation, all four methods", pass, detail, timer.seconds());
}

// --- criterion 2: convergence orders ---------------------------------------
struct SlopeCase {
    std::string name;
    double slope;
    double target;
    double tol;
};

SlopeCase lv_slope(MeanVariant variant) {
    ExperimentConfig cfg = preset("lv3", PresetScale::Desk);
    cfg.method = variant == MeanVariant::Arithmetic ? MethodKind::DmmArith : MethodKind::DmmGeo;
    ExperimentSetup setup = build_setup(cfg);
    const double taus[] = {0.1, 0.05, 0.025, 0.0125};
    const ConvergenceTable t = estimate_order(*setup.scheme, setup.x0, 0.0, 10.0, taus,
                                              FineTauReference{64}, cfg.solver);
    return {variant == MeanVariant::Arithmetic ? "lv-arith" : "lv-geo", t.slope, 2.0, 0.15};
}

SlopeCase nbody_pair_slope() {
    NBodySystem sys;
    sys.n = 2;
    sys.dim = 3;
    sys.masses = {1.0, 1.0};
    sys.potential = GravityPotential{1.0};
    const NBodyDmmScheme scheme(sys);
    const double omega = std::sqrt(2.0);
    const AnalyticReference analytic{[omega](double t) {
        const double c = std::cos(omega * t), s = std::sin(omega * t);
        PhaseState x(12, 0.0);
        x[0] = 0.5 * c;
        x[1] = 0.5 * s;
        x[3] = -0.5 * c;
        x[4] = -0.5 * s;
        x[6] = -0.5 * omega * s;
        x[7] = 0.5 * omega * c;
        x[9] = 0.5 * omega * s;
        x[10] = -0.5 * omega * c;
        return x;
    }};
    SolverConfig solver;
    solver.abs_tolerance = 1e-14;
    const double taus[] = {0.05, 0.025, 0.0125, 0.00625};
    const ConvergenceTable t =
        estimate_order(scheme, analytic.solution(0.0), 0.0, 2.0, taus, analytic, solver);
    return {"nbody-pair", t.slope, 2.0, 0.15};
}

AnalyticReference plane_pair_reference() {
    const double omega = 1.0 / std::numbers::pi;  // Gamma/(pi d^2), Gamma = d = 1
    return {[omega](double t) {
        const double c = std::cos(omega * t), s = std::sin(omega * t);
        return PhaseState{0.5 * c, -0.5 * c, 0.5 * s, -0.5 * s};
    }};
}

SlopeCase plane_pair_slope() {
    PlanarVortexSystem sys;
    sys.n = 2;
    sys.gamma = {1.0, 1.0};
    const PlaneVortexDmmScheme scheme(sys);
    SolverConfig solver;
    solver.abs_tolerance = 1e-14;
    const double taus[] = {0.2, 0.1, 0.05, 0.025};
    const AnalyticReference analytic = plane_pair_reference();
    const ConvergenceTable t =
        estimate_order(scheme, analytic.solution(0.0), 0.0, 4.0, taus, analytic, solver);
    return {"plane-pair", t.slope, 2.0, 0.15};
}

SlopeCase sphere_pair_slope() {
    SphereVortexSystem sys;
    sys.n = 2;
    sys.gamma = {1.0, 0.5};
    const SphereVortexDmmScheme scheme(sys);
    SolverConfig solver;
    solver.abs_tolerance = 1e-14;
    const PhaseState x0 = {1, 0, 0, 0, 0.6, 0.8};
    const double taus[] = {0.2, 0.1, 0.05, 0.025};
    const ConvergenceTable t =
        estimate_order(scheme, x0, 0.0, 4.0, taus, FineTauReference{64}, solver);
    return {"sphere-pair", t.slope, 2.0, 0.15};
}

SlopeCase rk4_pair_slope() {
    PlanarVortexSystem sys;
    sys.n = 2;
    sys.gamma = {1.0, 1.0};
    const ExplicitRk4Scheme scheme(
        4, [sys](double, const PhaseState& x) { return plane_rhs(sys, x); });
    SolverConfig solver;
    const double taus[] = {0.4, 0.2, 0.1, 0.05};
    const AnalyticReference analytic = plane_pair_reference();
    const ConvergenceTable t =
        estimate_order(scheme, analytic.solution(0.0), 0.0, 4.0, taus, analytic, solver);
    return {"rk4-pair", t.slope, 4.0, 0.2};
}

void criterion_2() {
    Timer timer;
    std::vector<SlopeCase> cases = {lv_slope(MeanVariant::Arithmetic),
                                    lv_slope(MeanVariant::Geometric),
                                    nbody_pair_slope(),
                                    plane_pair_slope(),
                                    sphere_pair_slope(),
                                    rk4_pair_slope()};
    bool pass = timer.seconds() < 60.0;
    std::string detail;
    for (const auto& c : cases) {
        if (!(std::abs(c.slope - c.target) <= c.tol)) pass = false;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s %.2f ", c.name.c_str(), c.slope);
        detail += buf;
    }
    report(2, "method orders over four tau-halvings", pass, detail, timer.seconds());
}

// --- criteria 3 and 4: n-body desk runs ------------------------------------
void criterion_3() {
    Timer timer;
    ExperimentConfig cfg = preset("solar10", PresetScale::Desk);
    ExperimentSetup setup = build_setup(cfg);
    const TimeSeries series =
        integrate(*setup.scheme, setup.x0, 0.0, cfg.tau, cfg.n_steps, cfg.solver);
    const ConservationReport rep = conservation_report(series, setup.quantities, 100);

    const double h = rep["H"].linf_drift;
    double p = 0.0, l = 0.0, c = 0.0;
    for (const char* n : {"P_x", "P_y", "P_z"}) p = std::max(p, rep[n].linf_drift);
    for (const char* n : {"L_x", "L_y", "L_z"}) l = std::max(l, rep[n].linf_drift);
    for (const char* n : {"C_x", "C_y", "C_z"}) c = std::max(c, rep[n].linf_drift);

    char detail[160];
    std::snprintf(detail, sizeof(detail), "H %.2e, P %.2e, L %.2e, C %.2e", h, p, l, c);
    const bool pass =
        h <= 1e-14 && p <= 1e-16 && l <= 1e-14 && c <= 1e-11 && timer.seconds() < 60.0;
    report(3, "solar10 desk (N=4e4, tau=5d) conservation", pass, detail, timer.seconds());
}

void criterion_4() {
    Timer timer;
    ExperimentConfig cfg = preset("argon7", PresetScale::Desk);
    ExperimentSetup setup = build_setup(cfg);
    const TimeSeries series =
        integrate(*setup.scheme, setup.x0, 0.0, cfg.tau, cfg.n_steps, cfg.solver);
    const ConservationReport rep = conservation_report(series, setup.quantities, 10);

    const double h = rep["H"].linf_drift;
    double rest = 0.0;
    for (const char* n : {"P_x", "P_y", "L_z", "C_x", "C_y"})
        rest = std::max(rest, rep[n].linf_drift);

    char detail[128];
    std::snprintf(detail, sizeof(detail), "H %.2e, max(P,L,C) %.2e", h, rest);
    const bool pass = h <= 1e-9 && rest <= 1e-12 && timer.seconds() < 30.0;
    report(4, "argon7 desk (N=4e3) conservation, rescaled units", pass, detail,
           timer.seconds());
}

// --- criteria 5 and 6: vortex desk runs ------------------------------------
ConservationReport vortex_report(const ExperimentConfig& cfg) {
    ExperimentSetup setup = build_setup(cfg);
    const TimeSeries series =
        integrate(*setup.scheme, setup.x0, 0.0, cfg.tau, cfg.n_steps, cfg.solver);
    return conservation_report(series, setup.quantities, 10);
}

void criterion_5() {
    Timer timer;
    ExperimentConfig cfg = preset("plane-vortex", PresetScale::Desk);
    const ConservationReport dmm = vortex_report(cfg);
    cfg.method = MethodKind::Midpoint;
    const ConservationReport mid = vortex_report(cfg);

    const double dmm_h = dmm["H"].linf_drift;
    const double dmm_rest = std::max({dmm["P_x"].linf_drift, dmm["P_y"].linf_drift,
                                      dmm["L"].linf_drift});
    const double mid_h = mid["H"].linf_drift;
    const double mid_l = mid["L"].linf_drift;

    char detail[160];
    std::snprintf(detail, sizeof(detail), "dmm H %.2e P/L %.2e | mid H %.2e L %.2e", dmm_h,
                  dmm_rest, mid_h, mid_l);
    const bool pass = dmm_h <= 1e-13 && dmm_rest <= 1e-13 && mid_l <= 1e-12 &&
                      mid_h >= 1e-9 && mid_h <= 1e-6 && mid_h > 100.0 * dmm_h &&
                      timer.seconds() < 60.0;
    report(5, "plane vortices desk (n=50, N=200)", pass, detail, timer.seconds());
}

void criterion_6() {
    Timer timer;
    const ExperimentConfig cfg = preset("sphere-vortex", PresetScale::Desk);
    const ConservationReport dmm = vortex_report(cfg);

    const double h = dmm["H"].linf_drift;
    const double p = std::max({dmm["P_x"].linf_drift, dmm["P_y"].linf_drift,
                               dmm["P_z"].linf_drift});
    const double norm_drift = dmm["unit_norm_defect"].linf_drift;

    char detail[128];
    std::snprintf(detail, sizeof(detail), "H %.2e, P %.2e, norm defect %.2e", h, p,
                  norm_drift);
    const bool pass = h <= 1e-14 && p <= 1e-14 && norm_drift <= 1e-12 &&
                      timer.seconds() < 60.0;
    report(6, "sphere vortices desk (n=50, N=200)", pass, detail, timer.seconds());
}

// --- criterion 7: property suites -------------------------------------------
bool prop_swap_symmetry(std::string& out) {
    std::mt19937_64 rng(271828);
    std::uint64_t worst = 0;
    for (int i = 0; i < 10000; ++i) {
        const double a = 1e-6 + 10.0 * unit(rng);
        const double b = i % 2 ? a * (1.0 + 1e-10 + 1e-4 * unit(rng)) : 1e-6 + 10.0 * unit(rng);
        worst = std::max(worst, oracle::ulp_distance(symmetric_log_ratio(a, b),
                                                     symmetric_log_ratio(b, a)));
    }
    out += "slr swap " + std::to_string(worst) + " ulp; ";
    return worst <= 2;
}

bool prop_divided_differences(std::string& out) {
    std::mt19937_64 rng(314159);
    bool ok = true;
    const double eps = 119.8, sigma = 0.341;
    auto Vlj = [&](long double q) {
        const long double s6 = powl(static_cast<long double>(sigma) / q, 6.0L);
        return 4.0L * static_cast<long double>(eps) * (s6 * s6 - s6);
    };
    auto Vgrav = [](long double q) { return -1.0L / q; };

    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        // identity Delta V = dd * Delta q for |Delta q| > 1e-6 q; LJ pairs
        // drawn on one side of the force zero, where the quotient is well
        // conditioned and a relative comparison is meaningful
        {
            const bool repulsive = i % 2 == 0;
            const double a = repulsive ? 0.25 + 0.05 * unit(rng) : 0.45 + 0.75 * unit(rng);
            const double b = a * (1.0 + 1e-5 + (repulsive ? 0.2 : 1.0) * unit(rng));
            const double dd = lj_divided_difference(eps, sigma, a, b);
            const long double lhs = Vlj(b) - Vlj(a);
            const long double rhs = static_cast<long double>(dd) *
                                    (static_cast<long double>(b) - static_cast<long double>(a));
            const double rel = std::abs(static_cast<double>((lhs - rhs) / lhs));
            worst = std::max(worst, rel);
            if (rel > 1e-12) ok = false;
        }
        {
            const double a = 0.2 + 3.0 * unit(rng);
            const double b = a * (1.0 + 1e-5 + unit(rng));
            const double dd = gravity_divided_difference(1.0, 1.0, 1.0, a, b);
            const long double lhs = Vgrav(b) - Vgrav(a);
            const long double rhs = static_cast<long double>(dd) *
                                    (static_cast<long double>(b) - static_cast<long double>(a));
            const double rel =
                std::abs(static_cast<double>((lhs - rhs) / lhs));
            worst = std::max(worst, rel);
            if (rel > 1e-12) ok = false;
        }
    }
    // coalescence limit reproduces V'
    for (double q : {0.32, 0.38, 0.6}) {
        const double dd = lj_divided_difference(eps, sigma, q, q);
        const double vp =
            radial_potential_derivative(LennardJonesPotential{eps, sigma}, 1.0, 1.0, q);
        if (std::abs(dd - vp) > 1e-12 * std::abs(vp)) ok = false;
    }
    for (double q : {0.5, 1.0, 2.0}) {
        const double dd = gravity_divided_difference(1.0, 1.0, 1.0, q, q);
        if (std::abs(dd - 1.0 / (q * q)) > 1e-13 / (q * q)) ok = false;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "dd identity %.1e; ", worst);
    out += buf;
    return ok;
}

bool prop_adjoint_round_trips(std::string& out) {
    SolverConfig solver;
    solver.abs_tolerance = 1e-14;
    std::mt19937_64 rng(99);
    double worst = 0.0;

    // lv, both means
    {
        LVSystem sys;
        sys.n = 3;
        sys.interaction = {1, 1, 1, 0, 0, -2, 0, 1, 0};
        sys.equilibrium = {0.5, 0.5, 0.5};
        for (auto variant : {MeanVariant::Arithmetic, MeanVariant::Geometric}) {
            const LVDmmScheme scheme(sys, variant);
            for (int i = 0; i < 5; ++i) {
                const PhaseState x{0.2 + unit(rng), 0.2 + unit(rng), 0.2 + unit(rng)};
                worst = std::max(worst, symmetry_check(scheme, x, 0.0, 0.05, solver));
            }
        }
    }
    // nbody dmm + stormer-verlet on a two-body orbit neighborhood
    {
        NBodySystem sys;
        sys.n = 2;
        sys.dim = 3;
        sys.masses = {1.0, 1.3};
        sys.potential = GravityPotential{1.0};
        const NBodyDmmScheme dmm(sys);
        const StormerVerletScheme verlet(sys);
        for (int i = 0; i < 5; ++i) {
            PhaseState x(12);
            for (std::size_t k = 0; k < 12; ++k)
                x[k] = (k < 6 ? 2.0 : 0.5) * (unit(rng) - 0.5);
            x[0] += 2.0;
            x[3] -= 2.0;  // keep the pair separated
            worst = std::max(worst, symmetry_check(dmm, x, 0.0, 0.02, solver));
            worst = std::max(worst, symmetry_check(verlet, x, 0.0, 0.02, solver));
        }
    }
    // vortex schemes + midpoint
    {
        VortexEnsemble ens = sample_plane_vortices(6, 3.0, 0.4, 0.5, 5);
        PlanarVortexSystem sys;
        sys.n = 6;
        sys.gamma = ens.gamma;
        const PlaneVortexDmmScheme scheme(sys);
        worst = std::max(worst, symmetry_check(scheme, ens.state, 0.0, 0.1, solver));
        const ImplicitMidpointScheme midpoint(
            sys.phase_dim(), [sys](double, const PhaseState& x) { return plane_rhs(sys, x); });
        worst = std::max(worst, symmetry_check(midpoint, ens.state, 0.0, 0.1, solver));
    }
    {
        VortexEnsemble ens = sample_sphere_vortices(6, 0.4, 0.5, 6);
        SphereVortexSystem sys;
        sys.n = 6;
        sys.gamma = ens.gamma;
        const SphereVortexDmmScheme scheme(sys);
        worst = std::max(worst, symmetry_check(scheme, ens.state, 0.0, 0.1, solver));
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "adjoint %.1e; ", worst);
    out += buf;
    return worst <= 1e-12;
}

bool prop_per_step_conservation(std::string& out) {
    SolverConfig solver;
    solver.abs_tolerance = 1e-14;
    const double tol = 100.0 * solver.abs_tolerance;
    std::mt19937_64 rng(424242);
    double worst = 0.0;
    bool ok = true;

    // lv, each variant: 100 draws
    {
        LVSystem sys;
        sys.n = 3;
        sys.interaction = {1, 1, 1, 0, 0, -2, 0, 1, 0};
        sys.equilibrium = {0.5, 0.5, 0.5};
        sys.invariant_weights = {0, 1, 2};
        for (auto variant : {MeanVariant::Arithmetic, MeanVariant::Geometric}) {
            const LVDmmScheme scheme(sys, variant);
            for (int i = 0; i < 100; ++i) {
                const PhaseState x{0.2 + 1.5 * unit(rng), 0.2 + 1.5 * unit(rng),
                                   0.2 + 1.5 * unit(rng)};
                const double tau = 0.002 + 0.08 * unit(rng);
                const double before = lv_conserved_V(sys, x);
                const StepResult r = solve_step(scheme, x, 0.0, tau, solver);
                const double d = std::abs(lv_conserved_V(sys, r.state) - before);
                worst = std::max(worst, d);
                if (d > tol) ok = false;
            }
        }
    }
    // nbody gravity: 100 draws
    {
        NBodySystem sys;
        sys.n = 4;
        sys.dim = 3;
        sys.masses = {1.0, 2.0, 0.5, 1.25};
        sys.potential = GravityPotential{1.0};
        const NBodyDmmScheme scheme(sys);
        for (int i = 0; i < 100; ++i) {
            PhaseState x(sys.phase_dim());
            for (std::size_t b = 0; b < 4; ++b)
                for (std::size_t d = 0; d < 3; ++d) {
                    x[3 * b + d] = 4.0 * (unit(rng) - 0.5) + 2.5 * static_cast<double>(b);
                    x[3 * (4 + b) + d] = 0.4 * (unit(rng) - 0.5);
                }
            const double tau = 0.002 + 0.04 * unit(rng);
            const NBodyInvariants before = nbody_conserved(sys, x, 0.0);
            StepResult r;
            try {
                r = solve_step(scheme, x, 0.0, tau, solver);
            } catch (const SolverError&) {
                continue;
            }
            const NBodyInvariants after = nbody_conserved(sys, r.state, tau);
            double d = std::abs(after.H - before.H);
            for (std::size_t k = 0; k < 3; ++k) {
                d = std::max(d, std::abs(after.P[k] - before.P[k]));
                d = std::max(d, std::abs(after.L[k] - before.L[k]));
                d = std::max(d, std::abs(after.C[k] - before.C[k]));
            }
            worst = std::max(worst, d);
            if (d > tol) ok = false;
        }
    }
    // plane + sphere vortices: 100 draws each
    {
        VortexEnsemble ens = sample_plane_vortices(8, 3.0, 0.3, 0.4, 7);
        PlanarVortexSystem sys;
        sys.n = 8;
        sys.gamma = ens.gamma;
        const PlaneVortexDmmScheme scheme(sys);
        PhaseState x = ens.state;
        for (int i = 0; i < 100; ++i) {
            const double tau = 0.002 + 0.15 * unit(rng);
            const PlanarInvariants before = plane_conserved(sys, x);
            const StepResult r = solve_step(scheme, x, 0.0, tau, solver);
            const PlanarInvariants after = plane_conserved(sys, r.state);
            double d = std::abs(after.H - before.H);
            d = std::max(d, std::abs(after.P[0] - before.P[0]));
            d = std::max(d, std::abs(after.P[1] - before.P[1]));
            d = std::max(d, std::abs(after.L - before.L));
            worst = std::max(worst, d);
            if (d > tol) ok = false;
            x = r.state;
        }
    }
    {
        VortexEnsemble ens = sample_sphere_vortices(8, 0.3, 0.4, 8);
        SphereVortexSystem sys;
        sys.n = 8;
        sys.gamma = ens.gamma;
        const SphereVortexDmmScheme scheme(sys);
        PhaseState x = ens.state;
        for (int i = 0; i < 100; ++i) {
            const double tau = 0.002 + 0.15 * unit(rng);
            const SphereInvariants before = sphere_conserved(sys, x);
            const StepResult r = solve_step(scheme, x, 0.0, tau, solver);
            const SphereInvariants after = sphere_conserved(sys, r.state);
            double d = std::abs(after.H - before.H);
            for (std::size_t k = 0; k < 3; ++k)
                d = std::max(d, std::abs(after.P[k] - before.P[k]));
            worst = std::max(worst, d);
            if (d > tol) ok = false;
            x = r.state;
        }
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "per-step %.1e; ", worst);
    out += buf;
    return ok;
}

bool prop_oracle_equivalence(std::string& out) {
    std::mt19937_64 rng(515151);
    bool ok = true;
    double worst = 0.0;
    auto track = [&](double got, double want) {
        const double rel = std::abs(got - want) / std::max(1e-30, std::abs(want));
        worst = std::max(worst, rel);
        if (rel > 1e-14) ok = false;
    };

    {
        VortexEnsemble ens = sample_plane_vortices(10, 5.0, 0.2, 0.8, 61);
        PlanarVortexSystem sys;
        sys.n = 10;
        sys.gamma = ens.gamma;
        const PlanarInvariants inv = plane_conserved(sys, ens.state);
        track(inv.H, static_cast<double>(oracle::plane_H(ens.gamma, ens.state)));
        const auto P = oracle::plane_P(ens.gamma, ens.state);
        track(inv.P[0], static_cast<double>(P[0]));
        track(inv.P[1], static_cast<double>(P[1]));
        track(inv.L, static_cast<double>(oracle::plane_L(ens.gamma, ens.state)));
    }
    {
        VortexEnsemble ens = sample_sphere_vortices(10, 0.2, 0.8, 62);
        SphereVortexSystem sys;
        sys.n = 10;
        sys.gamma = ens.gamma;
        const SphereInvariants inv = sphere_conserved(sys, ens.state);
        track(inv.H, static_cast<double>(oracle::sphere_H(ens.gamma, ens.state)));
        const auto P = oracle::sphere_P(ens.gamma, ens.state);
        for (std::size_t d = 0; d < 3; ++d) track(inv.P[d], static_cast<double>(P[d]));
    }
    {
        NBodySystem sys;
        sys.n = 10;
        sys.dim = 3;
        sys.masses.assign(10, 0.0);
        for (auto& m : sys.masses) m = 0.5 + unit(rng);
        sys.potential = GravityPotential{0.9};
        PhaseState x(sys.phase_dim());
        for (std::size_t b = 0; b < 10; ++b)
            for (std::size_t d = 0; d < 3; ++d) {
                x[3 * b + d] = 3.0 * (unit(rng) - 0.5) + 2.0 * static_cast<double>(b);
                // biased positive so the component sums stay well scaled
                x[3 * (10 + b) + d] = 0.2 + unit(rng);
            }
        const double t = 1.7;
        const NBodyInvariants inv = nbody_conserved(sys, x, t);
        track(inv.H, static_cast<double>(oracle::nbody_H_gravity(0.9, sys.masses, 3, x)));
        const auto P = oracle::nbody_P(sys.masses, 3, x);
        const auto L = oracle::nbody_L(sys.masses, 3, x);
        const auto C = oracle::nbody_C(sys.masses, 3, x, t);
        for (std::size_t d = 0; d < 3; ++d) {
            track(inv.P[d], static_cast<double>(P[d]));
            track(inv.L[d], static_cast<double>(L[d]));
            track(inv.C[d], static_cast<double>(C[d]));
        }
    }
    {
        LVSystem sys;
        sys.n = 10;
        sys.interaction.assign(100, 0.0);
        sys.equilibrium.assign(10, 1.0);
        sys.invariant_weights.assign(10, 0.0);
        PhaseState x(10);
        for (std::size_t i = 0; i < 10; ++i) {
            sys.equilibrium[i] = 0.3 + unit(rng);
            sys.invariant_weights[i] = 2.0 * unit(rng) - 1.0;
            x[i] = 0.2 + 2.0 * unit(rng);
        }
        track(lv_conserved_V(sys, x),
              static_cast<double>(oracle::lv_V(sys.invariant_weights, sys.equilibrium, x)));
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "oracle rel %.1e", worst);
    out += buf;
    return ok;
}

void criterion_7() {
    Timer timer;
    std::string detail;
    bool pass = true;
    pass &= prop_swap_symmetry(detail);
    pass &= prop_divided_differences(detail);
    pass &= prop_adjoint_round_trips(detail);
    pass &= prop_per_step_conservation(detail);
    pass &= prop_oracle_equivalence(detail);
    report(7, "property suites (a)-(e)", pass, detail, timer.seconds());
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
