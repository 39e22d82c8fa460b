#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "conint/csv.hpp"
#include "conint/experiment.hpp"
#include "conint/version.hpp"

namespace conint {

std::vector<QuantityEvaluator> lv_quantities(const LVSystem& sys) {
    std::vector<QuantityEvaluator> out;
    if (sys.has_invariant())
        out.push_back({"V", [sys](double, const PhaseState& x) { return lv_conserved_V(sys, x); }});
    return out;
}

std::vector<QuantityEvaluator> nbody_quantities(const NBodySystem& sys) {
    std::vector<QuantityEvaluator> out;
    auto component = [sys](auto pick) {
        return [sys, pick](double t, const PhaseState& x) {
            return pick(nbody_conserved(sys, x, t));
        };
    };
    out.push_back({"H", component([](const NBodyInvariants& v) { return v.H; })});
    out.push_back({"P_x", component([](const NBodyInvariants& v) { return v.P[0]; })});
    out.push_back({"P_y", component([](const NBodyInvariants& v) { return v.P[1]; })});
    if (sys.dim == 3)
        out.push_back({"P_z", component([](const NBodyInvariants& v) { return v.P[2]; })});
    if (sys.dim == 3) {
        out.push_back({"L_x", component([](const NBodyInvariants& v) { return v.L[0]; })});
        out.push_back({"L_y", component([](const NBodyInvariants& v) { return v.L[1]; })});
    }
    out.push_back({"L_z", component([](const NBodyInvariants& v) { return v.L[2]; })});
    out.push_back({"C_x", component([](const NBodyInvariants& v) { return v.C[0]; })});
    out.push_back({"C_y", component([](const NBodyInvariants& v) { return v.C[1]; })});
    if (sys.dim == 3)
        out.push_back({"C_z", component([](const NBodyInvariants& v) { return v.C[2]; })});
    return out;
}

std::vector<QuantityEvaluator> plane_quantities(const PlanarVortexSystem& sys) {
    auto component = [sys](auto pick) {
        return [sys, pick](double, const PhaseState& x) { return pick(plane_conserved(sys, x)); };
    };
    return {
        {"P_x", component([](const PlanarInvariants& v) { return v.P[0]; })},
        {"P_y", component([](const PlanarInvariants& v) { return v.P[1]; })},
        {"L", component([](const PlanarInvariants& v) { return v.L; })},
        {"H", component([](const PlanarInvariants& v) { return v.H; })},
    };
}

std::vector<QuantityEvaluator> sphere_quantities(const SphereVortexSystem& sys) {
    auto component = [sys](auto pick) {
        return [sys, pick](double, const PhaseState& x) { return pick(sphere_conserved(sys, x)); };
    };
    std::vector<QuantityEvaluator> out = {
        {"P_x", component([](const SphereInvariants& v) { return v.P[0]; })},
        {"P_y", component([](const SphereInvariants& v) { return v.P[1]; })},
        {"P_z", component([](const SphereInvariants& v) { return v.P[2]; })},
        {"H", component([](const SphereInvariants& v) { return v.H; })},
    };
    // Not a first integral of the flow, but conserved by the scheme; reported
    // so norm drift is visible without renormalization.
    out.push_back({"unit_norm_defect",
                   [](double, const PhaseState& x) { return sphere_max_norm_defect(x); }});
    return out;
}

namespace {

std::vector<std::string> indexed_labels(const char* const* prefixes, std::size_t n_prefix,
                                        std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < n_prefix; ++p)
        for (std::size_t i = 0; i < n; ++i)
            labels.push_back(std::string(prefixes[p]) + "_" + std::to_string(i + 1));
    return labels;
}

RhsFn lv_rhs_fn(const LVSystem& lv) {
    return [lv](double, const PhaseState& x) { return lv_rhs(lv, x); };
}

}  // namespace

ExperimentSetup build_setup(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentSetup setup;

    switch (cfg.system) {
        case SystemKind::LotkaVolterra: {
            LVSystem sys;
            sys.n = cfg.lv.n;
            sys.interaction = cfg.lv.interaction;
            sys.equilibrium = cfg.lv.equilibrium;
            sys.invariant_weights = cfg.lv.invariant_weights;
            sys.validate();
            setup.x0 = cfg.lv.x0;
            setup.quantities = lv_quantities(sys);
            const char* prefixes[] = {"x"};
            setup.state_labels = indexed_labels(prefixes, 1, sys.n);
            switch (cfg.method) {
                case MethodKind::DmmArith:
                    setup.scheme = std::make_unique<LVDmmScheme>(sys, MeanVariant::Arithmetic);
                    break;
                case MethodKind::DmmGeo:
                    setup.scheme = std::make_unique<LVDmmScheme>(sys, MeanVariant::Geometric);
                    break;
                case MethodKind::Midpoint:
                    setup.scheme = std::make_unique<ImplicitMidpointScheme>(
                        sys.n, lv_rhs_fn(sys));
                    break;
                case MethodKind::Rk4:
                    setup.scheme =
                        std::make_unique<ExplicitRk4Scheme>(sys.n, lv_rhs_fn(sys));
                    break;
                default:
                    throw std::invalid_argument("build_setup: invalid lv method");
            }
            break;
        }
        case SystemKind::NBodyGravity:
        case SystemKind::NBodyLennardJones: {
            const BodySet set = load_bodies(cfg.nbody.bodies_file);
            RadialPotential pot;
            if (cfg.system == SystemKind::NBodyGravity) {
                if (!set.has_G)
                    throw std::runtime_error("build_setup: gravity data file " +
                                             cfg.nbody.bodies_file + " does not define G");
                pot = GravityPotential{set.G};
            } else {
                pot = LennardJonesPotential{cfg.nbody.epsilon, cfg.nbody.sigma};
            }
            auto [sys, x0] = assemble_nbody(set, pot);
            setup.x0 = std::move(x0);
            setup.quantities = nbody_quantities(sys);
            for (const auto& b : set.bodies)
                for (int d = 0; d < set.dim; ++d)
                    setup.state_labels.push_back(b.label + ".q" + "xyz"[d]);
            for (const auto& b : set.bodies)
                for (int d = 0; d < set.dim; ++d)
                    setup.state_labels.push_back(b.label + ".p" + "xyz"[d]);
            switch (cfg.method) {
                case MethodKind::Dmm:
                    setup.scheme = std::make_unique<NBodyDmmScheme>(sys);
                    break;
                case MethodKind::Verlet:
                    setup.scheme = std::make_unique<StormerVerletScheme>(sys);
                    break;
                case MethodKind::Midpoint:
                    setup.scheme = std::make_unique<ImplicitMidpointScheme>(
                        sys.phase_dim(),
                        [sys](double, const PhaseState& x) { return nbody_rhs(sys, x); });
                    break;
                case MethodKind::Rk4:
                    setup.scheme = std::make_unique<ExplicitRk4Scheme>(
                        sys.phase_dim(),
                        [sys](double, const PhaseState& x) { return nbody_rhs(sys, x); });
                    break;
                default:
                    throw std::invalid_argument("build_setup: invalid nbody method");
            }
            break;
        }
        case SystemKind::VortexPlane: {
            VortexEnsemble ens =
                cfg.vortex.ensemble_file.empty()
                    ? sample_plane_vortices(cfg.vortex.n, cfg.vortex.box_half_width,
                                            cfg.vortex.min_dist, cfg.vortex.strength_scale,
                                            cfg.seed)
                    : load_ensemble(cfg.vortex.ensemble_file, false);
            PlanarVortexSystem sys;
            sys.n = ens.gamma.size();
            sys.gamma = ens.gamma;
            sys.validate();
            setup.x0 = std::move(ens.state);
            setup.quantities = plane_quantities(sys);
            const char* prefixes[] = {"x", "y"};
            setup.state_labels = indexed_labels(prefixes, 2, sys.n);
            switch (cfg.method) {
                case MethodKind::Dmm:
                    setup.scheme = std::make_unique<PlaneVortexDmmScheme>(sys);
                    break;
                case MethodKind::Midpoint:
                    setup.scheme = std::make_unique<ImplicitMidpointScheme>(
                        sys.phase_dim(),
                        [sys](double, const PhaseState& x) { return plane_rhs(sys, x); });
                    break;
                case MethodKind::Rk4:
                    setup.scheme = std::make_unique<ExplicitRk4Scheme>(
                        sys.phase_dim(),
                        [sys](double, const PhaseState& x) { return plane_rhs(sys, x); });
                    break;
                default:
                    throw std::invalid_argument("build_setup: invalid vortex method");
            }
            break;
        }
        case SystemKind::VortexSphere: {
            VortexEnsemble ens =
                cfg.vortex.ensemble_file.empty()
                    ? sample_sphere_vortices(cfg.vortex.n, cfg.vortex.min_dist,
                                             cfg.vortex.strength_scale, cfg.seed)
                    : load_ensemble(cfg.vortex.ensemble_file, true);
            SphereVortexSystem sys;
            sys.n = ens.gamma.size();
            sys.gamma = ens.gamma;
            sys.validate();
            if (sphere_max_norm_defect(ens.state) > 1e-10)
                throw std::invalid_argument(
                    "build_setup: sphere ensemble is not on the unit sphere");
            setup.x0 = std::move(ens.state);
            setup.quantities = sphere_quantities(sys);
            for (std::size_t i = 1; i <= sys.n; ++i)
                for (const char* c : {"x", "y", "z"})
                    setup.state_labels.push_back(std::string(c) + "_" + std::to_string(i));
            switch (cfg.method) {
                case MethodKind::Dmm:
                    setup.scheme = std::make_unique<SphereVortexDmmScheme>(sys);
                    break;
                case MethodKind::Midpoint:
                    setup.scheme = std::make_unique<ImplicitMidpointScheme>(
                        sys.phase_dim(),
                        [sys](double, const PhaseState& x) { return sphere_rhs(sys, x); });
                    break;
                case MethodKind::Rk4:
                    setup.scheme = std::make_unique<ExplicitRk4Scheme>(
                        sys.phase_dim(),
                        [sys](double, const PhaseState& x) { return sphere_rhs(sys, x); });
                    break;
                default:
                    throw std::invalid_argument("build_setup: invalid vortex method");
            }
            break;
        }
    }
    return setup;
}

RunSummary run(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    const auto start = std::chrono::steady_clock::now();

    ExperimentSetup setup = build_setup(cfg);
    fs::create_directories(cfg.out_dir);

    CsvWriter trajectory(cfg.out_dir + "/trajectory.csv");
    {
        std::vector<std::string> header = {"t"};
        header.insert(header.end(), setup.state_labels.begin(), setup.state_labels.end());
        trajectory.row(header);
    }

    DriftTracker tracker(setup.quantities, cfg.sample_stride);
    RunSummary summary;

    PhaseState x = setup.x0;
    std::mt19937_64 rng(cfg.solver.guess_strategy.seed);

    tracker.observe(0, 0.0, x);
    {
        std::vector<std::string> t0{format_full(0.0)};
        trajectory.numeric_row(x, t0);
    }
    for (std::int64_t k = 0; k < cfg.n_steps; ++k) {
        const double t_k = static_cast<double>(k) * cfg.tau;
        const double t_next = static_cast<double>(k + 1) * cfg.tau;
        StepResult r;
        try {
            r = solve_step(*setup.scheme, x, t_k, cfg.tau, cfg.solver, rng);
        } catch (const NonconvergenceError& e) {
            throw NonconvergenceError("run: step " + std::to_string(k + 1) + ": " + e.what(),
                                      e.iterations, e.residual_norm);
        } catch (const DivergenceError& e) {
            throw DivergenceError("run: step " + std::to_string(k + 1) + ": " + e.what(),
                                  e.iterations);
        } catch (const std::domain_error& e) {
            throw std::domain_error("run: step " + std::to_string(k + 1) + ": " + e.what());
        }
        x = std::move(r.state);
        summary.total_iterations += r.iterations;
        summary.max_step_iterations = std::max(summary.max_step_iterations, r.iterations);
        tracker.observe(k + 1, t_next, x);
        if ((k + 1) % cfg.sample_stride == 0) {
            std::vector<std::string> tf{format_full(t_next)};
            trajectory.numeric_row(x, tf);
        }
    }
    summary.steps = cfg.n_steps;
    summary.report = tracker.report();

    {
        CsvWriter conservation(cfg.out_dir + "/conservation.csv");
        std::vector<std::string> header = {"t"};
        for (const auto& q : summary.report.quantities) header.push_back("drift_" + q.name);
        conservation.row(header);
        if (!summary.report.quantities.empty()) {
            const std::size_t rows = summary.report.quantities.front().samples.size();
            for (std::size_t r = 0; r < rows; ++r) {
                std::vector<std::string> fields{
                    format_full(summary.report.quantities.front().samples[r].t)};
                for (const auto& q : summary.report.quantities)
                    fields.push_back(format_full(q.samples[r].drift));
                conservation.row(fields);
            }
        }
    }
    {
        CsvWriter sum(cfg.out_dir + "/summary.csv");
        sum.row({"quantity", "initial_value", "linf_drift"});
        for (const auto& q : summary.report.quantities)
            sum.row({q.name, format_full(q.initial_value), format_full(q.linf_drift)});
    }

    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    {
        nlohmann::json meta;
        meta["version"] = kVersion;
        std::ostringstream hash;
        hash << std::hex << config_hash(cfg);
        meta["config_hash"] = hash.str();
        meta["config"] = serialize_config(cfg);
        meta["steps"] = summary.steps;
        meta["total_iterations"] = summary.total_iterations;
        meta["max_step_iterations"] = summary.max_step_iterations;
        meta["mean_iterations"] =
            cfg.n_steps > 0 ? static_cast<double>(summary.total_iterations) /
                                  static_cast<double>(cfg.n_steps)
                            : 0.0;
        meta["wall_seconds"] = summary.wall_seconds;
        std::ofstream out(cfg.out_dir + "/meta.json", std::ios::binary);
        out << meta.dump(2) << '\n';
    }
    return summary;
}

ConvergenceTable run_convergence(const ExperimentConfig& cfg, std::span<const double> taus,
                                 double t_final, int fine_factor) {
    ExperimentSetup setup = build_setup(cfg);
    return estimate_order(*setup.scheme, setup.x0, 0.0, t_final, taus,
                          FineTauReference{fine_factor}, cfg.solver);
}

}  // namespace conint
