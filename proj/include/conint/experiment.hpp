#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "conint/diagnostics.hpp"
#include "conint/lotka_volterra.hpp"
#include "conint/nbody.hpp"
#include "conint/point_vortex.hpp"
#include "conint/reference_methods.hpp"

namespace conint {

enum class SystemKind { LotkaVolterra, NBodyGravity, NBodyLennardJones, VortexPlane, VortexSphere };
enum class MethodKind { DmmArith, DmmGeo, Dmm, Midpoint, Rk4, Verlet };
enum class PresetScale { Paper, Desk };

std::string to_string(SystemKind kind);
std::string to_string(MethodKind kind);
SystemKind system_kind_from_string(const std::string& s);
MethodKind method_kind_from_string(const std::string& s);
PresetScale scale_from_string(const std::string& s);

struct LVConfigSection {
    std::size_t n = 0;
    std::vector<double> interaction;
    std::vector<double> equilibrium;
    std::vector<double> invariant_weights;
    std::vector<double> x0;
};

struct NBodyConfigSection {
    std::string bodies_file;
    double epsilon = 0.0;  // Lennard-Jones only
    double sigma = 0.0;
};

struct VortexConfigSection {
    std::size_t n = 0;
    double box_half_width = 5.0;  // plane only
    double min_dist = 0.0;
    double strength_scale = 0.0;
    std::string ensemble_file;  // optional; replaces the sampler
};

struct ExperimentConfig {
    std::string name = "experiment";
    SystemKind system = SystemKind::LotkaVolterra;
    MethodKind method = MethodKind::DmmArith;
    double tau = 0.0;
    std::int64_t n_steps = 0;
    SolverConfig solver;
    std::uint64_t seed = 0;
    std::int64_t sample_stride = 1;
    std::string out_dir = "out";

    LVConfigSection lv;
    NBodyConfigSection nbody;
    VortexConfigSection vortex;

    void validate() const;
};

// Text config: "[section]" headers over "key = value" lines, # comments.
ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);
std::string serialize_config(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);  // FNV-1a over the serialization

// Named experiment presets: lv3, solar10, argon7, plane-vortex, sphere-vortex.
ExperimentConfig preset(const std::string& name, PresetScale scale);

struct BodyRecord {
    std::string label;
    double mass = 0.0;
    std::array<double, 3> position{};
    std::array<double, 3> velocity{};
};

struct BodySet {
    int dim = 3;
    std::string units;
    double G = 0.0;  // gravity data files carry G in the header
    bool has_G = false;
    std::vector<BodyRecord> bodies;
};

BodySet load_bodies(const std::string& path);
void save_bodies(const BodySet& set, const std::string& path);

// Momenta are p = m * v at assembly.
std::pair<NBodySystem, PhaseState> assemble_nbody(const BodySet& set,
                                                  const RadialPotential& potential);

// Vortex ensemble CSV: gamma,x,y[,z].
VortexEnsemble load_ensemble(const std::string& path, bool sphere);
void save_ensemble(const VortexEnsemble& ensemble, bool sphere, const std::string& path);

// Resolves a data file against the working directory, then the source tree.
std::string find_data_file(const std::string& relative);

std::vector<QuantityEvaluator> lv_quantities(const LVSystem& sys);
std::vector<QuantityEvaluator> nbody_quantities(const NBodySystem& sys);
std::vector<QuantityEvaluator> plane_quantities(const PlanarVortexSystem& sys);
std::vector<QuantityEvaluator> sphere_quantities(const SphereVortexSystem& sys);

struct ExperimentSetup {
    std::unique_ptr<OneStepScheme> scheme;
    PhaseState x0;
    std::vector<QuantityEvaluator> quantities;
    std::vector<std::string> state_labels;
};

ExperimentSetup build_setup(const ExperimentConfig& config);

struct RunSummary {
    ConservationReport report;
    std::int64_t steps = 0;
    std::int64_t total_iterations = 0;
    int max_step_iterations = 0;
    double wall_seconds = 0.0;
};

// Integrates the configured experiment, streaming trajectory.csv,
// conservation.csv, summary.csv and meta.json into out_dir.
RunSummary run(const ExperimentConfig& config);

// Convergence study on the configured system/method; fine-tau reference.
ConvergenceTable run_convergence(const ExperimentConfig& config,
                                 std::span<const double> taus, double t_final,
                                 int fine_factor = 64);

}  // namespace conint
