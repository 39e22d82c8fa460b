#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conint/csv.hpp"
#include "conint/experiment.hpp"
#include "conint/version.hpp"

namespace {

void print_summary(const conint::RunSummary& summary) {
    std::printf("steps            %lld\n", static_cast<long long>(summary.steps));
    std::printf("iterations       total %lld, max/step %d\n",
                static_cast<long long>(summary.total_iterations),
                summary.max_step_iterations);
    std::printf("wall time        %.3f s\n", summary.wall_seconds);
    for (const auto& q : summary.report.quantities)
        std::printf("Error[%s]%*s %.6e\n", q.name.c_str(),
                    static_cast<int>(9 - std::min<std::size_t>(9, q.name.size())), "",
                    q.linf_drift);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conservative one-step integrators for many-body dynamics"};
    app.set_version_flag("--version", conint::kVersion);
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Integrate one experiment and write CSV reports");
    std::string config_path, preset_name, scale_str = "desk", method_str, out_dir;
    double tau_override = 0.0;
    long long steps_override = -1;
    run_cmd->add_option("--config", config_path, "Experiment config file");
    run_cmd->add_option("--preset", preset_name,
                        "Named preset: lv3|solar10|argon7|plane-vortex|sphere-vortex");
    run_cmd->add_option("--scale", scale_str, "Preset scale: paper|desk")
        ->check(CLI::IsMember({"paper", "desk"}));
    run_cmd->add_option("--method", method_str, "Override the preset method");
    run_cmd->add_option("--tau", tau_override, "Override the step size");
    run_cmd->add_option("--steps", steps_override, "Override the step count");
    run_cmd->add_option("--out-dir", out_dir, "Output directory");

    // converge
    auto* conv_cmd = app.add_subcommand("converge", "Convergence-order study for a preset");
    std::string conv_preset, conv_method, taus_str, conv_out;
    double conv_t_final = 0.0;
    int fine_factor = 64;
    conv_cmd->add_option("--preset", conv_preset, "Preset name")->required();
    conv_cmd->add_option("--method", conv_method, "Method override");
    conv_cmd->add_option("--taus", taus_str, "Comma-separated step sizes, decreasing")
        ->required();
    conv_cmd->add_option("--t-final", conv_t_final,
                         "Final time (default 20 * largest tau)");
    conv_cmd->add_option("--fine-factor", fine_factor, "Fine-tau reference factor (>= 16)");
    conv_cmd->add_option("--out", conv_out, "Write (tau, error) rows to this CSV");

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Draw a reproducible vortex ensemble");
    std::string sample_system, sample_out;
    std::size_t sample_n = 0;
    unsigned long long sample_seed = 0;
    double sample_min_dist = -1.0, sample_box = 5.0, sample_scale = -1.0;
    sample_cmd->add_option("--system", sample_system, "plane|sphere")
        ->required()
        ->check(CLI::IsMember({"plane", "sphere"}));
    sample_cmd->add_option("--n", sample_n, "Number of vortices")->required();
    sample_cmd->add_option("--seed", sample_seed, "RNG seed")->required();
    sample_cmd->add_option("--out", sample_out, "Output CSV path")->required();
    sample_cmd->add_option("--min-dist", sample_min_dist,
                           "Minimum pair distance (default 10/n plane, 4pi/n sphere)");
    sample_cmd->add_option("--box", sample_box, "Plane box half-width");
    sample_cmd->add_option("--strength-scale", sample_scale,
                           "Circulations uniform on [-s, s] (default 1/n)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            conint::ExperimentConfig cfg;
            if (!config_path.empty()) {
                cfg = conint::load_config(config_path);
            } else if (!preset_name.empty()) {
                cfg = conint::preset(preset_name, conint::scale_from_string(scale_str));
            } else {
                std::fprintf(stderr, "run: need --config or --preset\n");
                return 2;
            }
            if (!method_str.empty()) cfg.method = conint::method_kind_from_string(method_str);
            if (tau_override != 0.0) cfg.tau = tau_override;
            if (steps_override >= 0) cfg.n_steps = steps_override;
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            cfg.validate();
            std::printf("running %s: %s / %s, tau=%g, N=%lld\n", cfg.name.c_str(),
                        conint::to_string(cfg.system).c_str(),
                        conint::to_string(cfg.method).c_str(), cfg.tau,
                        static_cast<long long>(cfg.n_steps));
            print_summary(conint::run(cfg));
            std::printf("outputs in %s\n", cfg.out_dir.c_str());
        } else if (conv_cmd->parsed()) {
            conint::ExperimentConfig cfg =
                conint::preset(conv_preset, conint::PresetScale::Desk);
            if (!conv_method.empty()) cfg.method = conint::method_kind_from_string(conv_method);
            cfg.validate();
            std::vector<double> taus;
            std::string token;
            for (std::size_t i = 0; i <= taus_str.size(); ++i) {
                if (i == taus_str.size() || taus_str[i] == ',') {
                    if (!token.empty()) taus.push_back(std::stod(token));
                    token.clear();
                } else {
                    token += taus_str[i];
                }
            }
            if (conv_t_final == 0.0 && !taus.empty()) conv_t_final = 20.0 * taus.front();
            const conint::ConvergenceTable table =
                conint::run_convergence(cfg, taus, conv_t_final, fine_factor);
            std::printf("tau, global error (t_final=%g, reference tau/%d)\n", conv_t_final,
                        fine_factor);
            for (const auto& p : table.points)
                std::printf("%-12g %.6e\n", p.tau, p.error);
            if (table.slope_reliable)
                std::printf("fitted slope %.3f (rms residual %.3f)\n", table.slope,
                            table.fit_residual);
            else
                std::printf("fitted slope unreliable (errors at the noise floor)\n");
            if (!conv_out.empty()) {
                conint::CsvWriter csv(conv_out);
                csv.row({"tau", "error"});
                for (const auto& p : table.points)
                    csv.row({conint::format_full(p.tau), conint::format_full(p.error)});
            }
        } else if (sample_cmd->parsed()) {
            const bool sphere = sample_system == "sphere";
            const auto n = sample_n;
            const double min_dist = sample_min_dist >= 0.0
                                        ? sample_min_dist
                                        : (sphere ? 4.0 * 3.14159265358979323846 /
                                                        static_cast<double>(n)
                                                  : 10.0 / static_cast<double>(n));
            const double scale =
                sample_scale > 0.0 ? sample_scale : 1.0 / static_cast<double>(n);
            const conint::VortexEnsemble ens =
                sphere ? conint::sample_sphere_vortices(n, min_dist, scale, sample_seed)
                       : conint::sample_plane_vortices(n, sample_box, min_dist, scale,
                                                       sample_seed);
            conint::save_ensemble(ens, sphere, sample_out);
            std::printf("wrote %zu vortices to %s\n", ens.gamma.size(), sample_out.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
