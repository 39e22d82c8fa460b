#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "conint/csv.hpp"
#include "conint/experiment.hpp"

namespace conint {

std::string to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::LotkaVolterra: return "lv";
        case SystemKind::NBodyGravity: return "nbody-gravity";
        case SystemKind::NBodyLennardJones: return "nbody-lj";
        case SystemKind::VortexPlane: return "vortex-plane";
        case SystemKind::VortexSphere: return "vortex-sphere";
    }
    return "?";
}

std::string to_string(MethodKind kind) {
    switch (kind) {
        case MethodKind::DmmArith: return "dmm-arith";
        case MethodKind::DmmGeo: return "dmm-geo";
        case MethodKind::Dmm: return "dmm";
        case MethodKind::Midpoint: return "midpoint";
        case MethodKind::Rk4: return "rk4";
        case MethodKind::Verlet: return "verlet";
    }
    return "?";
}

SystemKind system_kind_from_string(const std::string& s) {
    if (s == "lv") return SystemKind::LotkaVolterra;
    if (s == "nbody-gravity") return SystemKind::NBodyGravity;
    if (s == "nbody-lj") return SystemKind::NBodyLennardJones;
    if (s == "vortex-plane") return SystemKind::VortexPlane;
    if (s == "vortex-sphere") return SystemKind::VortexSphere;
    throw std::invalid_argument("unknown system kind: " + s);
}

MethodKind method_kind_from_string(const std::string& s) {
    if (s == "dmm-arith") return MethodKind::DmmArith;
    if (s == "dmm-geo") return MethodKind::DmmGeo;
    if (s == "dmm") return MethodKind::Dmm;
    if (s == "midpoint") return MethodKind::Midpoint;
    if (s == "rk4") return MethodKind::Rk4;
    if (s == "verlet") return MethodKind::Verlet;
    throw std::invalid_argument("unknown method: " + s);
}

PresetScale scale_from_string(const std::string& s) {
    if (s == "paper") return PresetScale::Paper;
    if (s == "desk") return PresetScale::Desk;
    throw std::invalid_argument("unknown scale: " + s + " (expected paper or desk)");
}

void ExperimentConfig::validate() const {
    solver.validate();
    if (!(tau != 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("config: tau must be nonzero and finite");
    if (n_steps < 0) throw std::invalid_argument("config: steps must be >= 0");
    if (sample_stride < 1) throw std::invalid_argument("config: sample_stride must be >= 1");

    const bool is_lv = system == SystemKind::LotkaVolterra;
    const bool is_nbody =
        system == SystemKind::NBodyGravity || system == SystemKind::NBodyLennardJones;
    switch (method) {
        case MethodKind::DmmArith:
        case MethodKind::DmmGeo:
            if (!is_lv)
                throw std::invalid_argument("config: method " + to_string(method) +
                                            " is only valid for system lv");
            break;
        case MethodKind::Dmm:
            if (is_lv)
                throw std::invalid_argument(
                    "config: system lv needs an explicit mean, use dmm-arith or dmm-geo");
            break;
        case MethodKind::Verlet:
            if (!is_nbody)
                throw std::invalid_argument("config: method verlet requires an nbody system");
            break;
        case MethodKind::Midpoint:
        case MethodKind::Rk4:
            break;
    }

    if (is_lv) {
        if (lv.n == 0) throw std::invalid_argument("config: lv.n missing");
        if (lv.interaction.size() != lv.n * lv.n)
            throw std::invalid_argument("config: lv.interaction must have n*n entries");
        if (lv.equilibrium.size() != lv.n)
            throw std::invalid_argument("config: lv.equilibrium must have n entries");
        if (!lv.invariant_weights.empty() && lv.invariant_weights.size() != lv.n)
            throw std::invalid_argument("config: lv.invariant_weights must have n entries");
        if (lv.x0.size() != lv.n)
            throw std::invalid_argument("config: lv.x0 must have n entries");
    } else if (is_nbody) {
        if (nbody.bodies_file.empty())
            throw std::invalid_argument("config: nbody.bodies_file missing");
        if (system == SystemKind::NBodyLennardJones &&
            (!(nbody.epsilon > 0.0) || !(nbody.sigma > 0.0)))
            throw std::invalid_argument("config: nbody-lj requires epsilon > 0 and sigma > 0");
    } else {
        if (vortex.ensemble_file.empty()) {
            if (vortex.n == 0) throw std::invalid_argument("config: vortex.n missing");
            if (!(vortex.strength_scale > 0.0))
                throw std::invalid_argument("config: vortex.strength_scale must be > 0");
            if (!(vortex.min_dist >= 0.0))
                throw std::invalid_argument("config: vortex.min_dist must be >= 0");
            if (system == SystemKind::VortexPlane && !(vortex.box_half_width > 0.0))
                throw std::invalid_argument("config: vortex.box_half_width must be > 0");
        }
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_vector(const std::string& value, const std::string& key, int line) {
    std::string cleaned = value;
    for (char& c : cleaned)
        if (c == ';' || c == ',') c = ' ';
    std::istringstream in(cleaned);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof())
        throw std::invalid_argument("config line " + std::to_string(line) + ": key " + key +
                                    " has a non-numeric entry");
    return out;
}

double parse_double(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config line " + std::to_string(line) + ": key " + key +
                                    " expects a number, got '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& value, const std::string& key, int line) {
    const double v = parse_double(value, key, line);
    const auto i = static_cast<std::int64_t>(std::llround(v));
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("config line " + std::to_string(line) + ": key " + key +
                                    " expects an integer, got '" + value + "'");
    return i;
}

std::string guess_to_string(const GuessStrategy& g) {
    switch (g.kind) {
        case GuessStrategy::Kind::ForwardEuler: return "forward-euler";
        case GuessStrategy::Kind::PreviousSolution: return "previous";
        case GuessStrategy::Kind::PerturbedPrevious: return "perturbed";
    }
    return "?";
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);

    ExperimentConfig cfg;
    std::string section;
    std::string raw;
    int line = 0;
    std::string system_str, method_str, guess_str;
    bool have_system = false, have_method = false;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line) +
                                            ": malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "system" && section != "run" && section != "solver")
                throw std::invalid_argument("config line " + std::to_string(line) +
                                            ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line) +
                                        ": expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));

        if (section.empty()) {
            if (key == "name") {
                cfg.name = value;
                continue;
            }
            throw std::invalid_argument("config line " + std::to_string(line) +
                                        ": key '" + key + "' outside any section");
        }

        if (section == "system") {
            if (key == "kind") {
                system_str = value;
                have_system = true;
            } else if (key == "n") {
                const auto n = parse_int(value, key, line);
                cfg.lv.n = static_cast<std::size_t>(n);
                cfg.vortex.n = static_cast<std::size_t>(n);
            } else if (key == "interaction") {
                cfg.lv.interaction = parse_vector(value, key, line);
            } else if (key == "equilibrium") {
                cfg.lv.equilibrium = parse_vector(value, key, line);
            } else if (key == "invariant_weights") {
                cfg.lv.invariant_weights = parse_vector(value, key, line);
            } else if (key == "x0") {
                cfg.lv.x0 = parse_vector(value, key, line);
            } else if (key == "bodies_file") {
                cfg.nbody.bodies_file = value;
            } else if (key == "epsilon") {
                cfg.nbody.epsilon = parse_double(value, key, line);
            } else if (key == "sigma") {
                cfg.nbody.sigma = parse_double(value, key, line);
            } else if (key == "box_half_width") {
                cfg.vortex.box_half_width = parse_double(value, key, line);
            } else if (key == "min_dist") {
                cfg.vortex.min_dist = parse_double(value, key, line);
            } else if (key == "strength_scale") {
                cfg.vortex.strength_scale = parse_double(value, key, line);
            } else if (key == "ensemble_file") {
                cfg.vortex.ensemble_file = value;
            } else {
                throw std::invalid_argument("config line " + std::to_string(line) +
                                            ": unknown [system] key '" + key + "'");
            }
        } else if (section == "run") {
            if (key == "method") {
                method_str = value;
                have_method = true;
            } else if (key == "tau") {
                cfg.tau = parse_double(value, key, line);
            } else if (key == "steps") {
                cfg.n_steps = parse_int(value, key, line);
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(parse_int(value, key, line));
            } else if (key == "sample_stride") {
                cfg.sample_stride = parse_int(value, key, line);
            } else if (key == "out_dir") {
                cfg.out_dir = value;
            } else {
                throw std::invalid_argument("config line " + std::to_string(line) +
                                            ": unknown [run] key '" + key + "'");
            }
        } else {  // solver
            if (key == "abs_tolerance") {
                cfg.solver.abs_tolerance = parse_double(value, key, line);
            } else if (key == "max_iterations") {
                cfg.solver.max_iterations = static_cast<int>(parse_int(value, key, line));
            } else if (key == "guess") {
                guess_str = value;
            } else if (key == "perturb_magnitude") {
                cfg.solver.guess_strategy.rel_magnitude = parse_double(value, key, line);
            } else {
                throw std::invalid_argument("config line " + std::to_string(line) +
                                            ": unknown [solver] key '" + key + "'");
            }
        }
    }

    if (!have_system) throw std::invalid_argument("config: missing [system] kind");
    cfg.system = system_kind_from_string(system_str);
    if (have_method) {
        cfg.method = method_kind_from_string(method_str);
    } else {
        cfg.method = cfg.system == SystemKind::LotkaVolterra ? MethodKind::DmmArith
                                                             : MethodKind::Dmm;
    }
    if (!guess_str.empty()) {
        if (guess_str == "forward-euler")
            cfg.solver.guess_strategy.kind = GuessStrategy::Kind::ForwardEuler;
        else if (guess_str == "previous")
            cfg.solver.guess_strategy.kind = GuessStrategy::Kind::PreviousSolution;
        else if (guess_str == "perturbed")
            cfg.solver.guess_strategy.kind = GuessStrategy::Kind::PerturbedPrevious;
        else
            throw std::invalid_argument("config: unknown guess strategy '" + guess_str + "'");
    }
    cfg.solver.guess_strategy.seed = cfg.seed + 1;  // solver stream distinct from sampler
    cfg.validate();
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "name = " << cfg.name << "\n\n[system]\n";
    out << "kind = " << to_string(cfg.system) << "\n";
    auto vec = [&](const char* key, const std::vector<double>& v) {
        if (v.empty()) return;
        out << key << " =";
        for (double x : v) out << ' ' << format_full(x);
        out << '\n';
    };
    switch (cfg.system) {
        case SystemKind::LotkaVolterra:
            out << "n = " << cfg.lv.n << '\n';
            vec("interaction", cfg.lv.interaction);
            vec("equilibrium", cfg.lv.equilibrium);
            vec("invariant_weights", cfg.lv.invariant_weights);
            vec("x0", cfg.lv.x0);
            break;
        case SystemKind::NBodyGravity:
            out << "bodies_file = " << cfg.nbody.bodies_file << '\n';
            break;
        case SystemKind::NBodyLennardJones:
            out << "bodies_file = " << cfg.nbody.bodies_file << '\n';
            out << "epsilon = " << format_full(cfg.nbody.epsilon) << '\n';
            out << "sigma = " << format_full(cfg.nbody.sigma) << '\n';
            break;
        case SystemKind::VortexPlane:
        case SystemKind::VortexSphere:
            if (!cfg.vortex.ensemble_file.empty()) {
                out << "ensemble_file = " << cfg.vortex.ensemble_file << '\n';
            } else {
                out << "n = " << cfg.vortex.n << '\n';
                if (cfg.system == SystemKind::VortexPlane)
                    out << "box_half_width = " << format_full(cfg.vortex.box_half_width) << '\n';
                out << "min_dist = " << format_full(cfg.vortex.min_dist) << '\n';
                out << "strength_scale = " << format_full(cfg.vortex.strength_scale) << '\n';
            }
            break;
    }
    out << "\n[run]\n";
    out << "method = " << to_string(cfg.method) << '\n';
    out << "tau = " << format_full(cfg.tau) << '\n';
    out << "steps = " << cfg.n_steps << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "sample_stride = " << cfg.sample_stride << '\n';
    out << "out_dir = " << cfg.out_dir << '\n';
    out << "\n[solver]\n";
    out << "abs_tolerance = " << format_full(cfg.solver.abs_tolerance) << '\n';
    out << "max_iterations = " << cfg.solver.max_iterations << '\n';
    out << "guess = " << guess_to_string(cfg.solver.guess_strategy) << '\n';
    if (cfg.solver.guess_strategy.kind == GuessStrategy::Kind::PerturbedPrevious)
        out << "perturb_magnitude = " << format_full(cfg.solver.guess_strategy.rel_magnitude)
            << '\n';
    return out.str();
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_config: cannot open " + path);
    out << serialize_config(cfg);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    // FNV-1a, 64-bit
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : serialize_config(cfg)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

ExperimentConfig preset(const std::string& name, PresetScale scale) {
    const bool paper = scale == PresetScale::Paper;
    ExperimentConfig cfg;
    cfg.name = name + (paper ? "-paper" : "-desk");
    cfg.out_dir = "out/" + cfg.name;

    if (name == "lv3") {
        // three-species system with invariant weights diag(0,1,2)
        cfg.system = SystemKind::LotkaVolterra;
        cfg.method = MethodKind::DmmArith;
        cfg.lv.n = 3;
        cfg.lv.interaction = {1, 1, 1, 0, 0, -2, 0, 1, 0};
        cfg.lv.equilibrium = {0.5, 0.5, 0.5};
        cfg.lv.invariant_weights = {0, 1, 2};
        cfg.lv.x0 = {0.1, 0.1, 0.1};
        cfg.tau = 0.05;
        cfg.n_steps = 1000;  // T = 50 at both scales; the run is cheap
        cfg.solver.abs_tolerance = 1e-15;
        cfg.solver.guess_strategy = GuessStrategy::forward_euler();
    } else if (name == "solar10") {
        cfg.system = SystemKind::NBodyGravity;
        cfg.method = MethodKind::Dmm;
        cfg.nbody.bodies_file = find_data_file("solar10.csv");
        cfg.tau = 5.0;  // days
        cfg.n_steps = paper ? 4'000'000 : 40'000;
        cfg.solver.abs_tolerance = 1e-14;
        cfg.solver.guess_strategy = GuessStrategy::perturbed_previous();
        cfg.sample_stride = 100;  // every 500 days
        cfg.seed = 1;
    } else if (name == "argon7") {
        cfg.system = SystemKind::NBodyLennardJones;
        cfg.method = MethodKind::Dmm;
        cfg.nbody.bodies_file = find_data_file("argon7.csv");
        cfg.nbody.epsilon = 119.8;  // well depth over k_B; energies reported rescaled
        cfg.nbody.sigma = 0.341;    // nm
        cfg.tau = 5e-5;             // 50 fs in ns
        cfg.n_steps = paper ? 40'000 : 4'000;
        cfg.solver.abs_tolerance = 1e-14;
        cfg.solver.guess_strategy = GuessStrategy::perturbed_previous();
        cfg.seed = 1;
    } else if (name == "plane-vortex") {
        cfg.system = SystemKind::VortexPlane;
        cfg.method = MethodKind::Dmm;
        cfg.tau = 0.1;
        cfg.vortex.box_half_width = 5.0;
        if (paper) {
            cfg.vortex.n = 1000;
            cfg.vortex.min_dist = 10.0 / 1000;
            cfg.vortex.strength_scale = 1.0 / 1000;
            cfg.n_steps = 1000;  // T = 100
            cfg.solver.abs_tolerance = 1e-14;
        } else {
            // Smaller ensemble with stronger circulations; keeps the
            // method contrast visible at short runs and the tight drift
            // bounds reachable.
            cfg.vortex.n = 50;
            cfg.vortex.min_dist = 10.0 / 50;
            cfg.vortex.strength_scale = 0.2;
            cfg.n_steps = 200;
            cfg.solver.abs_tolerance = 1e-15;
        }
        cfg.solver.guess_strategy = GuessStrategy::perturbed_previous();
        cfg.seed = 3;
    } else if (name == "sphere-vortex") {
        cfg.system = SystemKind::VortexSphere;
        cfg.method = MethodKind::Dmm;
        cfg.tau = 0.1;
        if (paper) {
            cfg.vortex.n = 1000;
            cfg.vortex.min_dist = 4.0 * std::numbers::pi / 1000;
            cfg.vortex.strength_scale = 1.0 / 1000;
            cfg.n_steps = 1000;
            cfg.solver.abs_tolerance = 1e-14;
        } else {
            cfg.vortex.n = 50;
            cfg.vortex.min_dist = 4.0 * std::numbers::pi / 50;
            cfg.vortex.strength_scale = 1.0 / 50;
            cfg.n_steps = 200;
            cfg.solver.abs_tolerance = 1e-15;
        }
        cfg.solver.guess_strategy = GuessStrategy::perturbed_previous();
        cfg.seed = 1;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    cfg.solver.guess_strategy.seed = cfg.seed + 1;
    cfg.validate();
    return cfg;
}

}  // namespace conint
