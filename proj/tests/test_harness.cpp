#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "conint/experiment.hpp"

using namespace conint;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "conint_harness_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_temp(const std::string& name, const std::string& body) {
    const fs::path p = temp_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << body;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kMinimalLv = R"(# minimal three-species config
name = mini
[system]
kind = lv
n = 3
interaction = 1 1 1 ; 0 0 -2 ; 0 1 0
equilibrium = 0.5 0.5 0.5
invariant_weights = 0 1 2
x0 = 0.1 0.1 0.1
[run]
tau = 0.05
steps = 10
)";

}  // namespace

TEST_CASE("load_config fills defaults for a minimal lv config") {
    const std::string path = write_temp("mini.ini", kMinimalLv);
    const ExperimentConfig cfg = load_config(path);
    CHECK(cfg.system == SystemKind::LotkaVolterra);
    CHECK(cfg.method == MethodKind::DmmArith);  // default for lv
    CHECK(cfg.solver.abs_tolerance == 1e-14);   // global default
    CHECK(cfg.solver.max_iterations == 200);
    CHECK(cfg.sample_stride == 1);
    CHECK(cfg.lv.x0.size() == 3);
}

TEST_CASE("load_config rejects bad inputs with named errors") {
    SUBCASE("invalid method/system pair") {
        const std::string path = write_temp(
            "bad_method.ini", std::string(kMinimalLv) + "\n[run]\nmethod = verlet\n");
        try {
            load_config(path);
            FAIL("expected validation error");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("verlet") != std::string::npos);
        }
    }
    SUBCASE("lv must not use bare dmm") {
        const std::string path =
            write_temp("bad_dmm.ini", std::string(kMinimalLv) + "\n[run]\nmethod = dmm\n");
        CHECK_THROWS_AS(load_config(path), std::invalid_argument);
    }
    SUBCASE("unknown key carries the line number") {
        const std::string path = write_temp("bad_key.ini",
                                            "[system]\nkind = lv\nwhatever = 3\n");
        try {
            load_config(path);
            FAIL("expected parse error");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
            CHECK(std::string(e.what()).find("whatever") != std::string::npos);
        }
    }
    SUBCASE("non-numeric value names the key") {
        const std::string path =
            write_temp("bad_value.ini", "[system]\nkind = lv\n[run]\ntau = fast\n");
        try {
            load_config(path);
            FAIL("expected parse error");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("tau") != std::string::npos);
        }
    }
}

TEST_CASE("config round trip: write then load is identical") {
    for (const char* name : {"lv3", "solar10", "argon7", "plane-vortex", "sphere-vortex"}) {
        const ExperimentConfig a = preset(name, PresetScale::Desk);
        const std::string path =
            write_temp(std::string("roundtrip_") + name + ".ini", serialize_config(a));
        const ExperimentConfig b = load_config(path);
        CHECK(serialize_config(a) == serialize_config(b));
        CHECK(config_hash(a) == config_hash(b));
    }
}

TEST_CASE("presets carry the published experiment settings") {
    SUBCASE("lv3 paper") {
        const ExperimentConfig cfg = preset("lv3", PresetScale::Paper);
        CHECK(cfg.tau == 0.05);
        CHECK(cfg.n_steps == 1000);
        CHECK(cfg.solver.abs_tolerance == 1e-15);
        CHECK(cfg.lv.x0 == std::vector<double>{0.1, 0.1, 0.1});
        CHECK(cfg.method == MethodKind::DmmArith);
        CHECK(cfg.solver.guess_strategy.kind == GuessStrategy::Kind::ForwardEuler);
    }
    SUBCASE("solar10") {
        const ExperimentConfig paper = preset("solar10", PresetScale::Paper);
        CHECK(paper.tau == 5.0);
        CHECK(paper.n_steps == 4'000'000);
        const ExperimentConfig desk = preset("solar10", PresetScale::Desk);
        CHECK(desk.n_steps == 40'000);
        CHECK(desk.tau == 5.0);
        CHECK(desk.solver.guess_strategy.kind == GuessStrategy::Kind::PerturbedPrevious);
    }
    SUBCASE("argon7") {
        const ExperimentConfig cfg = preset("argon7", PresetScale::Paper);
        CHECK(cfg.tau == 5e-5);
        CHECK(cfg.n_steps == 40'000);
        CHECK(cfg.nbody.sigma == 0.341);
        CHECK(cfg.nbody.epsilon == 119.8);
        CHECK(preset("argon7", PresetScale::Desk).n_steps == 4'000);
    }
    SUBCASE("vortex desk scales") {
        const ExperimentConfig plane = preset("plane-vortex", PresetScale::Desk);
        CHECK(plane.vortex.n == 50);
        CHECK(plane.n_steps == 200);
        CHECK(plane.tau == 0.1);
        const ExperimentConfig sphere = preset("sphere-vortex", PresetScale::Desk);
        CHECK(sphere.vortex.n == 50);
        CHECK(sphere.n_steps == 200);
        const ExperimentConfig paper = preset("plane-vortex", PresetScale::Paper);
        CHECK(paper.vortex.n == 1000);
        CHECK(paper.vortex.min_dist == doctest::Approx(0.01));
        CHECK(paper.vortex.strength_scale == doctest::Approx(0.001));
        const ExperimentConfig sp = preset("sphere-vortex", PresetScale::Paper);
        CHECK(sp.vortex.min_dist == doctest::Approx(4.0 * 3.14159265358979 / 1000.0));
    }
    SUBCASE("unknown preset") {
        CHECK_THROWS_AS(preset("nope", PresetScale::Desk), std::invalid_argument);
    }
}

TEST_CASE("load_bodies") {
    SUBCASE("two-body file round trips bit-exactly") {
        BodySet set;
        set.dim = 3;
        set.units = "AU, day, Msun";
        set.G = 2.9591220828559115e-04;
        set.has_G = true;
        set.bodies = {{"a", 1.0, {0.1, 0.2, 0.3}, {-0.4, 0.5, -0.6}},
                      {"b", 1.25e-7, {1.0 / 3.0, 2.0, -7.7}, {0.123456789012345678, 0, 1}}};
        const std::string path = (temp_dir() / "pair.csv").string();
        save_bodies(set, path);
        const BodySet loaded = load_bodies(path);
        REQUIRE(loaded.bodies.size() == 2);
        CHECK(loaded.has_G);
        CHECK(loaded.G == set.G);
        CHECK(loaded.dim == 3);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(loaded.bodies[i].label == set.bodies[i].label);
            CHECK(loaded.bodies[i].mass == set.bodies[i].mass);
            for (std::size_t d = 0; d < 3; ++d) {
                CHECK(loaded.bodies[i].position[d] == set.bodies[i].position[d]);
                CHECK(loaded.bodies[i].velocity[d] == set.bodies[i].velocity[d]);
            }
        }
    }
    SUBCASE("missing mass column is named") {
        const std::string path = write_temp("nomass.csv",
                                            "# dim: 3\n"
                                            "label,x,y,z,vx,vy,vz\n"
                                            "a,1,2,3,4,5,6\n");
        try {
            load_bodies(path);
            FAIL("expected schema error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("mass") != std::string::npos);
        }
    }
    SUBCASE("shipped solar10 file loads with a dominant sun") {
        const BodySet set = load_bodies(find_data_file("solar10.csv"));
        REQUIRE(set.bodies.size() == 10);
        CHECK(set.has_G);
        double total = 0.0, sun = 0.0;
        for (const auto& b : set.bodies) {
            total += b.mass;
            if (b.label == "sun") sun = b.mass;
        }
        CHECK(sun / total > 0.99);
        // momenta come out as m*v
        auto [sys, state] = assemble_nbody(set, GravityPotential{set.G});
        CHECK(sys.n == 10);
        CHECK(state[3 * 10] == set.bodies[0].mass * set.bodies[0].velocity[0]);
    }
}

TEST_CASE("ensemble files round trip") {
    const VortexEnsemble plane = sample_plane_vortices(12, 5.0, 0.2, 0.5, 3);
    const std::string ppath = (temp_dir() / "plane_ens.csv").string();
    save_ensemble(plane, false, ppath);
    const VortexEnsemble pl = load_ensemble(ppath, false);
    CHECK(pl.state == plane.state);
    CHECK(pl.gamma == plane.gamma);

    const VortexEnsemble sphere = sample_sphere_vortices(12, 0.2, 0.5, 3);
    const std::string spath = (temp_dir() / "sphere_ens.csv").string();
    save_ensemble(sphere, true, spath);
    const VortexEnsemble sp = load_ensemble(spath, true);
    CHECK(sp.state == sphere.state);
    CHECK(sp.gamma == sphere.gamma);
}

TEST_CASE("run writes deterministic outputs and a consistent summary") {
    ExperimentConfig cfg = preset("lv3", PresetScale::Desk);
    cfg.n_steps = 50;
    cfg.out_dir = (temp_dir() / "run_a").string();
    const RunSummary a = run(cfg);

    CHECK(a.steps == 50);
    CHECK(a.total_iterations > 0);
    REQUIRE(a.report.quantities.size() == 1);
    CHECK(a.report.quantities[0].name == "V");
    CHECK(a.report.quantities[0].linf_drift <= 1e-13);

    ExperimentConfig cfg_b = cfg;
    cfg_b.out_dir = (temp_dir() / "run_b").string();
    run(cfg_b);
    for (const char* f : {"trajectory.csv", "conservation.csv", "summary.csv"}) {
        CHECK(slurp(fs::path(cfg.out_dir) / f) == slurp(fs::path(cfg_b.out_dir) / f));
        CHECK(!slurp(fs::path(cfg.out_dir) / f).empty());
    }

    // trajectory honors the stride
    ExperimentConfig strided = cfg;
    strided.sample_stride = 10;
    strided.out_dir = (temp_dir() / "run_c").string();
    run(strided);
    std::istringstream traj(slurp(fs::path(strided.out_dir) / "trajectory.csv"));
    int rows = 0;
    std::string line;
    while (std::getline(traj, line)) ++rows;
    CHECK(rows == 1 + 1 + 5);  // header + step 0 + steps 10..50
}

TEST_CASE("run and integrate walk the same trajectory") {
    // the streaming runner and the in-memory driver share solve_step and the
    // guess rng stream, so their drifts must agree bitwise
    ExperimentConfig cfg = preset("lv3", PresetScale::Desk);
    cfg.n_steps = 40;
    cfg.solver.guess_strategy = GuessStrategy::perturbed_previous(1e-7, cfg.seed + 1);
    cfg.out_dir = (temp_dir() / "run_eq").string();
    const RunSummary summary = run(cfg);

    ExperimentSetup setup = build_setup(cfg);
    const TimeSeries series =
        integrate(*setup.scheme, setup.x0, 0.0, cfg.tau, cfg.n_steps, cfg.solver);
    const ConservationReport rep = conservation_report(series, setup.quantities, 1);
    CHECK(summary.report["V"].linf_drift == rep["V"].linf_drift);
    CHECK(summary.report["V"].initial_value == rep["V"].initial_value);
}

TEST_CASE("run_convergence produces a second-order table for lv3") {
    ExperimentConfig cfg = preset("lv3", PresetScale::Desk);
    const double taus[] = {0.1, 0.05, 0.025};
    const ConvergenceTable t = run_convergence(cfg, taus, 2.0, 32);
    REQUIRE(t.slope_reliable);
    CHECK(t.slope == doctest::Approx(2.0).epsilon(0.075));
}
