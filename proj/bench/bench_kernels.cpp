// Times the serial reference kernels against the OpenMP versions on the
// O(n^2) pairwise evaluations and checks the results stay bit-identical.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "conint/nbody.hpp"
#include "conint/point_vortex.hpp"

using namespace conint;

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double time_ms(Fn&& fn, int reps) {
    const auto start = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto stop = Clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

bool bitwise_equal(const PhaseState& a, const PhaseState& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Row {
    std::string name;
    double serial_ms;
    double parallel_ms;
    bool identical;
};

void print(const Row& row) {
    std::printf("%-22s serial %9.3f ms   omp %9.3f ms   speedup %5.2fx   bitwise %s\n",
                row.name.c_str(), row.serial_ms, row.parallel_ms,
                row.serial_ms / row.parallel_ms, row.identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? static_cast<std::size_t>(std::stoul(argv[1])) : 1024;
    const int reps = argc > 2 ? std::stoi(argv[2]) : 20;
    std::printf("pairwise kernels, n = %zu, %d reps each\n", n, reps);

    // plane vortices
    {
        VortexEnsemble ens = sample_plane_vortices(n, 5.0, 0.5 / static_cast<double>(n),
                                                   1.0 / static_cast<double>(n), 42);
        PlanarVortexSystem serial{n, ens.gamma, 1e-12, Kernel::Serial};
        PlanarVortexSystem parallel{n, ens.gamma, 1e-12, Kernel::Parallel};
        PhaseState guess = ens.state;
        for (double& v : guess) v *= 1.0 + 1e-6;

        Row rhs_row{"plane_rhs", 0, 0, false};
        PhaseState a, b;
        rhs_row.serial_ms = time_ms([&] { a = plane_rhs(serial, ens.state); }, reps);
        rhs_row.parallel_ms = time_ms([&] { b = plane_rhs(parallel, ens.state); }, reps);
        rhs_row.identical = bitwise_equal(a, b);
        print(rhs_row);

        Row map_row{"plane_dmm_map", 0, 0, false};
        map_row.serial_ms =
            time_ms([&] { a = plane_dmm_map(serial, ens.state, guess, 0.1); }, reps);
        map_row.parallel_ms =
            time_ms([&] { b = plane_dmm_map(parallel, ens.state, guess, 0.1); }, reps);
        map_row.identical = bitwise_equal(a, b);
        print(map_row);
    }

    // sphere vortices
    {
        VortexEnsemble ens = sample_sphere_vortices(n, 0.5 / static_cast<double>(n),
                                                    1.0 / static_cast<double>(n), 42);
        SphereVortexSystem serial{n, ens.gamma, 1e-14, Kernel::Serial};
        SphereVortexSystem parallel{n, ens.gamma, 1e-14, Kernel::Parallel};
        PhaseState guess = ens.state;
        for (double& v : guess) v *= 1.0 + 1e-8;

        Row rhs_row{"sphere_rhs", 0, 0, false};
        PhaseState a, b;
        rhs_row.serial_ms = time_ms([&] { a = sphere_rhs(serial, ens.state); }, reps);
        rhs_row.parallel_ms = time_ms([&] { b = sphere_rhs(parallel, ens.state); }, reps);
        rhs_row.identical = bitwise_equal(a, b);
        print(rhs_row);

        Row map_row{"sphere_dmm_map", 0, 0, false};
        map_row.serial_ms =
            time_ms([&] { a = sphere_dmm_map(serial, ens.state, guess, 0.1); }, reps);
        map_row.parallel_ms =
            time_ms([&] { b = sphere_dmm_map(parallel, ens.state, guess, 0.1); }, reps);
        map_row.identical = bitwise_equal(a, b);
        print(map_row);
    }

    // gravitating bodies on a ring
    {
        NBodySystem serial;
        serial.n = n;
        serial.dim = 3;
        serial.masses.assign(n, 1.0 / static_cast<double>(n));
        serial.potential = GravityPotential{1.0};
        serial.kernel = Kernel::Serial;
        NBodySystem parallel = serial;
        parallel.kernel = Kernel::Parallel;

        PhaseState state(serial.phase_dim(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = 2.0 * 3.14159265358979323846 * static_cast<double>(i) /
                               static_cast<double>(n);
            state[3 * i] = std::cos(phi);
            state[3 * i + 1] = std::sin(phi);
            state[3 * i + 2] = 0.01 * std::sin(3 * phi);
            state[3 * (n + i)] = -0.3 * std::sin(phi) / static_cast<double>(n);
            state[3 * (n + i) + 1] = 0.3 * std::cos(phi) / static_cast<double>(n);
        }
        PhaseState guess = state;
        for (double& v : guess) v *= 1.0 + 1e-8;

        Row rhs_row{"nbody_rhs", 0, 0, false};
        PhaseState a, b;
        rhs_row.serial_ms = time_ms([&] { a = nbody_rhs(serial, state); }, reps);
        rhs_row.parallel_ms = time_ms([&] { b = nbody_rhs(parallel, state); }, reps);
        rhs_row.identical = bitwise_equal(a, b);
        print(rhs_row);

        Row map_row{"nbody_dmm_map", 0, 0, false};
        map_row.serial_ms = time_ms([&] { a = nbody_dmm_map(serial, state, guess, 0.01); }, reps);
        map_row.parallel_ms =
            time_ms([&] { b = nbody_dmm_map(parallel, state, guess, 0.01); }, reps);
        map_row.identical = bitwise_equal(a, b);
        print(map_row);
    }
    return 0;
}
