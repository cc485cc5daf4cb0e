// Benchmark: serial reference vs OpenMP trajectory ensembles, with a checksum
// comparison proving both paths produce identical results.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "collapse/ensemble.hpp"

using namespace collapse;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double checksum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    int trajectories = 400;
    if (argc > 1) trajectories = std::stoi(argv[1]);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel falls back to serial\n");
#endif
    std::printf("trajectories: %d\n\n", trajectories);

    // GRW: cat state, moderately frequent collapses.
    {
        const Grid1D g(-32.0, 32.0, 256);
        const WaveFunction cat = superpose(gaussian_packet(g, -6.0, 0.6, 0.0),
                                           gaussian_packet(g, 6.0, 0.6, 0.0), 1.0, 1.0);
        const Hamiltonian h = Hamiltonian::free_particle(100.0);
        const GrwConfig cfg{8.0, 1.0, 1.0, 1e-3, 100};

        auto t0 = clock_type::now();
        const auto serial = run_grw_ensemble(cat, h, cfg, {trajectories, 1, ExecutionPolicy::serial});
        const double ts = seconds_since(t0);

        t0 = clock_type::now();
        const auto parallel =
            run_grw_ensemble(cat, h, cfg, {trajectories, 1, ExecutionPolicy::parallel});
        const double tp = seconds_since(t0);

        const bool same = serial.mean_x.v == parallel.mean_x.v &&
                          serial.events.v == parallel.events.v;
        std::printf("grw ensemble:      serial %7.3f s   parallel %7.3f s   speedup %.2fx   %s "
                    "(checksum %.12e)\n",
                    ts, tp, ts / tp, same ? "identical" : "MISMATCH",
                    checksum(parallel.mean_x.v));
    }

    // CSL nonlinear: the heavier per-step kernel (several FFTs per step).
    {
        const Grid1D g(-16.0, 16.0, 256);
        const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0);
        const Hamiltonian h = Hamiltonian::free_particle(1.0);
        const CslRunConfig cfg{CslStepper::Scheme::nonlinear, NoiseSpec::Kind::white, 0.0,
                               0.5, 1.0, 1.0, 1.0, 2e-3, 100};

        auto t0 = clock_type::now();
        const auto serial = run_csl_ensemble(psi, h, cfg, {trajectories, 2, ExecutionPolicy::serial});
        const double ts = seconds_since(t0);

        t0 = clock_type::now();
        const auto parallel =
            run_csl_ensemble(psi, h, cfg, {trajectories, 2, ExecutionPolicy::parallel});
        const double tp = seconds_since(t0);

        const bool same = serial.energy.v == parallel.energy.v;
        std::printf("csl nonlinear:     serial %7.3f s   parallel %7.3f s   speedup %.2fx   %s "
                    "(checksum %.12e)\n",
                    ts, tp, ts / tp, same ? "identical" : "MISMATCH",
                    checksum(parallel.energy.v));
    }

    return 0;
}
