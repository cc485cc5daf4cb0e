#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collapse/csl.hpp"
#include "collapse/grw.hpp"

namespace collapse {

/// serial runs the reference single-thread loop; parallel distributes
/// trajectories over OpenMP threads. Both produce identical results: each
/// trajectory draws from its own (seed, index) stream and writes into its own
/// row, and reductions run serially in index order afterwards.
enum class ExecutionPolicy { serial, parallel };

struct EnsembleConfig {
    int n_trajectories;
    std::uint64_t seed;
    ExecutionPolicy policy = ExecutionPolicy::parallel;
};

/// Row-major [trajectory][sample] store of per-trajectory series.
struct SeriesMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    void resize(int r, int c) { rows = r; cols = c; v.assign(static_cast<std::size_t>(r) * c, 0.0); }
    double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }

    /// Column means, accumulated in row order (deterministic).
    std::vector<double> column_means() const;
};

struct GrwEnsembleResult {
    std::vector<double> times;
    SeriesMatrix mean_x;     // per-trajectory <x>(t)
    SeriesMatrix var_x;      // per-trajectory Var x(t)
    SeriesMatrix energy;     // per-trajectory <H>(t)
    SeriesMatrix events;     // cumulative collapse count at each sample time
    std::vector<double> final_mean_x;  // per-trajectory
};

struct CslEnsembleResult {
    std::vector<double> times;
    SeriesMatrix mean_x;
    SeriesMatrix var_x;
    SeriesMatrix energy;
    std::vector<double> final_mean_x;
    std::string scheme;
    std::string notes;  // e.g. the first-order-in-lambda caveat for colored noise
};

GrwEnsembleResult run_grw_ensemble(const WaveFunction& psi0, const Hamiltonian& h,
                                   const GrwConfig& cfg, const EnsembleConfig& ens);

struct CslRunConfig {
    CslStepper::Scheme scheme;
    NoiseSpec::Kind noise_kind;
    double omega_c = 0.0;   // colored only
    double lambda;
    double r_c;
    double mass_ratio = 1.0;  // m / m0
    double t_end;
    double dt;
    int sample_every = 1;
};

CslEnsembleResult run_csl_ensemble(const WaveFunction& psi0, const Hamiltonian& h,
                                   const CslRunConfig& cfg, const EnsembleConfig& ens);

/// Ensemble-averaged off-diagonal weight W(t_k) = integral over the quadrant
/// {x > 0, x' < 0} of |rho(x, x')|, with rho reconstructed from the GRW
/// ensemble at each checkpoint. This is the declared observable proxy for
/// superposition suppression; its decay rate estimates grw_decoherence_rate.
std::vector<double> grw_offdiagonal_weight(const WaveFunction& psi0, const Hamiltonian& h,
                                           const GrwConfig& cfg,
                                           const std::vector<double>& checkpoints,
                                           const EnsembleConfig& ens);

}  // namespace collapse
