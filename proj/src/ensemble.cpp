#include "collapse/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace collapse {

std::vector<double> SeriesMatrix::column_means() const {
    std::vector<double> means(cols, 0.0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) means[c] += at(r, c);
    if (rows > 0)
        for (double& m : means) m /= rows;
    return means;
}

namespace {

template <typename Body>
void for_each_trajectory(int n, ExecutionPolicy policy, const Body& body) {
#ifdef _OPENMP
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
#else
    (void)policy;
#endif
    for (int i = 0; i < n; ++i) body(i);
}

}  // namespace

GrwEnsembleResult run_grw_ensemble(const WaveFunction& psi0, const Hamiltonian& h,
                                   const GrwConfig& cfg, const EnsembleConfig& ens) {
    if (ens.n_trajectories < 1)
        throw std::invalid_argument("run_grw_ensemble: need at least one trajectory");

    const double sample_dt = cfg.sample_every * cfg.dt;
    const int n_samples =
        1 + static_cast<int>(std::floor(cfg.t_end / sample_dt + 1e-9));

    GrwEnsembleResult out;
    out.times.resize(n_samples);
    for (int s = 0; s < n_samples; ++s) out.times[s] = s * sample_dt;
    out.mean_x.resize(ens.n_trajectories, n_samples);
    out.var_x.resize(ens.n_trajectories, n_samples);
    out.energy.resize(ens.n_trajectories, n_samples);
    out.events.resize(ens.n_trajectories, n_samples);
    out.final_mean_x.assign(ens.n_trajectories, 0.0);

    for_each_trajectory(ens.n_trajectories, ens.policy, [&](int i) {
        const GrwTrajectory traj =
            run_grw_trajectory(psi0, h, cfg, ens.seed, static_cast<std::uint64_t>(i));
        const int got = static_cast<int>(traj.series.size());
        for (int s = 0; s < n_samples && s < got; ++s) {
            out.mean_x.at(i, s) = traj.series[s].mean_position;
            out.var_x.at(i, s) = traj.series[s].position_variance;
            out.energy.at(i, s) = traj.series[s].energy;
            double count = 0.0;
            for (const auto& ev : traj.events)
                if (ev.time <= traj.times[s]) count += 1.0;
            out.events.at(i, s) = count;
        }
        out.final_mean_x[i] = traj.series.empty() ? 0.0 : traj.series.back().mean_position;
    });

    return out;
}

CslEnsembleResult run_csl_ensemble(const WaveFunction& psi0, const Hamiltonian& h,
                                   const CslRunConfig& cfg, const EnsembleConfig& ens) {
    if (ens.n_trajectories < 1)
        throw std::invalid_argument("run_csl_ensemble: need at least one trajectory");
    if (cfg.scheme == CslStepper::Scheme::nonlinear &&
        cfg.noise_kind != NoiseSpec::Kind::white)
        throw std::invalid_argument("run_csl_ensemble: nonlinear scheme requires white noise");
    if (cfg.sample_every < 1)
        throw std::invalid_argument("run_csl_ensemble: sample_every must be >= 1");

    const long long n_steps = static_cast<long long>(std::llround(cfg.t_end / cfg.dt));
    if (n_steps < 1 || std::abs(n_steps * cfg.dt - cfg.t_end) > 1e-9 * cfg.t_end)
        throw std::invalid_argument("run_csl_ensemble: t_end must be a multiple of dt");
    const int n_samples = 1 + static_cast<int>(n_steps / cfg.sample_every);

    CslEnsembleResult out;
    out.times.resize(n_samples);
    for (int s = 0; s < n_samples; ++s) out.times[s] = s * cfg.sample_every * cfg.dt;
    out.mean_x.resize(ens.n_trajectories, n_samples);
    out.var_x.resize(ens.n_trajectories, n_samples);
    out.energy.resize(ens.n_trajectories, n_samples);
    out.final_mean_x.assign(ens.n_trajectories, 0.0);
    out.scheme = cfg.scheme == CslStepper::Scheme::nonlinear ? "nonlinear" : "linear";
    if (cfg.noise_kind == NoiseSpec::Kind::exponential)
        out.notes = "colored noise: linear equation valid to first order in lambda";

    const CslTrajectoryConfig traj_cfg{cfg.scheme, cfg.noise_kind, cfg.omega_c, cfg.lambda,
                                       cfg.r_c, cfg.mass_ratio, cfg.t_end, cfg.dt,
                                       cfg.sample_every};

    for_each_trajectory(ens.n_trajectories, ens.policy, [&](int i) {
        const CslTrajectory traj =
            run_csl_trajectory(psi0, h, traj_cfg, ens.seed, static_cast<std::uint64_t>(i));
        const int got = static_cast<int>(traj.series.size());
        for (int s = 0; s < n_samples && s < got; ++s) {
            out.mean_x.at(i, s) = traj.series[s].mean_position;
            out.var_x.at(i, s) = traj.series[s].position_variance;
            out.energy.at(i, s) = traj.series[s].energy;
        }
        out.final_mean_x[i] = traj.series.back().mean_position;
    });

    return out;
}

std::vector<double> grw_offdiagonal_weight(const WaveFunction& psi0, const Hamiltonian& h,
                                           const GrwConfig& cfg,
                                           const std::vector<double>& checkpoints,
                                           const EnsembleConfig& ens) {
    const Grid1D& g = psi0.grid;
    const int n = g.n_points;
    const int n_check = static_cast<int>(checkpoints.size());

    // Positive-x indices and negative-x indices.
    std::vector<int> pos, neg;
    for (int j = 0; j < n; ++j) {
        if (g.x(j) > 0.0) pos.push_back(j);
        else if (g.x(j) < 0.0) neg.push_back(j);
    }

    const std::size_t block = pos.size() * neg.size();
    int n_threads = 1;
#ifdef _OPENMP
    if (ens.policy == ExecutionPolicy::parallel) n_threads = omp_get_max_threads();
#endif
    std::vector<std::vector<std::complex<double>>> partial(
        n_threads, std::vector<std::complex<double>>(block * n_check, 0.0));

    for_each_trajectory(ens.n_trajectories, ens.policy, [&](int i) {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        auto& acc = partial[tid];

        RngStream rng(ens.seed, static_cast<std::uint64_t>(i));
        const std::vector<double> event_times = sample_collapse_times(cfg.rate, cfg.t_end, rng);
        Propagator prop(g, h, cfg.dt);
        WaveFunction psi = psi0;
        double t = 0.0;
        std::size_t next_event = 0;

        auto advance_to = [&](double target) {
            const double span = target - t;
            if (span <= 0.0) { t = target; return; }
            const long long full = static_cast<long long>(std::floor(span / cfg.dt + 1e-9));
            for (long long k = 0; k < full; ++k) prop.step_inplace(psi);
            const double rem = span - full * cfg.dt;
            if (rem > 1e-12 * cfg.dt) Propagator(g, h, rem).step_inplace(psi);
            t = target;
        };

        for (int c = 0; c < n_check; ++c) {
            while (next_event < event_times.size() && event_times[next_event] <= checkpoints[c]) {
                advance_to(event_times[next_event]);
                const double center = sample_collapse_center(psi, cfg.r_c, rng);
                psi = apply_localization(psi, center, cfg.r_c);
                ++next_event;
            }
            advance_to(checkpoints[c]);
            std::size_t idx = static_cast<std::size_t>(c) * block;
            for (int a : pos) {
                const std::complex<double> za = psi.amp[a];
                for (int b : neg) acc[idx++] += za * std::conj(psi.amp[b]);
            }
        }
    });

    // Merge thread partials in fixed order, then integrate |rho| over the quadrant.
    const double cell = g.dx() * g.dx() / ens.n_trajectories;
    std::vector<double> weight(n_check, 0.0);
    for (int c = 0; c < n_check; ++c) {
        for (std::size_t e = 0; e < block; ++e) {
            std::complex<double> rho(0.0, 0.0);
            for (int tdx = 0; tdx < n_threads; ++tdx)
                rho += partial[tdx][static_cast<std::size_t>(c) * block + e];
            weight[c] += std::abs(rho) * cell;
        }
    }
    return weight;
}

}  // namespace collapse
