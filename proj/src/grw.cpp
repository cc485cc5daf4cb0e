#include "collapse/grw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "collapse/noise.hpp"
#include "collapse/propagator.hpp"

namespace collapse {

std::vector<double> sample_collapse_times(double rate, double t_end, RngStream& rng) {
    if (rate < 0.0) throw std::invalid_argument("sample_collapse_times: rate must be >= 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("sample_collapse_times: t_end must be > 0");

    std::vector<double> times;
    if (rate == 0.0) return times;
    double t = 0.0;
    for (;;) {
        t += -std::log(rng.uniform01()) / rate;
        if (t >= t_end) break;
        times.push_back(t);
    }
    return times;
}

WaveFunction apply_localization(const WaveFunction& psi, double a, double r_c) {
    const Grid1D& g = psi.grid;
    if (!(a > g.x_min && a < g.x_max))
        throw std::invalid_argument("apply_localization: center outside grid interior");

    const double prefactor = std::pow(std::numbers::pi * r_c * r_c, -0.25);
    WaveFunction out = psi;
    for (int j = 0; j < g.n_points; ++j) {
        const double u = (g.x(j) - a) / r_c;
        out.amp[j] *= prefactor * std::exp(-0.5 * u * u);
    }

    double w = 0.0;
    for (const auto& z : out.amp) w += std::norm(z);
    w *= g.dx();
    if (!(w > 1e-300))
        throw std::runtime_error("apply_localization: branch weight vanished (|| L_a psi ||^2 < 1e-300)");

    const double inv = 1.0 / std::sqrt(w);
    for (auto& z : out.amp) z *= inv;
    return out;
}

std::vector<double> collapse_center_density(const WaveFunction& psi, double r_c) {
    const Grid1D& g = psi.grid;
    std::vector<double> prob(g.n_points);
    for (int j = 0; j < g.n_points; ++j) prob[j] = std::norm(psi.amp[j]);
    // |psi|^2 convolved with a unit-mass Gaussian of std r_c/sqrt(2).
    Smearer s(g, r_c / std::numbers::sqrt2, Smearer::Kernel::unit_mass);
    std::vector<double> density = s.apply(prob);
    for (double& d : density) d = std::max(0.0, d);
    return density;
}

namespace {

/// Inverse-CDF draw of a grid index from unnormalized nonnegative weights,
/// with uniform jitter inside the chosen cell.
double sample_from_grid_density(const std::vector<double>& w, const Grid1D& g, RngStream& rng) {
    double total = 0.0;
    for (double v : w) total += v;
    const double target = rng.uniform01() * total;
    double acc = 0.0;
    int pick = g.n_points - 1;
    for (int j = 0; j < g.n_points; ++j) {
        acc += w[j];
        if (acc >= target) {
            pick = j;
            break;
        }
    }
    return g.x(pick) + (rng.uniform01() - 0.5) * g.dx();
}

}  // namespace

double sample_collapse_center(const WaveFunction& psi, double r_c, RngStream& rng) {
    std::vector<double> prob(psi.grid.n_points);
    for (int j = 0; j < psi.grid.n_points; ++j) prob[j] = std::norm(psi.amp[j]);
    const double x = sample_from_grid_density(prob, psi.grid, rng);
    return x + (r_c / std::numbers::sqrt2) * rng.normal();
}

double sample_collapse_center_cdf(const WaveFunction& psi, double r_c, RngStream& rng) {
    const std::vector<double> density = collapse_center_density(psi, r_c);
    return sample_from_grid_density(density, psi.grid, rng);
}

GrwTrajectory run_grw_trajectory(const WaveFunction& psi0, const Hamiltonian& h,
                                 const GrwConfig& cfg, std::uint64_t seed,
                                 std::uint64_t stream_id) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("run_grw_trajectory: dt must be > 0");
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("run_grw_trajectory: t_end must be > 0");
    if (cfg.sample_every < 1)
        throw std::invalid_argument("run_grw_trajectory: sample_every must be >= 1");

    RngStream rng(seed, stream_id);
    const std::vector<double> event_times = sample_collapse_times(cfg.rate, cfg.t_end, rng);

    GrwTrajectory traj{{}, {}, {}, psi0, seed, stream_id};
    Propagator prop(psi0.grid, h, cfg.dt);
    WaveFunction psi = psi0;

    const double sample_dt = cfg.sample_every * cfg.dt;
    const long long n_samples = static_cast<long long>(std::floor(cfg.t_end / sample_dt + 1e-9));

    traj.times.push_back(0.0);
    traj.series.push_back(observables(psi, h, prop.fft()));

    double t = 0.0;
    std::size_t next_event = 0;
    long long next_sample = 1;

    auto advance_to = [&](double target) {
        const double span = target - t;
        if (span <= 0.0) { t = target; return; }
        const long long full = static_cast<long long>(std::floor(span / cfg.dt + 1e-9));
        for (long long i = 0; i < full; ++i) prop.step_inplace(psi);
        const double rem = span - full * cfg.dt;
        if (rem > 1e-12 * cfg.dt) Propagator(psi.grid, h, rem).step_inplace(psi);
        t = target;
    };

    for (;;) {
        const double t_event = next_event < event_times.size()
                                   ? event_times[next_event]
                                   : std::numeric_limits<double>::infinity();
        // Clamp the last sample onto t_end so a one-ulp overshoot of the
        // product next_sample * sample_dt cannot drop it.
        double t_sample = next_sample <= n_samples ? next_sample * sample_dt
                                                   : std::numeric_limits<double>::infinity();
        if (t_sample > cfg.t_end && t_sample < cfg.t_end * (1.0 + 1e-9))
            t_sample = cfg.t_end;
        const double t_next = std::min({t_event, t_sample, cfg.t_end});

        advance_to(t_next);

        if (t_next == cfg.t_end && t_event > cfg.t_end && t_sample > cfg.t_end) break;

        if (t_event <= t_sample) {
            const double center = sample_collapse_center(psi, cfg.r_c, rng);
            psi = apply_localization(psi, center, cfg.r_c);
            traj.events.push_back({t_event, center});
            ++next_event;
        } else {
            traj.times.push_back(t_sample);
            traj.series.push_back(observables(psi, h, prop.fft()));
            ++next_sample;
        }
        if (next_event >= event_times.size() && next_sample > n_samples && t >= cfg.t_end) break;
    }

    traj.final_state = std::move(psi);
    return traj;
}

double amplified_rate_grw(long long n_particles, double lambda) {
    if (n_particles < 1) throw std::invalid_argument("amplified_rate_grw: need n >= 1");
    return static_cast<double>(n_particles) * lambda;
}

double grw_decoherence_rate(double d, double rate, double r_c) {
    if (d < 0.0) throw std::invalid_argument("grw_decoherence_rate: d must be >= 0");
    return rate * (1.0 - std::exp(-d * d / (4.0 * r_c * r_c)));
}

}  // namespace collapse
