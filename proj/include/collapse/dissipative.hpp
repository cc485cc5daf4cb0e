#pragma once

#include "collapse/constants.hpp"
#include "collapse/params.hpp"

namespace collapse {

/// Constant set the analytic formulas run against. SI by default; pass unit
/// values to work in dimensionless form.
struct PhysicalContext {
    double hbar;
    double kb;
    double m0;

    static PhysicalContext si() {
        return {constants::hbar, constants::k_boltzmann, constants::nucleon_mass};
    }
    static PhysicalContext dimensionless() { return {1.0, 1.0, 1.0}; }
};

/// Inputs of the dissipative extension: base (lambda, r_c), the noise
/// temperature T_CSL (theoretical arguments suggest 1 K), and the particle mass.
struct DissipativeParams {
    CollapseParams base;
    double t_csl;
    double mass;

    DissipativeParams(CollapseParams base_, double t_csl_, double mass_)
        : base(base_), t_csl(t_csl_), mass(mass_) {
        if (!(t_csl > 0.0)) throw std::invalid_argument("DissipativeParams: t_csl must be > 0");
        if (!(mass > 0.0)) throw std::invalid_argument("DissipativeParams: mass must be > 0");
    }
};

/// k = hbar^2 / (8 m kB r_c^2 T_CSL), chi = 4 k m^2 lambda / ((1+k)^5 m0^2),
/// H_as = 3 hbar^2 / (16 k m r_c^2). Algebraically H_as = (3/2) kB T_CSL.
struct DissipativeDerived {
    double k;
    double chi;   // relaxation rate
    double h_as;  // asymptotic energy
};

DissipativeDerived derive_dissipative(const DissipativeParams& p,
                                      const PhysicalContext& ctx = PhysicalContext::si());

/// <H>_t = e^{-chi t} (e0 - H_as) + H_as; monotone from e0 toward H_as.
double dissipative_energy(double t, double e0, const DissipativeDerived& d);

/// <H>_t - e0 = (1 - e^{-chi t})(H_as - e0) via expm1; accurate when
/// chi t is tiny (the difference form above loses ~1e-4 at chi t ~ 1e-13).
double dissipative_energy_gain(double t, double e0, const DissipativeDerived& d);

/// Log-weight of the momentum-transfer kernel: -(r_c^2 / 2 hbar^2) ((1+k) q + 2 k p)^2.
/// k = 0 reduces to the white-CSL Gaussian in q alone.
double kernel_exponent(double p, double q, double r_c, double k, double hbar = 1.0);

/// Momentum transfer at maximum kernel weight: q* = -2 k p / (1 + k).
double dissipative_kernel_center(double p, double k);

}  // namespace collapse
