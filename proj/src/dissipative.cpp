#include "collapse/dissipative.hpp"

#include <cmath>
#include <stdexcept>

namespace collapse {

DissipativeDerived derive_dissipative(const DissipativeParams& p, const PhysicalContext& ctx) {
    const double rc2 = p.base.r_c * p.base.r_c;
    const double k = ctx.hbar * ctx.hbar / (8.0 * p.mass * ctx.kb * rc2 * p.t_csl);
    const double one_k = 1.0 + k;
    const double one_k5 = one_k * one_k * one_k * one_k * one_k;
    const double mass_ratio = p.mass / ctx.m0;
    const double chi = 4.0 * k * mass_ratio * mass_ratio * p.base.lambda / one_k5;
    const double h_as = 3.0 * ctx.hbar * ctx.hbar / (16.0 * k * p.mass * rc2);
    return DissipativeDerived{k, chi, h_as};
}

double dissipative_energy(double t, double e0, const DissipativeDerived& d) {
    if (t < 0.0) throw std::invalid_argument("dissipative_energy: t must be >= 0");
    return std::exp(-d.chi * t) * (e0 - d.h_as) + d.h_as;
}

double dissipative_energy_gain(double t, double e0, const DissipativeDerived& d) {
    if (t < 0.0) throw std::invalid_argument("dissipative_energy_gain: t must be >= 0");
    return -std::expm1(-d.chi * t) * (d.h_as - e0);
}

double kernel_exponent(double p, double q, double r_c, double k, double hbar) {
    const double s = (1.0 + k) * q + 2.0 * k * p;
    return -r_c * r_c / (2.0 * hbar * hbar) * s * s;
}

double dissipative_kernel_center(double p, double k) {
    if (k < 0.0) throw std::invalid_argument("dissipative_kernel_center: k must be >= 0");
    return -2.0 * k * p / (1.0 + k);
}

}  // namespace collapse
