#pragma once

#include <stdexcept>

namespace collapse {

/// The two free parameters of GRW/CSL dynamics: collapse rate lambda (1/s in SI,
/// 1/time-unit internally) and noise correlation length r_c.
struct CollapseParams {
    double lambda;
    double r_c;

    CollapseParams(double lambda_, double r_c_) : lambda(lambda_), r_c(r_c_) {
        if (!(lambda > 0.0)) throw std::invalid_argument("CollapseParams: lambda must be > 0");
        if (!(r_c > 0.0)) throw std::invalid_argument("CollapseParams: r_c must be > 0");
    }
};

/// A particle plus the reference mass m0 against which collapse couplings scale.
struct ParticleSpec {
    double mass;
    double m0;

    ParticleSpec(double mass_, double m0_) : mass(mass_), m0(m0_) {
        if (!(mass > 0.0)) throw std::invalid_argument("ParticleSpec: mass must be > 0");
        if (!(m0 > 0.0)) throw std::invalid_argument("ParticleSpec: m0 must be > 0");
    }
};

/// Base units for the internal dimensionless system. One internal length unit
/// equals `length` metres, and so on. Energy and action scales are derived.
/// Conversions use hbar = 1 internally; SI magnitudes appear only at this boundary.
struct UnitScale {
    double length;  // m per internal length unit
    double time;    // s per internal time unit
    double mass;    // kg per internal mass unit

    UnitScale(double length_, double time_, double mass_)
        : length(length_), time(time_), mass(mass_) {
        if (!(length > 0.0) || !(time > 0.0) || !(mass > 0.0))
            throw std::invalid_argument("UnitScale: all scale entries must be > 0");
    }

    static UnitScale si() { return UnitScale(1.0, 1.0, 1.0); }

    double energy() const { return mass * length * length / (time * time); }
    double action() const { return mass * length * length / time; }
};

/// Parameter values proposed in the literature: the original GRW point and
/// Adler's two points (central values; the quoted +-2 decades are a plotting band).
struct CanonicalPoints {
    CollapseParams grw;
    CollapseParams adler_7;
    CollapseParams adler_6;
};

/// lambda carries 1/time, r_c carries length.
inline CollapseParams to_dimensionless(const CollapseParams& p, const UnitScale& s) {
    return CollapseParams(p.lambda * s.time, p.r_c / s.length);
}

inline CollapseParams from_dimensionless(const CollapseParams& p, const UnitScale& s) {
    return CollapseParams(p.lambda / s.time, p.r_c * s.length);
}

CanonicalPoints canonical_points();

}  // namespace collapse
