#pragma once

// Physical constants used at the SI boundary of the toolkit.
// Internal simulations run in dimensionless units (hbar = 1, m0 = 1, r_c = 1);
// these values enter only when converting user-facing SI quantities.

namespace collapse::constants {

/// Reduced Planck constant, J s (CODATA 2018, exact via h = 6.62607015e-34 J s).
inline constexpr double hbar = 1.054571817e-34;

/// Boltzmann constant, J/K (exact by SI definition).
inline constexpr double k_boltzmann = 1.380649e-23;

/// Reference nucleon mass m0, kg. Taken as the CODATA 2018 proton mass.
inline constexpr double nucleon_mass = 1.67262192369e-27;

/// Mass of a hydrogen atom, kg (CODATA 2018: 1.00782503 u).
inline constexpr double hydrogen_mass = 1.67353284e-27;

/// Julian year, s. Used for "per year" heating figures.
inline constexpr double seconds_per_year = 3.15576e7;

/// Areal mass density of single-layer graphene, kg/m^2.
/// External constant (not a CODATA value); enters the macroscopicity bound.
inline constexpr double graphene_areal_density = 7.6e-7;

}  // namespace collapse::constants
