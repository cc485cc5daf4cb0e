#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "collapse/grid.hpp"

namespace collapse {

/// System Hamiltonian H = p^2/(2m) + V(x) in dimensionless units (hbar = 1).
/// V is free (0), harmonic (m w^2 x^2 / 2), or tabulated on the grid.
struct Hamiltonian {
    enum class Kind { free, harmonic, tabulated };

    Kind kind;
    double mass;
    double omega = 0.0;
    std::vector<double> potential;  // tabulated only

    static Hamiltonian free_particle(double mass) {
        check_mass(mass);
        return Hamiltonian{Kind::free, mass, 0.0, {}};
    }

    static Hamiltonian harmonic(double mass, double omega) {
        check_mass(mass);
        if (!(omega > 0.0)) throw std::invalid_argument("Hamiltonian: omega must be > 0");
        return Hamiltonian{Kind::harmonic, mass, omega, {}};
    }

    static Hamiltonian tabulated(double mass, std::vector<double> v) {
        check_mass(mass);
        for (double value : v)
            if (!std::isfinite(value))
                throw std::invalid_argument("Hamiltonian: tabulated potential must be finite");
        return Hamiltonian{Kind::tabulated, mass, 0.0, std::move(v)};
    }

    /// Potential sampled on the grid (empty vector means identically zero).
    std::vector<double> potential_on(const Grid1D& grid) const {
        switch (kind) {
            case Kind::free:
                return {};
            case Kind::harmonic: {
                std::vector<double> v(grid.n_points);
                for (int j = 0; j < grid.n_points; ++j) {
                    const double x = grid.x(j);
                    v[j] = 0.5 * mass * omega * omega * x * x;
                }
                return v;
            }
            case Kind::tabulated:
                if (static_cast<int>(potential.size()) != grid.n_points)
                    throw std::invalid_argument(
                        "Hamiltonian: tabulated potential length does not match grid");
                return potential;
        }
        return {};
    }

private:
    static void check_mass(double m) {
        if (!(m > 0.0)) throw std::invalid_argument("Hamiltonian: mass must be > 0");
    }
};

}  // namespace collapse
