#pragma once

// Shooting solver for the static equation W'' = P W (W^2 - 1): thresholds
// a_n, profiles W_n with n zeros, and their energies.

#include <vector>

#include "ymlab/grid.hpp"

namespace ymlab {

struct ShootingConfig {
    double x_start = -80.0;     // launch point (times m)
    double r_end = 1.0e4;       // far-field classification radius (times m)
    double rtol = 1e-12;        // adaptive RK tolerance
    double a_lo = 1e-3, a_hi = 1.0 - 1e-6;
    double bisect_tol = 1e-13;  // in a
    double overshoot_margin = 0.5;
};

enum class StaticClass { limit_plus, limit_minus, overshoot, undershoot };

struct StaticShot {
    StaticClass cls;
    int zero_count = 0;
    double W_end = 0.0;      // field value at termination
    double r_stop = 0.0;     // radius where integration ended
    double energy = 0.0;     // accumulated conserved-energy density integral
    std::vector<double> x, W, Wp;  // accepted-step profile (r* coordinates)
};

StaticShot integrate_static(double a, const ShootingConfig& cfg, BlackHoleMass m,
                            bool keep_profile = false);

struct StationarySolution {
    int n = 0;
    double a_n = 0.0;
    std::vector<double> x, W, Wp;   // profile table
    int zero_count = 0;
    double energy = 0.0;
    double tail_bound = 0.0;        // certified bound on the truncated tail energy
    double asymptote = 0.0;         // (-1)^n
    double asymptote_error = 0.0;   // |W_end - (-1)^n| at the profile end
};

StationarySolution find_a_n(int n, const ShootingConfig& cfg, BlackHoleMass m);

// Energy with the tail bound enforced below tol.
double stationary_energy(const StationarySolution& sol, double tail_tol = 1e-6);

// Sample W_n on the nodes of a grid (forced-step integration, no
// interpolation); pairs with grid::StationarySampler.
std::vector<double> sample_stationary_on_grid(double a_n, const TortoiseGrid& grid,
                                              const ShootingConfig& cfg);

}  // namespace ymlab
