#pragma once

// Integral diagnostics: scalar/geometric energies, Morawetz bulk, null
// fluxes, the multiplier-identity residual and the weighted L^p norms.

#include <cstddef>
#include <string>
#include <vector>

#include "ymlab/grid.hpp"
#include "ymlab/verify.hpp"

namespace ymlab {

// Composite Simpson on the uniform grid (3/8 rule on the last cell when the
// interval count is odd).
double integrate(const std::vector<double>& f, double dx);
double integrate(const std::vector<double>& f, double dx, std::size_t i_lo, std::size_t i_hi);

struct EnergyBreakdown {
    double kinetic = 0.0;    // int Wdot^2 dr*
    double gradient = 0.0;   // int (W')^2 dr*
    double potential = 0.0;  // int (P/2)(W^2-1)^2 dr*
    double total = 0.0;
};

EnergyBreakdown scalar_energy(const FieldState& state, const TortoiseGrid& grid);
EnergyBreakdown local_energy(const FieldState& state, const TortoiseGrid& grid, double x1, double x2);

// Per unit solid angle (multiply by 4*pi for totals). Class densities:
// D_v = 4 (d_v W)^2, D_w = 4 (d_w W)^2, D_m = P (W^2-1)^2, so that
// e_dt = int D_v + D_w + D_m = 2 * scalar energy (conserved).
struct GeometricEnergies {
    double e_dt = 0.0;     // int D_w + D_v + D_m
    double e_K = 0.0;      // int w^2 D_w + v^2 D_v + (v^2+w^2) D_m
    double e_H = 0.0;      // int h D_w/(2N) + h D_v/2 + h (N+1) D_m/(4N)
    double e_sharp = 0.0;  // (1/2) int D_w/N + D_v + D_m/N
};

GeometricEnergies geometric_energies(const FieldState& state, const TortoiseGrid& grid,
                                     const HorizonWeight* horizon = nullptr);

// int P Wdot^2 + P (W')^2 + (P/(2r)) (W^2-1)^2 dr* at the state's time.
double morawetz_bulk(const FieldState& state, const TortoiseGrid& grid);

// Observer that stores full state snapshots at the observer cadence.
struct StateRecorder {
    std::vector<double> times;
    std::vector<FieldState> states;
    void operator()(const FieldState& s, const TortoiseGrid&) {
        times.push_back(s.t);
        states.push_back(s);
    }
};

enum class NullLine { v_const, w_const };
enum class FluxKind { dt, H };

struct FluxRecord {
    NullLine line;
    FluxKind kind;
    double line_value = 0.0;      // the fixed v (or w)
    double t_lo = 0.0, t_hi = 0.0;  // covered parameter range (in t)
    double flux = 0.0;
    std::vector<double> trace_t;
    std::vector<double> trace_integrand;
};

// Accumulates the flux integrand at the moving point x(t) = v0 - t (v fixed)
// or x(t) = t - w0 (w fixed) by quartic Lagrange interpolation, then
// integrates over the recorded times within [t_lo, t_hi].
FluxRecord flux_along_null(const StateRecorder& rec, const TortoiseGrid& grid, NullLine line,
                           double line_value, double t_lo, double t_hi, FluxKind kind,
                           const HorizonWeight* horizon = nullptr);

// Term-by-term evaluation of the summed multiplier identity. Terms 0 and 11
// are the differentiated boundary integrals; 1..10 the bulk integrals.
// ablate in [0, 11] drops that term; -1 evaluates the full identity.
struct IdentityResidual {
    std::vector<double> t;
    std::vector<double> residual;
    double term_scale = 0.0;  // max |individual term| over the series, for relative comparison
};

IdentityResidual multiplier_identity_residual(const StateRecorder& rec, const TortoiseGrid& grid,
                                              const MorawetzWeights& weights, int ablate = -1);

struct LpNorms {
    double l2_P = 0.0;
    double l4_P = 0.0;
    double h1_dot = 0.0;
    double sobolev_bound_ratio = 0.0;
};

LpNorms lp_norms(const FieldState& state, const TortoiseGrid& grid);

}  // namespace ymlab
