#pragma once

// Uniform tortoise-coordinate lattice, finite-difference stencils, initial
// data families and the curvature-component dictionary.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ymlab/background.hpp"

namespace ymlab {

struct TortoiseGrid {
    double x_min = 0.0, x_max = 0.0;
    std::size_t n = 0;
    double dx = 0.0;
    BlackHoleMass mass{1.0};
    std::vector<double> x;                   // nodes
    std::vector<BackgroundSample> samples;   // background per node

    double node(std::size_t i) const { return x[i]; }
};

TortoiseGrid build_grid(double x_min, double x_max, std::size_t n, BlackHoleMass m);

struct FieldState {
    double t = 0.0;
    std::vector<double> W;
    std::vector<double> Pi;  // dW/dt
};

enum class GaussianMode { time_symmetric, ingoing };

struct InitialDataSpec {
    enum class Kind { vacuum, gaussian, stationary, custom } kind = Kind::vacuum;
    int sign = +1;                // vacuum: W == sign
    double base = 1.0;            // gaussian: background vacuum
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;
    GaussianMode mode = GaussianMode::time_symmetric;
    int stationary_n = 1;         // stationary: family index
    std::string file;             // custom: data file path
};

// The stationary variant needs a sampler for W_n on the grid nodes; supplied
// by the stationary module (kept as an injection to avoid a cycle).
struct StationarySampler {
    const std::vector<double>* W = nullptr;  // one value per grid node
};

FieldState make_initial_data(const InitialDataSpec& spec, const TortoiseGrid& grid,
                             const StationarySampler* stationary = nullptr);

// 4th-order first/second derivatives on the uniform grid (centered interior,
// one-sided at the two nodes next to each edge).
std::vector<double> derivative1(const std::vector<double>& u, const TortoiseGrid& grid);
std::vector<double> derivative2(const std::vector<double>& u, const TortoiseGrid& grid);

// Hat-frame curvature magnitudes at one node (su(2) norm with orthonormal
// tau_i, so every magnitude is coefficient-free).
struct CurvatureComponents {
    double F_vtheta;   // |F_v^theta^| = |F_v^phi^| = (2/r)|d_v W|
    double F_wtheta;   // |F_w^theta^| = |F_w^phi^| = (2/(N r))|d_w W|
    double F_thetaphi; // |W^2-1|/r^2
    double F_wv;       // identically 0 under the Ansatz
    double dvW;        // (Pi + W')/2
    double dwW;        // (Pi - W')/2
};

CurvatureComponents curvature_components(const FieldState& state, const TortoiseGrid& grid,
                                         std::size_t i, const std::vector<double>& Wprime);

// Shortest round-trip decimal representation (used by every serializer).
std::string fmt_double(double v);

// Data file format: header "# n=<count> x_min=<val> x_max=<val> m=<val>",
// then one "W Pi" pair per line. Shortest round-trip decimals.
void save_state(const FieldState& state, const TortoiseGrid& grid, const std::string& path);
FieldState load_state(const std::string& path, const TortoiseGrid& grid);

}  // namespace ymlab
