#include "ymlab/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ymlab {

TortoiseGrid build_grid(double x_min, double x_max, std::size_t n, BlackHoleMass m) {
    if (!(x_min < x_max)) throw config_error("build_grid: x_min must be < x_max");
    if (n < 3) throw config_error("build_grid: need at least 3 nodes");
    TortoiseGrid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n = n;
    g.dx = (x_max - x_min) / static_cast<double>(n - 1);
    g.mass = m;
    g.x.resize(n);
    g.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.x[i] = x_min + g.dx * static_cast<double>(i);
        try {
            g.samples[i] = background_sample(g.x[i], m);
        } catch (const numerical_error& e) {
            throw numerical_error("build_grid: node " + std::to_string(i) + ": " + e.what());
        }
    }
    return g;
}

FieldState make_initial_data(const InitialDataSpec& spec, const TortoiseGrid& grid,
                             const StationarySampler* stationary) {
    FieldState s;
    s.t = 0.0;
    s.W.assign(grid.n, 0.0);
    s.Pi.assign(grid.n, 0.0);
    switch (spec.kind) {
        case InitialDataSpec::Kind::vacuum: {
            const double v = spec.sign >= 0 ? 1.0 : -1.0;
            for (auto& w : s.W) w = v;
            break;
        }
        case InitialDataSpec::Kind::gaussian: {
            if (!(spec.width > 0.0)) throw config_error("gaussian width must be positive");
            for (std::size_t i = 0; i < grid.n; ++i) {
                const double d = (grid.x[i] - spec.center) / spec.width;
                s.W[i] = spec.base + spec.amplitude * std::exp(-d * d);
            }
            if (spec.mode == GaussianMode::ingoing) {
                // Purely left-moving perturbation: Pi = +d/dx (W - base).
                std::vector<double> pert(grid.n);
                for (std::size_t i = 0; i < grid.n; ++i) pert[i] = s.W[i] - spec.base;
                s.Pi = derivative1(pert, grid);
            }
            break;
        }
        case InitialDataSpec::Kind::stationary: {
            if (!stationary || !stationary->W || stationary->W->size() != grid.n)
                throw config_error("stationary initial data requires a sampled profile on this grid");
            s.W = *stationary->W;
            break;
        }
        case InitialDataSpec::Kind::custom: {
            s = load_state(spec.file, grid);
            break;
        }
    }
    return s;
}

namespace {

// 4th-order stencils on a uniform grid.
constexpr double d1_center[5] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
constexpr double d1_edge0[5] = {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4};
constexpr double d1_edge1[5] = {-1.0 / 4, -5.0 / 6, 3.0 / 2, -1.0 / 2, 1.0 / 12};
// 8th-order centered first derivative (diagnostics want the extra accuracy;
// the evolution stencils below stay 4th order).
constexpr double d1_center8[9] = {1.0 / 280, -4.0 / 105, 1.0 / 5,  -4.0 / 5, 0.0,
                                  4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
constexpr double d2_center[5] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
constexpr double d2_edge0[6] = {15.0 / 4, -77.0 / 6, 107.0 / 6, -13.0, 61.0 / 12, -5.0 / 6};
constexpr double d2_edge1[6] = {5.0 / 6, -5.0 / 4, -1.0 / 3, 7.0 / 6, -1.0 / 2, 1.0 / 12};

}  // namespace

std::vector<double> derivative1(const std::vector<double>& u, const TortoiseGrid& grid) {
    const std::size_t n = grid.n;
    if (u.size() != n) throw config_error("derivative1: array/grid size mismatch");
    std::vector<double> d(n);
    const double inv = 1.0 / grid.dx;
    if (n < 9) throw config_error("derivative1: need at least 9 nodes");
    // All dots are taken on differences from the center node so the result is
    // exactly zero on constant data (the coefficients sum to zero only in
    // exact arithmetic).
    for (std::size_t i = 4; i + 4 < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < 9; ++k)
            acc += d1_center8[k] * (u[i - 4 + static_cast<std::size_t>(k)] - u[i]);
        d[i] = acc * inv;
    }
    for (std::size_t i : {std::size_t{2}, std::size_t{3}, n - 4, n - 3}) {
        d[i] = (d1_center[0] * (u[i - 2] - u[i]) + d1_center[1] * (u[i - 1] - u[i]) +
                d1_center[3] * (u[i + 1] - u[i]) + d1_center[4] * (u[i + 2] - u[i])) * inv;
    }
    auto dot5 = [&](const double* c, std::size_t base, std::size_t i) {
        double acc = 0.0;
        for (int k = 0; k < 5; ++k) acc += c[k] * (u[base + static_cast<std::size_t>(k)] - u[i]);
        return acc * inv;
    };
    d[0] = dot5(d1_edge0, 0, 0);
    d[1] = dot5(d1_edge1, 0, 1);
    // Mirrored (antisymmetric) one-sided stencils on the right edge.
    auto rdot5 = [&](const double* c, std::size_t last, std::size_t i) {
        double acc = 0.0;
        for (int k = 0; k < 5; ++k) acc += c[k] * (u[last - static_cast<std::size_t>(k)] - u[i]);
        return -acc * inv;
    };
    d[n - 1] = rdot5(d1_edge0, n - 1, n - 1);
    d[n - 2] = rdot5(d1_edge1, n - 1, n - 2);
    return d;
}

std::vector<double> derivative2(const std::vector<double>& u, const TortoiseGrid& grid) {
    const std::size_t n = grid.n;
    if (u.size() != n) throw config_error("derivative2: array/grid size mismatch");
    if (n < 6) throw config_error("derivative2: need at least 6 nodes");
    std::vector<double> d(n);
    const double inv2 = 1.0 / (grid.dx * grid.dx);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        d[i] = (d2_center[0] * (u[i - 2] - u[i]) + d2_center[1] * (u[i - 1] - u[i]) +
                d2_center[3] * (u[i + 1] - u[i]) + d2_center[4] * (u[i + 2] - u[i])) * inv2;
    }
    // Subtract-center again: exactly zero on constants.
    auto dot6 = [&](const double* c, std::size_t base, std::size_t i) {
        double acc = 0.0;
        for (int k = 0; k < 6; ++k) acc += c[k] * (u[base + static_cast<std::size_t>(k)] - u[i]);
        return acc * inv2;
    };
    auto rdot6 = [&](const double* c, std::size_t last, std::size_t i) {
        double acc = 0.0;
        for (int k = 0; k < 6; ++k) acc += c[k] * (u[last - static_cast<std::size_t>(k)] - u[i]);
        return acc * inv2;  // symmetric: no sign flip
    };
    d[0] = dot6(d2_edge0, 0, 0);
    d[1] = dot6(d2_edge1, 0, 1);
    d[n - 1] = rdot6(d2_edge0, n - 1, n - 1);
    d[n - 2] = rdot6(d2_edge1, n - 1, n - 2);
    return d;
}

CurvatureComponents curvature_components(const FieldState& state, const TortoiseGrid& grid,
                                         std::size_t i, const std::vector<double>& Wprime) {
    const BackgroundSample& b = grid.samples.at(i);
    CurvatureComponents c;
    c.dvW = 0.5 * (state.Pi[i] + Wprime[i]);
    c.dwW = 0.5 * (state.Pi[i] - Wprime[i]);
    c.F_vtheta = 2.0 / b.r * std::abs(c.dvW);
    c.F_wtheta = b.N > 0.0 ? 2.0 / (b.N * b.r) * std::abs(c.dwW)
                           : std::numeric_limits<double>::infinity() * (c.dwW != 0.0 ? 1.0 : 0.0);
    c.F_thetaphi = std::abs(state.W[i] * state.W[i] - 1.0) / (b.r * b.r);
    c.F_wv = 0.0;
    return c;
}

std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void save_state(const FieldState& state, const TortoiseGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("save_state: cannot open " + path);
    out << "# n=" << grid.n << " x_min=" << fmt_double(grid.x_min)
        << " x_max=" << fmt_double(grid.x_max) << " m=" << fmt_double(grid.mass.m) << "\n";
    for (std::size_t i = 0; i < grid.n; ++i)
        out << fmt_double(state.W[i]) << " " << fmt_double(state.Pi[i]) << "\n";
    if (!out) throw numerical_error("save_state: write failure on " + path);
}

FieldState load_state(const std::string& path, const TortoiseGrid& grid) {
    std::ifstream in(path);
    if (!in) throw config_error("load_state: cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::size_t n = 0;
    double x_min = 0, x_max = 0, m = 0;
    if (std::sscanf(header.c_str(), "# n=%zu x_min=%lf x_max=%lf m=%lf", &n, &x_min, &x_max, &m) != 4)
        throw config_error("load_state: " + path + ":1: bad header \"" + header + "\"");
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); };
    if (n != grid.n || !close(x_min, grid.x_min) || !close(x_max, grid.x_max) || !close(m, grid.mass.m))
        throw config_error("load_state: " + path + ": header does not match the grid (no interpolation is done)");
    FieldState s;
    s.t = 0.0;
    s.W.resize(grid.n);
    s.Pi.resize(grid.n);
    std::string line;
    for (std::size_t i = 0; i < grid.n; ++i) {
        if (!std::getline(in, line))
            throw config_error("load_state: " + path + ":" + std::to_string(i + 2) + ": unexpected end of file");
        std::istringstream ls(line);
        if (!(ls >> s.W[i] >> s.Pi[i]))
            throw config_error("load_state: " + path + ":" + std::to_string(i + 2) + ": expected two numbers");
        if (!std::isfinite(s.W[i]) || !std::isfinite(s.Pi[i]))
            throw config_error("load_state: " + path + ":" + std::to_string(i + 2) + ": non-finite value");
    }
    return s;
}

}  // namespace ymlab
