#include "ymlab/evolve.hpp"

#include <chrono>
#include <cmath>

namespace ymlab {

namespace {

constexpr double d1_edge0[5] = {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4};
constexpr double d1_edge1[5] = {-1.0 / 4, -5.0 / 6, 3.0 / 2, -1.0 / 2, 1.0 / 12};

// One-sided 4th-order first derivative at the four boundary nodes. Dots are
// taken on differences from the evaluation node so constants give exactly 0.
double onesided_d1(const std::vector<double>& u, std::size_t i, std::size_t n, double inv_dx) {
    const double* c = (i == 0 || i == n - 1) ? d1_edge0 : d1_edge1;
    double acc = 0.0;
    if (i < 2) {
        for (int k = 0; k < 5; ++k) acc += c[k] * (u[static_cast<std::size_t>(k)] - u[i]);
        return acc * inv_dx;
    }
    for (int k = 0; k < 5; ++k) acc += c[k] * (u[n - 1 - static_cast<std::size_t>(k)] - u[i]);
    return -acc * inv_dx;
}

}  // namespace

void rhs(const FieldState& state, const TortoiseGrid& grid, BoundaryMode mode,
         std::vector<double>& dW, std::vector<double>& dPi) {
    const std::size_t n = grid.n;
    dW.resize(n);
    dPi.resize(n);
    const double inv2 = 1.0 / (grid.dx * grid.dx);
    const auto& W = state.W;
    const auto& Pi = state.Pi;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double wxx = (-W[i - 2] + 16.0 * W[i - 1] - 30.0 * W[i] + 16.0 * W[i + 1] - W[i + 2]) *
                           (inv2 / 12.0);
        const double w = W[i];
        dW[i] = Pi[i];
        dPi[i] = wxx - grid.samples[i].P * w * (w * w - 1.0);
    }
    const double inv_dx = 1.0 / grid.dx;
    const std::size_t edges[4] = {0, 1, n - 2, n - 1};
    for (std::size_t e = 0; e < 4; ++e) {
        const std::size_t i = edges[e];
        if (mode == BoundaryMode::causal_buffer) {
            // Frozen edge: exact while the buffer is causally clean.
            dW[i] = 0.0;
            dPi[i] = 0.0;
        } else {
            // First-order characteristic outflow: W_t = -W_x on the right,
            // W_t = +W_x on the left; same advection applied to Pi.
            const double sgn = (i < 2) ? +1.0 : -1.0;
            dW[i] = sgn * onesided_d1(W, i, n, inv_dx);
            dPi[i] = sgn * onesided_d1(Pi, i, n, inv_dx);
        }
    }
}

FieldState step(const FieldState& state, const TortoiseGrid& grid, double dt, double cfl_ratio,
                BoundaryMode mode) {
    if (!(dt > 0.0) || dt > cfl_ratio * grid.dx * (1.0 + 1e-12))
        throw config_error("step: dt violates the CFL bound dt <= cfl_ratio*dx");
    const std::size_t n = grid.n;
    static thread_local std::vector<double> k1W, k1P, k2W, k2P, k3W, k3P, k4W, k4P;
    FieldState tmp;
    tmp.W.resize(n);
    tmp.Pi.resize(n);

    rhs(state, grid, mode, k1W, k1P);
    tmp.t = state.t + 0.5 * dt;
    for (std::size_t i = 0; i < n; ++i) {
        tmp.W[i] = state.W[i] + 0.5 * dt * k1W[i];
        tmp.Pi[i] = state.Pi[i] + 0.5 * dt * k1P[i];
    }
    rhs(tmp, grid, mode, k2W, k2P);
    for (std::size_t i = 0; i < n; ++i) {
        tmp.W[i] = state.W[i] + 0.5 * dt * k2W[i];
        tmp.Pi[i] = state.Pi[i] + 0.5 * dt * k2P[i];
    }
    rhs(tmp, grid, mode, k3W, k3P);
    tmp.t = state.t + dt;
    for (std::size_t i = 0; i < n; ++i) {
        tmp.W[i] = state.W[i] + dt * k3W[i];
        tmp.Pi[i] = state.Pi[i] + dt * k3P[i];
    }
    rhs(tmp, grid, mode, k4W, k4P);

    FieldState out;
    out.t = state.t + dt;
    out.W.resize(n);
    out.Pi.resize(n);
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.W[i] = state.W[i] + c * (k1W[i] + 2.0 * k2W[i] + 2.0 * k3W[i] + k4W[i]);
        out.Pi[i] = state.Pi[i] + c * (k1P[i] + 2.0 * k2P[i] + 2.0 * k3P[i] + k4P[i]);
    }
    return out;
}

RunResult run(const FieldState& initial, const TortoiseGrid& grid, const EvolutionConfig& config,
              const std::vector<Observer>& observers) {
    if (!(config.cfl_ratio > 0.0 && config.cfl_ratio <= 1.0))
        throw config_error("run: cfl_ratio must lie in (0, 1]");
    if (!(config.t_end > 0.0)) throw config_error("run: t_end must be positive");
    if (config.observer_stride < 1) throw config_error("run: observer_stride must be >= 1");

    if (config.boundary_mode == BoundaryMode::causal_buffer && std::isfinite(config.observe_x_lo)) {
        const double budget = std::min(config.observe_x_lo - grid.x_min,
                                       grid.x_max - config.observe_x_hi) - config.support_margin;
        if (config.t_end > budget)
            throw config_error("run: causal buffer too small for the observation window; "
                               "maximal admissible t_end = " + std::to_string(budget));
    }

    const auto t0 = std::chrono::steady_clock::now();
    // Step at half the Courant bound: classical RK4's spectral dissipation at
    // dt = cfl*dx would dominate the energy-drift budget of long runs.
    const double dt = 0.5 * config.cfl_ratio * grid.dx;
    const auto n_steps = static_cast<std::size_t>(std::ceil(config.t_end / dt - 1e-9));

    RunResult res;
    FieldState state = initial;
    for (const auto& obs : observers) obs(state, grid);

    auto finite = [](const FieldState& s) {
        for (double v : s.W) if (!std::isfinite(v)) return false;
        for (double v : s.Pi) if (!std::isfinite(v)) return false;
        return true;
    };

    for (std::size_t k = 0; k < n_steps; ++k) {
        // Last step may be shorter to land exactly on t_end.
        const double t_next = k + 1 == n_steps ? config.t_end
                                               : initial.t + static_cast<double>(k + 1) * dt;
        const double this_dt = std::min(dt, t_next - state.t);
        FieldState next = step(state, grid, this_dt, config.cfl_ratio, config.boundary_mode);
        next.t = t_next;  // keep observer timestamps free of accumulated roundoff
        if (!finite(next)) {
            res.aborted = true;
            res.abort_reason = "non-finite field at step " + std::to_string(k + 1) +
                               ", t = " + std::to_string(state.t) + " (last good state kept)";
            break;
        }
        state = std::move(next);
        ++res.steps;
        if (res.steps % config.observer_stride == 0)
            for (const auto& obs : observers) obs(state, grid);
    }
    res.final_state = std::move(state);
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace ymlab
