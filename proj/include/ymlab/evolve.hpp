#pragma once

// Method-of-lines integration of  Wtt - Wxx + P W (W^2 - 1) = 0
// (classical RK4, 4th-order spatial differences).

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ymlab/grid.hpp"

namespace ymlab {

enum class BoundaryMode { causal_buffer, outgoing };

struct EvolutionConfig {
    double cfl_ratio = 0.25;       // dt = cfl_ratio * dx
    double t_end = 0.0;
    std::size_t observer_stride = 1;
    BoundaryMode boundary_mode = BoundaryMode::causal_buffer;
    // Optional observation window for the causal-buffer precondition;
    // NaN disables the check (callers observing nothing).
    double observe_x_lo = std::numeric_limits<double>::quiet_NaN();
    double observe_x_hi = std::numeric_limits<double>::quiet_NaN();
    double support_margin = 0.0;   // half-width the data occupies beyond the window
};

using Observer = std::function<void(const FieldState&, const TortoiseGrid&)>;

struct RunResult {
    FieldState final_state;
    std::size_t steps = 0;
    double wall_seconds = 0.0;
    bool aborted = false;          // NaN blow-up: final_state is the last good state
    std::string abort_reason;
};

// dW/dt = Pi, dPi/dt = W'' - P W (W^2-1); boundary rows overridden per mode.
void rhs(const FieldState& state, const TortoiseGrid& grid, BoundaryMode mode,
         std::vector<double>& dW, std::vector<double>& dPi);

// One RK4 update (throws config_error if dt exceeds the CFL bound).
FieldState step(const FieldState& state, const TortoiseGrid& grid, double dt,
                double cfl_ratio = 1.0, BoundaryMode mode = BoundaryMode::causal_buffer);

RunResult run(const FieldState& initial, const TortoiseGrid& grid, const EvolutionConfig& config,
              const std::vector<Observer>& observers);

}  // namespace ymlab
