#include "ymlab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ymlab {

double integrate(const std::vector<double>& f, double dx, std::size_t i_lo, std::size_t i_hi) {
    if (i_hi <= i_lo || i_hi >= f.size() + 0 || i_hi - i_lo < 2)
        throw config_error("integrate: need at least 3 nodes in range");
    const std::size_t intervals = i_hi - i_lo;
    std::size_t even_end = i_hi;  // end of the plain-Simpson part
    double tail = 0.0;
    if (intervals % 2 != 0) {
        // 3/8 rule on the last three intervals keeps 4th order.
        if (intervals < 3) {  // two nodes only: trapezoid (unused in practice)
            return 0.5 * dx * (f[i_lo] + f[i_hi]);
        }
        even_end = i_hi - 3;
        tail = 3.0 * dx / 8.0 *
               (f[i_hi - 3] + 3.0 * f[i_hi - 2] + 3.0 * f[i_hi - 1] + f[i_hi]);
    }
    double acc = 0.0;
    if (even_end > i_lo) {
        acc = f[i_lo] + f[even_end];
        for (std::size_t i = i_lo + 1; i < even_end; i += 2) acc += 4.0 * f[i];
        for (std::size_t i = i_lo + 2; i < even_end; i += 2) acc += 2.0 * f[i];
        acc *= dx / 3.0;
    }
    return acc + tail;
}

double integrate(const std::vector<double>& f, double dx) {
    return integrate(f, dx, 0, f.size() - 1);
}

namespace {

struct Densities {
    std::vector<double> kin, grad, pot;
};

Densities densities(const FieldState& state, const TortoiseGrid& grid) {
    Densities d;
    d.kin.resize(grid.n);
    d.grad = derivative1(state.W, grid);
    d.pot.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        d.kin[i] = state.Pi[i] * state.Pi[i];
        d.grad[i] = d.grad[i] * d.grad[i];
        const double q = state.W[i] * state.W[i] - 1.0;
        d.pot[i] = 0.5 * grid.samples[i].P * q * q;
    }
    return d;
}

}  // namespace

// The conserved energy is evaluated with the pairing the evolution scheme
// actually preserves: uniform quadrature weights and the gradient term in
// summation-by-parts form -sum (W - W_0) W'' (its continuum value is
// int (W')^2 after integrating by parts; the right-edge boundary term is
// restored explicitly). This makes the reported total an exact invariant of
// the semidiscrete flow, so the measured drift isolates the time integrator.
EnergyBreakdown scalar_energy(const FieldState& state, const TortoiseGrid& grid) {
    const auto d2 = derivative2(state.W, grid);
    const double base = state.W.front();
    EnergyBreakdown e;
    double kin = 0.0, grad = 0.0, pot = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double wgt = (i == 0 || i + 1 == grid.n) ? 0.5 : 1.0;
        const double Wb = state.W[i] - base;
        const double q = state.W[i] * state.W[i] - 1.0;
        kin += wgt * state.Pi[i] * state.Pi[i];
        grad -= wgt * Wb * d2[i];
        pot += wgt * 0.5 * grid.samples[i].P * q * q;
    }
    // Boundary term of the integration by parts (zero for data that is
    // constant near the edges; restores accuracy for e.g. static profiles).
    const auto d1 = derivative1(state.W, grid);
    const double boundary = (state.W.back() - base) * d1.back();
    e.kinetic = kin * grid.dx;
    e.gradient = std::max(0.0, grad * grid.dx + boundary);
    e.potential = pot * grid.dx;
    e.total = e.kinetic + e.gradient + e.potential;
    return e;
}

EnergyBreakdown local_energy(const FieldState& state, const TortoiseGrid& grid, double x1, double x2) {
    if (!(x1 < x2)) throw config_error("local_energy: x1 must be < x2");
    if (x1 < grid.x_min - 1e-9 || x2 > grid.x_max + 1e-9)
        throw config_error("local_energy: window outside the grid");
    const auto i_lo = static_cast<std::size_t>(std::lround((x1 - grid.x_min) / grid.dx));
    const auto i_hi = static_cast<std::size_t>(std::lround((x2 - grid.x_min) / grid.dx));
    const auto d = densities(state, grid);
    EnergyBreakdown e;
    e.kinetic = integrate(d.kin, grid.dx, i_lo, i_hi);
    e.gradient = integrate(d.grad, grid.dx, i_lo, i_hi);
    e.potential = integrate(d.pot, grid.dx, i_lo, i_hi);
    e.total = e.kinetic + e.gradient + e.potential;
    return e;
}

GeometricEnergies geometric_energies(const FieldState& state, const TortoiseGrid& grid,
                                     const HorizonWeight* horizon) {
    const auto Wp = derivative1(state.W, grid);
    std::vector<double> f_dt(grid.n), f_K(grid.n), f_H(grid.n), f_sharp(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const auto& b = grid.samples[i];
        const double dv = 0.5 * (state.Pi[i] + Wp[i]);
        const double dw = 0.5 * (state.Pi[i] - Wp[i]);
        const double Dv = 4.0 * dv * dv;
        const double Dw = 4.0 * dw * dw;
        const double q = state.W[i] * state.W[i] - 1.0;
        const double Dm = b.P * q * q;
        const double v = state.t + grid.x[i];
        const double w = state.t - grid.x[i];
        f_dt[i] = Dw + Dv + Dm;
        f_K[i] = w * w * Dw + v * v * Dv + (v * v + w * w) * Dm;
        const double overN = (Dw == 0.0 && Dm == 0.0) ? 0.0
                             : (b.N > 0.0 ? 1.0 / b.N : std::numeric_limits<double>::infinity());
        f_sharp[i] = 0.5 * (Dw * overN + Dv + Dm * overN);
        if (horizon) {
            const double h = horizon->value_at(b);
            f_H[i] = h == 0.0 ? 0.0
                              : h * (0.5 * Dw * overN + 0.5 * Dv + 0.25 * (b.N + 1.0) * Dm * overN);
        }
    }
    GeometricEnergies g;
    g.e_dt = integrate(f_dt, grid.dx);
    g.e_K = integrate(f_K, grid.dx);
    g.e_sharp = integrate(f_sharp, grid.dx);
    g.e_H = horizon ? integrate(f_H, grid.dx) : 0.0;
    return g;
}

double morawetz_bulk(const FieldState& state, const TortoiseGrid& grid) {
    const auto Wp = derivative1(state.W, grid);
    std::vector<double> f(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const auto& b = grid.samples[i];
        const double q = state.W[i] * state.W[i] - 1.0;
        f[i] = b.P * (state.Pi[i] * state.Pi[i] + Wp[i] * Wp[i]) +
               b.P / (2.0 * b.r) * q * q;
    }
    return integrate(f, grid.dx);
}

namespace {

// Quartic Lagrange interpolation of a nodal array at x.
double interp4(const std::vector<double>& u, const TortoiseGrid& grid, double x) {
    const double s = (x - grid.x_min) / grid.dx;
    auto center = static_cast<long>(std::lround(s));
    long base = center - 2;
    base = std::clamp<long>(base, 0, static_cast<long>(grid.n) - 5);
    double val = 0.0;
    for (long j = 0; j < 5; ++j) {
        double lj = 1.0;
        for (long k = 0; k < 5; ++k) {
            if (k == j) continue;
            lj *= (s - static_cast<double>(base + k)) / static_cast<double>(j - k);
        }
        val += lj * u[static_cast<std::size_t>(base + j)];
    }
    return val;
}

}  // namespace

FluxRecord flux_along_null(const StateRecorder& rec, const TortoiseGrid& grid, NullLine line,
                           double line_value, double t_lo, double t_hi, FluxKind kind,
                           const HorizonWeight* horizon) {
    if (rec.times.size() < 5) throw config_error("flux_along_null: need at least 5 recorded states");
    if (kind == FluxKind::H && !horizon)
        throw config_error("flux_along_null: H flux needs a horizon weight");
    FluxRecord out;
    out.line = line;
    out.kind = kind;
    out.line_value = line_value;

    auto x_of_t = [&](double t) {
        return line == NullLine::v_const ? line_value - t : t - line_value;
    };

    // Covered sub-range of [t_lo, t_hi]: recorded times whose moving point
    // stays at least two cells inside the grid.
    std::vector<double> ts, integrand;
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
        const double t = rec.times[k];
        if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
        const double x = x_of_t(t);
        if (x < grid.x_min + 2.0 * grid.dx || x > grid.x_max - 2.0 * grid.dx) continue;
        const auto& st = rec.states[k];
        const auto Wp_nodes = derivative1(st.W, grid);
        const double W = interp4(st.W, grid, x);
        const double Pi = interp4(st.Pi, grid, x);
        const double Wp = interp4(Wp_nodes, grid, x);
        const auto b = background_sample(x, grid.mass);
        const double q = W * W - 1.0;
        const double Dm = b.P * q * q;
        double val;
        if (kind == FluxKind::dt) {
            // Null boundary density of e_dt = 2 * scalar energy, per unit t.
            const double c = line == NullLine::v_const ? Pi - Wp : Pi + Wp;
            val = 2.0 * c * c + Dm;
        } else {
            const double h = horizon->value_at(b);
            if (line == NullLine::v_const) {
                const double dw = 0.5 * (Pi - Wp);
                const double Dw = 4.0 * dw * dw;
                val = h == 0.0 ? 0.0 : h * (Dw / b.N + 0.5 * Dm);
            } else {
                const double dv = 0.5 * (Pi + Wp);
                const double Dv = 4.0 * dv * dv;
                val = h == 0.0 ? 0.0 : h * (Dv + 0.5 * Dm / b.N);
            }
        }
        ts.push_back(t);
        integrand.push_back(val);
    }
    if (ts.size() < 3)
        throw config_error("flux_along_null: line covers fewer than 3 recorded samples in the slab");
    // Verify uniform cadence, then integrate in t.
    const double dt = ts[1] - ts[0];
    for (std::size_t k = 1; k + 1 < ts.size(); ++k)
        if (std::abs((ts[k + 1] - ts[k]) - dt) > 1e-9 * dt)
            throw config_error("flux_along_null: recorded cadence is not uniform over the range");
    out.t_lo = ts.front();
    out.t_hi = ts.back();
    out.flux = integrate(integrand, dt);
    out.trace_t = std::move(ts);
    out.trace_integrand = std::move(integrand);
    return out;
}

IdentityResidual multiplier_identity_residual(const StateRecorder& rec, const TortoiseGrid& grid,
                                              const MorawetzWeights& weights, int ablate) {
    const std::size_t K = rec.times.size();
    if (K < 5) throw config_error("multiplier_identity_residual: need >= 5 recorded states");
    const double dt = rec.times[1] - rec.times[0];
    for (std::size_t k = 1; k + 1 < K; ++k)
        if (std::abs((rec.times[k + 1] - rec.times[k]) - dt) > 1e-9 * dt)
            throw config_error("multiplier_identity_residual: non-uniform observer cadence");

    // Precompute weight arrays on the grid.
    std::vector<double> h(grid.n), h2(grid.n), P(grid.n), fW(grid.n), Vf(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const auto& b = grid.samples[i];
        h[i] = weights.h(b);
        h2[i] = weights.h2(b);
        P[i] = b.P;
        fW[i] = b.f;
        Vf[i] = b.V * b.f;
    }

    std::vector<double> B1(K), B2(K);       // boundary integrals
    std::vector<double> bulk(K);            // sum of kept bulk terms
    double term_scale = 0.0;
    std::vector<double> tmp(grid.n);
    for (std::size_t k = 0; k < K; ++k) {
        const auto& st = rec.states[k];
        const auto Wp = derivative1(st.W, grid);
        auto quad = [&](auto&& dens) {
            for (std::size_t i = 0; i < grid.n; ++i) tmp[i] = dens(i);
            return integrate(tmp, grid.dx);
        };
        auto q = [&](std::size_t i) { return st.W[i] * st.W[i] - 1.0; };

        B1[k] = quad([&](std::size_t i) { return st.Pi[i] * h[i] * st.W[i] * q(i); });
        B2[k] = quad([&](std::size_t i) { return st.Pi[i] * fW[i] * Wp[i]; });

        const double terms[10] = {
            -quad([&](std::size_t i) { return h[i] * st.Pi[i] * st.Pi[i] * q(i); }),
            -2.0 * quad([&](std::size_t i) { return h[i] * st.Pi[i] * st.Pi[i] * st.W[i] * st.W[i]; }),
            -0.25 * quad([&](std::size_t i) { return h2[i] * q(i) * q(i); }),
            quad([&](std::size_t i) { return Wp[i] * Wp[i] * h[i] * q(i); }),
            2.0 * quad([&](std::size_t i) { return h[i] * Wp[i] * Wp[i] * st.W[i] * st.W[i]; }),
            quad([&](std::size_t i) { return P[i] * h[i] * q(i) * q(i); }),
            quad([&](std::size_t i) { return P[i] * h[i] * q(i) * q(i) * q(i); }),
            0.5 * quad([&](std::size_t i) { return P[i] * st.Pi[i] * st.Pi[i]; }),
            0.5 * quad([&](std::size_t i) { return P[i] * Wp[i] * Wp[i]; }),
            -0.25 * quad([&](std::size_t i) { return P[i] * (Vf[i] + P[i]) * q(i) * q(i); }),
        };
        double acc = 0.0;
        for (int j = 0; j < 10; ++j) {
            if (ablate == j + 1) continue;
            acc += terms[j];
            term_scale = std::max(term_scale, std::abs(terms[j]));
        }
        bulk[k] = acc;
    }

    IdentityResidual res;
    res.term_scale = term_scale;
    // 4th-order centered time derivative of the boundary integrals.
    for (std::size_t k = 2; k + 2 < K; ++k) {
        double ddt = 0.0;
        auto d4 = [&](const std::vector<double>& s) {
            return (s[k - 2] - 8.0 * s[k - 1] + 8.0 * s[k + 1] - s[k + 2]) / (12.0 * dt);
        };
        if (ablate != 0) ddt += d4(B1);
        if (ablate != 11) ddt += d4(B2);
        res.t.push_back(rec.times[k]);
        res.residual.push_back(ddt + bulk[k]);
        res.term_scale = std::max({res.term_scale, std::abs(d4(B1)), std::abs(d4(B2))});
    }
    return res;
}

LpNorms lp_norms(const FieldState& state, const TortoiseGrid& grid) {
    std::vector<double> f2(grid.n), f4(grid.n), g(grid.n);
    const auto Wp = derivative1(state.W, grid);
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double P = grid.samples[i].P;
        const double W = state.W[i];
        f2[i] = P * W * W;
        f4[i] = P * W * W * W * W;
        g[i] = Wp[i] * Wp[i];
        sup = std::max(sup, std::sqrt(P) * std::abs(W * W - 1.0));
    }
    LpNorms n;
    n.l2_P = std::sqrt(integrate(f2, grid.dx));
    n.l4_P = std::pow(integrate(f4, grid.dx), 0.25);
    n.h1_dot = std::sqrt(integrate(g, grid.dx));
    const double E = scalar_energy(state, grid).total;
    n.sobolev_bound_ratio = E > 0.0 ? sup / (std::sqrt(E) + E) : 0.0;
    return n;
}

}  // namespace ymlab
