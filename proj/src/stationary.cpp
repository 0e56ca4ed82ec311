#include "ymlab/stationary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace ymlab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using Vec3 = std::array<double, 3>;  // (W, dW/ds, accumulated energy)

template <typename Rhs>
struct Integrator {
    Rhs rhs;
    double rtol;

    // One adaptive step from (s, y); h is updated in place. Returns the new s.
    double step(double s, Vec3& y, double& h, double s_limit) {
        for (int attempt = 0; attempt < 60; ++attempt) {
            if (s + h > s_limit) h = s_limit - s;
            Vec3 k1 = rhs(s, y);
            Vec3 k2 = rhs(s + c2 * h, axpy(y, h, {a21 * k1[0], a21 * k1[1], a21 * k1[2]}));
            Vec3 k3 = rhs(s + c3 * h, comb(y, h, {a31, a32}, {&k1, &k2}));
            Vec3 k4 = rhs(s + c4 * h, comb(y, h, {a41, a42, a43}, {&k1, &k2, &k3}));
            Vec3 k5 = rhs(s + c5 * h, comb(y, h, {a51, a52, a53, a54}, {&k1, &k2, &k3, &k4}));
            Vec3 k6 = rhs(s + h, comb(y, h, {a61, a62, a63, a64, a65}, {&k1, &k2, &k3, &k4, &k5}));
            Vec3 y5 = comb(y, h, {b1, 0.0, b3, b4, b5, b6}, {&k1, &k2, &k3, &k4, &k5, &k6});
            Vec3 k7 = rhs(s + h, y5);
            double err = 0.0;
            const Vec3* ks[7] = {&k1, &k2, &k3, &k4, &k5, &k6, &k7};
            const double ec[7] = {e1, 0.0, e3, e4, e5, e6, e7};
            for (int i = 0; i < 2; ++i) {  // error controlled on (W, W') only
                double ei = 0.0;
                for (int j = 0; j < 7; ++j) ei += ec[j] * (*ks[j])[i];
                ei *= h;
                const double sc = rtol * std::max({1.0, std::abs(y[i]), std::abs(y5[i])});
                err = std::max(err, std::abs(ei) / sc);
            }
            if (err <= 1.0) {
                const double snew = s + h;
                y = y5;
                h *= std::clamp(0.9 * std::pow(err > 1e-14 ? err : 1e-14, -0.2), 1.0, 5.0);
                return snew;
            }
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            if (!(h > 1e-14 * std::max(1.0, std::abs(s))))
                throw numerical_error("static integration: step size underflow at s = " +
                                      std::to_string(s));
        }
        throw numerical_error("static integration: no accepted step at s = " + std::to_string(s));
    }

    static Vec3 axpy(const Vec3& y, double h, const Vec3& k) {
        return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
    }
    static Vec3 comb(const Vec3& y, double h, std::initializer_list<double> c,
                     std::initializer_list<const Vec3*> k) {
        Vec3 out = y;
        auto cj = c.begin();
        for (auto kj = k.begin(); kj != k.end(); ++kj, ++cj)
            for (int i = 0; i < 3; ++i) out[i] += h * (*cj) * (**kj)[i];
        return out;
    }
};

}  // namespace

StaticShot integrate_static(double a, const ShootingConfig& cfg, BlackHoleMass m,
                            bool keep_profile) {
    if (!(a > 0.0 && a < 1.0)) throw config_error("integrate_static: a must lie in (0,1)");
    const double mm = m.m;
    const double x_start = cfg.x_start * mm;
    const double blow = 1.0 + cfg.overshoot_margin;

    // Phase 1: r* variable on [x_start, 0]. y = (W, dW/dr*, E).
    auto rhs_rstar = [&](double x, const Vec3& y) -> Vec3 {
        const auto b = background_sample(x, m);
        const double q = y[0] * y[0] - 1.0;
        return {y[1], b.P * y[0] * q, y[1] * y[1] + 0.5 * b.P * q * q};
    };
    Integrator<decltype(rhs_rstar)> I1{rhs_rstar, cfg.rtol};

    const auto b0 = background_sample(x_start, m);
    Vec3 y = {a, 2.0 * mm * b0.P * a * (a * a - 1.0), 0.0};

    StaticShot shot;
    shot.zero_count = 0;
    double prevW = y[0];
    auto record = [&](double x_rstar, double W, double Wp) {
        if (keep_profile) {
            shot.x.push_back(x_rstar);
            shot.W.push_back(W);
            shot.Wp.push_back(Wp);
        }
    };
    record(x_start, y[0], y[1]);

    double s = x_start, h = 0.5 * mm;
    bool blown = false;
    while (s < 0.0) {
        s = I1.step(s, y, h, 0.0);
        if (y[0] * prevW < 0.0) ++shot.zero_count;
        prevW = y[0];
        record(s, y[0], y[1]);
        if (std::abs(y[0]) > blow) { blown = true; break; }
    }

    double r = background_sample(s, m).r;
    if (!blown) {
        // Phase 2: r variable on [r(0), r_end]. y = (W, dW/dr, E).
        auto rhs_r = [&](double rr, const Vec3& y2) -> Vec3 {
            const double N = 1.0 - 2.0 * mm / rr;
            const double q = y2[0] * y2[0] - 1.0;
            const double Wrr = (y2[0] * q / (rr * rr) - (2.0 * mm / (rr * rr)) * y2[1]) / N;
            const double Edot = N * y2[1] * y2[1] + 0.5 * q * q / (rr * rr);
            return {y2[1], Wrr, Edot};
        };
        Integrator<decltype(rhs_r)> I2{rhs_r, cfg.rtol};
        const double N0 = 1.0 - 2.0 * mm / r;
        y[1] = y[1] / N0;  // dW/dr* -> dW/dr
        double hr = 0.01 * mm;
        const double r_end = cfg.r_end * mm;
        while (r < r_end) {
            r = I2.step(r, y, hr, r_end);
            if (y[0] * prevW < 0.0) ++shot.zero_count;
            prevW = y[0];
            if (keep_profile) {
                // back to r* coordinates for the table
                const double N = 1.0 - 2.0 * mm / r;
                record(r_star_of_r(r, m), y[0], N * y[1]);
            }
            if (std::abs(y[0]) > blow) { blown = true; break; }
        }
    }

    shot.W_end = y[0];
    shot.r_stop = r;
    shot.energy = y[2];
    if (blown) {
        shot.cls = y[0] > 0.0 ? StaticClass::overshoot : StaticClass::undershoot;
    } else {
        shot.cls = y[0] >= 0.0 ? StaticClass::limit_plus : StaticClass::limit_minus;
    }
    return shot;
}

StationarySolution find_a_n(int n, const ShootingConfig& cfg, BlackHoleMass m) {
    if (n < 1) throw config_error("find_a_n: index must be >= 1");
    // Just below a_n a shot crosses zero n+1 times before blowing up; just
    // above, n times. Shots truncated at r_end before blowing up may
    // undercount, so escalate r_end until the verdict is unambiguous.
    auto count = [&](double a) {
        ShootingConfig c = cfg;
        for (;;) {
            StaticShot s = integrate_static(a, c, m, false);
            const bool blown =
                s.cls == StaticClass::overshoot || s.cls == StaticClass::undershoot;
            if (blown || s.zero_count >= n + 1 || c.r_end >= 1e13) return s.zero_count;
            c.r_end *= 1e3;
        }
    };

    double lo = cfg.a_lo, hi = cfg.a_hi;
    if (!(count(lo) >= n + 1 && count(hi) <= n))
        throw numerical_error("find_a_n: bracket [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "] does not straddle a_" + std::to_string(n) +
                              "; widen the bracket");
    while (hi - lo > cfg.bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (count(mid) >= n + 1) lo = mid; else hi = mid;
    }
    const double a_n = 0.5 * (lo + hi);

    // Final profile run, truncated at the peel-off point |W| > 1.
    StaticShot shot = integrate_static(a_n, cfg, m, true);
    StationarySolution sol;
    sol.n = n;
    sol.a_n = a_n;
    sol.asymptote = (n % 2 == 0) ? 1.0 : -1.0;

    std::size_t keep = shot.x.size();
    for (std::size_t i = 0; i < shot.x.size(); ++i) {
        if (std::abs(shot.W[i]) > 1.0 + 1e-9) { keep = i; break; }
    }
    if (keep < 2) throw numerical_error("find_a_n: profile peeled off immediately");
    sol.x.assign(shot.x.begin(), shot.x.begin() + static_cast<long>(keep));
    sol.W.assign(shot.W.begin(), shot.W.begin() + static_cast<long>(keep));
    sol.Wp.assign(shot.Wp.begin(), shot.Wp.begin() + static_cast<long>(keep));
    sol.zero_count = 0;
    for (std::size_t i = 1; i < sol.W.size(); ++i)
        if (sol.W[i] * sol.W[i - 1] < 0.0) ++sol.zero_count;
    sol.asymptote_error = std::abs(sol.W.back() - sol.asymptote);

    // Energy: re-integrate up to the truncation point for the accumulated
    // integral, then add certified tail bounds.
    {
        ShootingConfig cut = cfg;
        const double r_stop = r_of_r_star(sol.x.back(), m);
        cut.r_end = r_stop / m.m;
        StaticShot upto = integrate_static(a_n, cut, m, false);
        const double c_tail = sol.asymptote_error * r_stop;
        const double tail_right = 2.0 * c_tail * c_tail / (r_stop * r_stop * r_stop);
        const double r_launch = background_sample(cfg.x_start * m.m, m).r;
        const double q0 = a_n * a_n - 1.0;
        const double tail_left = 0.5 * q0 * q0 * (1.0 / (2.0 * m.m) - 1.0 / r_launch);
        sol.energy = upto.energy + tail_right + tail_left;
        sol.tail_bound = tail_right + tail_left;
    }
    return sol;
}

double stationary_energy(const StationarySolution& sol, double tail_tol) {
    if (sol.tail_bound > tail_tol)
        throw numerical_error("stationary_energy: tail bound " + std::to_string(sol.tail_bound) +
                              " exceeds tolerance; increase the integration range");
    return sol.energy;
}

std::vector<double> sample_stationary_on_grid(double a_n, const TortoiseGrid& grid,
                                              const ShootingConfig& cfg) {
    const double mm = grid.mass.m;
    const double x_start = cfg.x_start * mm;
    auto rhs = [&](double x, const Vec3& y) -> Vec3 {
        const auto b = background_sample(x, grid.mass);
        const double q = y[0] * y[0] - 1.0;
        return {y[1], b.P * y[0] * q, 0.0};
    };
    Integrator<decltype(rhs)> I{rhs, cfg.rtol};
    const auto b0 = background_sample(x_start, grid.mass);
    Vec3 y = {a_n, 2.0 * mm * b0.P * a_n * (a_n * a_n - 1.0), 0.0};

    std::vector<double> out(grid.n);
    std::size_t i = 0;
    for (; i < grid.n && grid.x[i] <= x_start; ++i) out[i] = a_n;  // horizon plateau
    double s = x_start, h = 0.1 * mm;
    for (; i < grid.n; ++i) {
        const double target = grid.x[i];
        while (s < target) s = I.step(s, y, h, target);
        out[i] = y[0];
        if (std::abs(y[0]) > 2.0)
            throw numerical_error("sample_stationary_on_grid: profile blew up at x = " +
                                  std::to_string(s) + "; grid extends past the reliable range");
    }
    return out;
}

}  // namespace ymlab
