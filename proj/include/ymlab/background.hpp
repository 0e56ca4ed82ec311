#pragma once

// Schwarzschild exterior geometry in tortoise coordinates (geometric units,
// G = c = 1). All functions are pure; nothing here caches.

#include <utility>

#include "ymlab/errors.hpp"

namespace ymlab {

struct BlackHoleMass {
    double m;

    explicit BlackHoleMass(double mass) : m(mass) {
        if (!(m > 0.0)) throw config_error("black hole mass must be positive");
    }
};

// Every background scalar used by the multiplier machinery, at one point.
struct BackgroundSample {
    double r;       // areal radius, > 2m (== 2m only in the horizon limit)
    double r_star;  // tortoise coordinate
    double N;       // 1 - 2m/r
    double mu;      // 2m/r
    double P;       // N/r^2, the coefficient of the nonlinearity
    double V;       // (3 mu - 2)/r
    double f;       // 1/(3m) - 1/r
};

// r* = r + 2m ln(r-2m) - 3m - 2m ln(m); normalized so r*(3m) = 0.
double r_star_of_r(double r, BlackHoleMass m);

// Inverse map, safeguarded Newton in u = ln(r-2m) to relative tolerance 1e-13.
double r_of_r_star(double x, BlackHoleMass m);

// r - 2m and N = 1 - 2m/r, accurate in log space near the horizon where
// 2m + gap is no longer representable in r itself.
double horizon_gap(double x, BlackHoleMass m);
double lapse_of_r_star(double x, BlackHoleMass m);

BackgroundSample background_sample(double x, BlackHoleMass m);

// Same fields evaluated directly from r (no inversion).
BackgroundSample background_sample_at_r(double r, double x, BlackHoleMass m);

// Kruskal coordinates from null coordinates v = t+r*, w = t-r*:
// v' = exp(v/4m), w' = -exp(-w/4m), t' = (v'+w')/2, x' = (v'-w')/2.
std::pair<double, double> kruskal_map(double v, double w, BlackHoleMass m);

}  // namespace ymlab
