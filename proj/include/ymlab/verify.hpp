#pragma once

// Multiplier weight functions (smooth bump chi_a, the Morawetz weight h, the
// horizon weight) and dense-scan certification of the pointwise inequalities
// they must satisfy.

#include <array>
#include <string>
#include <vector>

#include "ymlab/background.hpp"

namespace ymlab {

// Smooth bump: chi in C^inf, support (-2,2), chi == 1 on [-1,1], transitions
// on [1,2] and [-2,-1]. Built from s(y) = phi(y)/(phi(y)+phi(1-y)),
// phi(y) = exp(-1/y) (y > 0).
struct BumpFunction {
    // Published derivative bounds (verified by dense sampling in the tests).
    static constexpr double chi1_bound = 2.0;
    static constexpr double chi2_bound = 9.85;

    static double s(double y);
    static double ds(double y);
    static double d2s(double y);

    static double chi(double x);
    static double dchi(double x);
    static double d2chi(double x);

    // Scaled form chi_a(x) = chi(x/a) and its derivatives in x.
    double a = 1.0;
    double value(double x) const { return chi(x / a); }
    double d1(double x) const { return dchi(x / a) / a; }
    double d2(double x) const { return d2chi(x / a) / (a * a); }
};

// Morawetz weight h = (1-delta) P chi_a / 4 with analytic derivatives via
// P' = P V, P'' = P V^2 + 2 P^2 (1 - 3 mu).
struct MorawetzWeights {
    double a = 40.0;
    double delta = 0.01;
    double epsilon = 0.05;
    BumpFunction bump;

    MorawetzWeights(double a_, double delta_, double epsilon_) : a(a_), delta(delta_), epsilon(epsilon_) {
        bump.a = a_;
    }

    double h(const BackgroundSample& b) const;
    double h1(const BackgroundSample& b) const;  // dh/dr*
    double h2(const BackgroundSample& b) const;  // d2h/dr*2
};

// Horizon weight: solves h' = delta_H (mu/r) h exactly (closed form
// h = (N/N_ref)^delta_H) on r <= r1, anchored to h = 1 at a deep reference
// point x_ref; smooth cutoff to 0 on [r1, 1.2 r1].
struct HorizonWeight {
    double delta_H = 0.5;
    double r1 = 2.1;       // in units of m times 2.1/2... absolute radius
    double x_ref = -200.0; // anchor tortoise coordinate (times m)
    BlackHoleMass mass{1.0};
    double N_ref = 0.0;    // cached at construction

    HorizonWeight(double delta_H_, double r1_, BlackHoleMass m);

    double value_at(const BackgroundSample& b) const;
    double deriv_at(const BackgroundSample& b) const;  // dh/dr* on r <= r1
};

struct InequalityReport {
    std::string id;
    std::string params;
    std::size_t n_samples = 0;
    double min_margin = 0.0;
    double argmin = 0.0;          // x (or r) where the minimum occurs
    double lipschitz_bound = 0.0; // max |d margin / d sample| estimate over cells
    bool pass = false;
    double extra = 0.0;           // check-specific constant (c3, c4, c_a, ...)
};

InequalityReport check_g_positivity(BlackHoleMass m, double r_lo, double r_hi, std::size_t samples);
InequalityReport check_pos_inequality(BlackHoleMass m, double r_lo, double r_hi, std::size_t samples);

// Four reports: (i) bump-correction bound, (ii) outside-plateau bound,
// (iii) plateau bound with best constant c3, (iv) combined weight >= c4/r.
std::array<InequalityReport, 4> check_lemma_weights(double a, double delta, double epsilon,
                                                    BlackHoleMass m, std::size_t samples);

struct AdmissibleParameters {
    bool found = false;
    double a = 0.0, delta = 0.0, epsilon = 0.0;
    double c3 = 0.0, c4 = 0.0;
    std::array<InequalityReport, 4> reports;
};

AdmissibleParameters find_admissible_parameters(BlackHoleMass m,
                                                const std::vector<double>& a_candidates = {},
                                                const std::vector<double>& delta_candidates = {},
                                                const std::vector<double>& epsilon_candidates = {});

// Reports: h > 0, h' >= 0, (mu/r)h - h' >= c_a h, mu(h'/N - 3h/r) >= c_b h,
// and h == 1 at the left (horizon-side) end of the scan.
std::array<InequalityReport, 5> check_horizon_weight(double delta_H, double r1, BlackHoleMass m,
                                                     std::size_t samples);

std::string report_to_json(const InequalityReport& rep);

}  // namespace ymlab
