#pragma once

// Post-processing of recorded series: normalized-supremum checks for the
// decay bounds, and informational power-law fits.

#include <string>
#include <vector>

#include "ymlab/errors.hpp"

namespace ymlab {

struct TimeSeries {
    std::string id;      // which functional
    std::string window;  // human-readable window / line metadata
    std::vector<double> param;  // strictly increasing
    std::vector<double> value;

    void push(double p, double v);
    void validate() const;  // throws config_error on violated invariants
};

struct BoundCheckReport {
    std::string bound_id;
    double normalizer = 0.0;
    double sup_weighted = 0.0;   // sup of value * weight over the series
    double sup_location = 0.0;   // parameter where the sup is attained
    double C_emp = 0.0;          // sup_weighted / normalizer
    bool bounded = true;         // verdict
    bool unbounded_trend = false;  // sup still growing towards the series end
    bool plateau = false;        // morawetz only
    double plateau_change = 0.0; // relative change over the trailing window
    std::size_t n_samples = 0;
};

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_norm = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    std::size_t n_points = 0;
};

// sup_t [t * E_loc(t)] / normalizer over t >= t_min.
BoundCheckReport check_local_energy_decay(const TimeSeries& series, double normalizer,
                                          double t_min = 10.0);

// sup sqrt(max(1, v)) * Q(v) / normalizer; param is the null coordinate.
BoundCheckReport check_pointwise_decay(const TimeSeries& series, double normalizer);

// Least-squares slope on log-log data within [lo, hi]; >= 10 positive points.
ExponentFit fit_power_law(const TimeSeries& series, double lo, double hi);

// sup cumulative(t)/E0, plus a plateau verdict: relative change over the
// trailing fraction of the run below 5%.
BoundCheckReport check_morawetz_ratio(const TimeSeries& cumulative, double energy0,
                                      double trailing_fraction = 0.5);

std::string report_to_json(const BoundCheckReport& rep);
std::string fit_to_json(const ExponentFit& fit);

}  // namespace ymlab
