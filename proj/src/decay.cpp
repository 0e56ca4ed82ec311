#include "ymlab/decay.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace ymlab {

void TimeSeries::push(double p, double v) {
    param.push_back(p);
    value.push_back(v);
}

void TimeSeries::validate() const {
    if (param.size() != value.size())
        throw config_error("series '" + id + "': parameter/value length mismatch");
    for (std::size_t i = 0; i < param.size(); ++i) {
        if (!std::isfinite(param[i]) || !std::isfinite(value[i]))
            throw config_error("series '" + id + "': non-finite entry at index " +
                               std::to_string(i));
        if (i > 0 && !(param[i] > param[i - 1]))
            throw config_error("series '" + id + "': parameter not strictly increasing at index " +
                               std::to_string(i));
    }
}

namespace {

// Shared sup machinery: weighted sup, its location, and a growth flag set when
// the running sup is still climbing at the end of the parameter range (the sup
// is attained in the trailing quarter). A peak early in the range followed by
// decay is the expected dispersive profile and is not flagged.
BoundCheckReport weighted_sup(const TimeSeries& series, double normalizer,
                              const std::vector<double>& weight, const std::string& id,
                              double tail_lo) {
    BoundCheckReport rep;
    rep.bound_id = id;
    rep.normalizer = normalizer;
    rep.n_samples = series.param.size();
    if (rep.n_samples == 0) throw config_error(id + ": empty series");

    for (std::size_t i = 0; i < rep.n_samples; ++i) {
        const double wv = weight[i] * series.value[i];
        if (wv > rep.sup_weighted) {
            rep.sup_weighted = wv;
            rep.sup_location = series.param[i];
        }
    }
    if (!(normalizer > 0.0)) {
        // Degenerate normalizer is only consistent with an identically zero series.
        if (rep.sup_weighted > 0.0)
            throw numerical_error(id + ": zero normalizer with nonzero series");
        rep.normalizer = 1.0;
        rep.C_emp = 0.0;
        rep.bounded = true;
        return rep;
    }
    rep.C_emp = rep.sup_weighted / normalizer;
    // Growth flag: the sup (first attainment) sits in the trailing quarter of
    // the weight-active parameter range [tail_lo, back]. Series that never
    // leave the weight-saturated region (back <= tail_lo) carry no trend
    // signal and are not flagged.
    const double back = series.param.back();
    rep.unbounded_trend = rep.sup_weighted > 0.0 && rep.n_samples >= 4 && back > tail_lo &&
                          rep.sup_location >= tail_lo + 0.75 * (back - tail_lo);
    rep.bounded = !rep.unbounded_trend;
    return rep;
}

}  // namespace

BoundCheckReport check_local_energy_decay(const TimeSeries& series, double normalizer,
                                          double t_min) {
    series.validate();
    TimeSeries sub;
    sub.id = series.id;
    for (std::size_t i = 0; i < series.param.size(); ++i)
        if (series.param[i] >= t_min) sub.push(series.param[i], series.value[i]);
    if (sub.param.empty())
        throw config_error("check_local_energy_decay: no samples at t >= " +
                           std::to_string(t_min));
    std::vector<double> weight(sub.param.begin(), sub.param.end());  // weight = t
    return weighted_sup(sub, normalizer, weight, "local_energy_decay", sub.param.front());
}

BoundCheckReport check_pointwise_decay(const TimeSeries& series, double normalizer) {
    series.validate();
    if (series.param.empty()) throw config_error("check_pointwise_decay: region never sampled");
    std::vector<double> weight(series.param.size());
    for (std::size_t i = 0; i < weight.size(); ++i)
        weight[i] = std::sqrt(std::max(1.0, series.param[i]));
    return weighted_sup(series, normalizer, weight, "pointwise_decay",
                        std::max(1.0, series.param.front()));
}

ExponentFit fit_power_law(const TimeSeries& series, double lo, double hi) {
    series.validate();
    ExponentFit fit;
    fit.window_lo = lo;
    fit.window_hi = hi;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < series.param.size(); ++i) {
        const double p = series.param[i];
        if (p < lo || p > hi) continue;
        if (!(series.value[i] > 0.0))
            throw config_error("fit_power_law: nonpositive value at parameter " +
                               std::to_string(p));
        if (!(p > 0.0))
            throw config_error("fit_power_law: nonpositive parameter in window");
        lx.push_back(std::log(p));
        ly.push_back(std::log(series.value[i]));
    }
    fit.n_points = lx.size();
    if (fit.n_points < 10)
        throw config_error("fit_power_law: need >= 10 points in window, got " +
                           std::to_string(fit.n_points));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double n = static_cast<double>(lx.size());
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double r2 = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (fit.slope * lx[i] + fit.intercept);
        r2 += e * e;
    }
    fit.residual_norm = std::sqrt(r2);
    return fit;
}

BoundCheckReport check_morawetz_ratio(const TimeSeries& cumulative, double energy0,
                                      double trailing_fraction) {
    cumulative.validate();
    if (cumulative.param.empty()) throw config_error("check_morawetz_ratio: empty series");
    const double final_val = cumulative.value.back();
    if (!(energy0 > 0.0)) {
        if (std::abs(final_val) > 0.0)
            throw numerical_error("check_morawetz_ratio: zero energy with nonzero bulk");
        BoundCheckReport rep;
        rep.bound_id = "morawetz_ratio";
        rep.normalizer = 1.0;
        rep.n_samples = cumulative.param.size();
        rep.bounded = true;
        rep.plateau = true;
        return rep;
    }
    std::vector<double> weight(cumulative.param.size(), 1.0);
    BoundCheckReport rep =
        weighted_sup(cumulative, energy0, weight, "morawetz_ratio", cumulative.param.front());

    // Plateau: relative change of the cumulative over the trailing window.
    const double t_cut = cumulative.param.back() -
                         trailing_fraction * (cumulative.param.back() - cumulative.param.front());
    double at_cut = cumulative.value.front();
    for (std::size_t i = 0; i < cumulative.param.size(); ++i)
        if (cumulative.param[i] <= t_cut) at_cut = cumulative.value[i];
    const double denom = std::max(std::abs(final_val), 1e-300);
    rep.plateau_change = std::abs(final_val - at_cut) / denom;
    rep.plateau = rep.plateau_change < 0.05;
    rep.bounded = rep.plateau;
    rep.unbounded_trend = !rep.plateau;
    return rep;
}

std::string report_to_json(const BoundCheckReport& rep) {
    nlohmann::json j;
    j["bound_id"] = rep.bound_id;
    j["normalizer"] = rep.normalizer;
    j["sup_weighted"] = rep.sup_weighted;
    j["sup_location"] = rep.sup_location;
    j["C_emp"] = rep.C_emp;
    j["bounded"] = rep.bounded;
    j["unbounded_trend"] = rep.unbounded_trend;
    j["plateau"] = rep.plateau;
    j["plateau_change"] = rep.plateau_change;
    j["n_samples"] = rep.n_samples;
    return j.dump(2);
}

std::string fit_to_json(const ExponentFit& fit) {
    nlohmann::json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["residual_norm"] = fit.residual_norm;
    j["window"] = {fit.window_lo, fit.window_hi};
    j["n_points"] = fit.n_points;
    return j.dump(2);
}

}  // namespace ymlab
