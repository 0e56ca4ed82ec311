#include "ymlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ymlab/evolve.hpp"
#include "ymlab/stationary.hpp"
#include "ymlab/verify.hpp"

namespace ymlab {

namespace {

// Row (v, w, r, Q) at the argmax of weight*Q over the node set; false if the
// set is empty.
template <typename Region, typename Value, typename Weight>
bool region_argmax(const FieldState& s, const TortoiseGrid& grid, Region in_region, Value val,
                   Weight wgt, PointwiseRow& out) {
    bool any = false;
    double best = -1.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        if (!in_region(i)) continue;
        const double q = val(i);
        const double wq = wgt(i) * q;
        if (!any || wq > best) {
            best = wq;
            out.v = s.t + grid.x[i];
            out.w = s.t - grid.x[i];
            out.r = grid.samples[i].r;
            out.Q = q;
            any = true;
        }
    }
    return any;
}

}  // namespace

RunArtifacts run_experiment(const RunConfig& rc) {
    RunArtifacts art;
    art.grid = build_grid(rc.x_min, rc.x_max, rc.n, BlackHoleMass(rc.mass));
    const TortoiseGrid& grid = art.grid;
    const double mm = rc.mass;

    FieldState init;
    if (rc.initial.kind == InitialDataSpec::Kind::stationary) {
        ShootingConfig scfg;
        StationarySolution sol = find_a_n(rc.initial.stationary_n, scfg, grid.mass);
        std::vector<double> Wn = sample_stationary_on_grid(sol.a_n, grid, scfg);
        StationarySampler sampler{&Wn};
        init = make_initial_data(rc.initial, grid, &sampler);
    } else {
        init = make_initial_data(rc.initial, grid);
    }

    HorizonWeight hw(0.5, 2.1 * mm, grid.mass);
    art.scalar0 = scalar_energy(init, grid);
    art.geo0 = geometric_energies(init, grid, &hw);
    art.E1 = std::sqrt(art.geo0.e_dt + art.geo0.e_K);
    const double s1 = art.geo0.e_dt + art.geo0.e_K + 1.0;
    art.E2 = std::sqrt(s1 * s1 + art.geo0.e_sharp);

    const ObserverConfig& oc = rc.observers;
    const double r_away = oc.pointwise_r_min * mm;
    const double r_near = oc.near_horizon_r_max * mm;

    StateRecorder recorder;
    const bool record_states = oc.identity || oc.flux;

    Observer observe = [&](const FieldState& s, const TortoiseGrid& g) {
        art.t.push_back(s.t);
        if (oc.energy) art.energy.push_back(scalar_energy(s, g));
        if (oc.local) art.local.push_back(local_energy(s, g, oc.local_x1, oc.local_x2));
        if (oc.morawetz) art.morawetz.push_back(morawetz_bulk(s, g));
        PointwiseRow row;
        if (oc.pointwise) {
            auto away = [&](std::size_t i) { return g.samples[i].r >= r_away; };
            auto q_curv = [&](std::size_t i) {
                const double r = g.samples[i].r;
                return std::abs(s.W[i] * s.W[i] - 1.0) / (r * r);
            };
            auto wv = [&](std::size_t i) { return std::sqrt(std::max(1.0, s.t + g.x[i])); };
            auto ww = [&](std::size_t i) { return std::sqrt(std::max(1.0, s.t - g.x[i])); };
            if (region_argmax(s, g, away, q_curv, wv, row)) art.pw_v.push_back(row);
            if (region_argmax(s, g, away, q_curv, ww, row)) art.pw_w.push_back(row);
        }
        if (oc.near_horizon) {
            const double x_clean = g.x_min + s.t + oc.clean_margin;
            auto near = [&](std::size_t i) {
                return g.samples[i].r <= r_near && g.x[i] >= x_clean;
            };
            auto q_field = [&](std::size_t i) { return std::abs(s.W[i] * s.W[i] - 1.0); };
            auto wv = [&](std::size_t i) { return std::sqrt(std::max(1.0, s.t + g.x[i])); };
            if (region_argmax(s, g, near, q_field, wv, row)) art.pw_near.push_back(row);
        }
        if (record_states) recorder(s, g);
    };

    art.result = run(init, grid, rc.evolution, {observe});

    // Cumulative Morawetz bulk (trapezoid over the observed cadence).
    art.morawetz_cum.resize(art.morawetz.size(), 0.0);
    for (std::size_t k = 1; k < art.morawetz.size(); ++k)
        art.morawetz_cum[k] = art.morawetz_cum[k - 1] +
                              0.5 * (art.morawetz[k] + art.morawetz[k - 1]) *
                                  (art.t[k] - art.t[k - 1]);

    if (!art.energy.empty()) {
        const double e0 = art.energy.front().total;
        double worst = 0.0;
        for (const auto& e : art.energy) worst = std::max(worst, std::abs(e.total - e0));
        art.drift = e0 > 0.0 ? worst / e0 : worst;
    }

    if (oc.identity && recorder.times.size() >= 5) {
        MorawetzWeights weights(oc.identity_a, oc.identity_delta, 0.05);
        art.identity = multiplier_identity_residual(recorder, grid, weights);
    }
    if (oc.flux && !recorder.times.empty()) {
        const double t_lo = recorder.times.front(), t_hi = recorder.times.back();
        for (FluxKind kind : {FluxKind::dt, FluxKind::H}) {
            art.fluxes.push_back(flux_along_null(recorder, grid, NullLine::v_const, oc.flux_v,
                                                 t_lo, t_hi, kind, &hw));
            art.fluxes.push_back(flux_along_null(recorder, grid, NullLine::w_const, oc.flux_w,
                                                 t_lo, t_hi, kind, &hw));
        }
    }
    return art;
}

namespace {

void write_csv(const std::string& path, const std::string& schema, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write " + path);
    out << "# schema=" << schema << "\n" << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt_double(row[i]);
        out << "\n";
    }
}

std::vector<std::vector<double>> pw_rows(const std::vector<PointwiseRow>& v) {
    std::vector<std::vector<double>> rows;
    rows.reserve(v.size());
    for (const auto& p : v) rows.push_back({p.v, p.w, p.r, p.Q});
    return rows;
}

}  // namespace

void write_artifacts(const RunArtifacts& art, const RunConfig& rc, const std::string& dir) {
    std::filesystem::create_directories(dir);
    save_state(art.result.final_state, art.grid, dir + "/state_final.dat");

    if (!art.energy.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < art.t.size(); ++k)
            rows.push_back({art.t[k], art.energy[k].kinetic, art.energy[k].gradient,
                            art.energy[k].potential, art.energy[k].total});
        write_csv(dir + "/series_energy.csv", "series_energy/1",
                  "t,kinetic,gradient,potential,total", rows);
    }
    if (!art.local.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < art.t.size(); ++k)
            rows.push_back({art.t[k], rc.observers.local_x1, rc.observers.local_x2,
                            art.local[k].total});
        write_csv(dir + "/series_local.csv", "series_local/1", "t,x1,x2,total", rows);
    }
    if (!art.morawetz.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < art.t.size(); ++k)
            rows.push_back({art.t[k], art.morawetz[k], art.morawetz_cum[k]});
        write_csv(dir + "/series_morawetz.csv", "series_morawetz/1", "t,bulk,cumulative", rows);
    }
    if (rc.observers.pointwise) {
        write_csv(dir + "/series_pointwise.csv", "series_pointwise/1", "v,w,r,Q",
                  pw_rows(art.pw_v));
        write_csv(dir + "/series_pointwise_w.csv", "series_pointwise/1", "v,w,r,Q",
                  pw_rows(art.pw_w));
    }
    if (rc.observers.near_horizon)
        write_csv(dir + "/series_pointwise_near.csv", "series_pointwise/1", "v,w,r,Q",
                  pw_rows(art.pw_near));
    if (!art.identity.t.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < art.identity.t.size(); ++k)
            rows.push_back({art.identity.t[k], art.identity.residual[k],
                            art.identity.term_scale});
        write_csv(dir + "/series_identity.csv", "series_identity/1", "t,residual,term_scale",
                  rows);
    }
    if (!art.fluxes.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& f : art.fluxes)
            rows.push_back({f.line == NullLine::v_const ? 0.0 : 1.0,
                            f.kind == FluxKind::dt ? 0.0 : 1.0, f.line_value, f.t_lo, f.t_hi,
                            f.flux});
        write_csv(dir + "/series_flux.csv", "series_flux/1",
                  "line_is_w,kind_is_H,line_value,t_lo,t_hi,flux", rows);
    }

    nlohmann::json j;
    j["schema"] = "summary/1";
    j["mass"] = rc.mass;
    j["grid"] = {{"x_min", rc.x_min}, {"x_max", rc.x_max}, {"n", rc.n}};
    j["evolve"] = {{"cfl", rc.evolution.cfl_ratio},
                   {"t_end", rc.evolution.t_end},
                   {"stride", rc.evolution.observer_stride},
                   {"boundary", rc.evolution.boundary_mode == BoundaryMode::causal_buffer
                                    ? "causal_buffer"
                                    : "outgoing"}};
    j["steps"] = art.result.steps;
    j["aborted"] = art.result.aborted;
    if (art.result.aborted) j["abort_reason"] = art.result.abort_reason;
    j["energies"] = {{"scalar_total", art.scalar0.total},
                     {"kinetic", art.scalar0.kinetic},
                     {"gradient", art.scalar0.gradient},
                     {"potential", art.scalar0.potential},
                     {"e_dt", art.geo0.e_dt},
                     {"e_K", art.geo0.e_K},
                     {"e_sharp", art.geo0.e_sharp},
                     {"e_H", art.geo0.e_H}};
    j["E1"] = art.E1;
    j["E2"] = art.E2;
    j["energy_drift"] = art.drift;
    // Wall-clock data is isolated here so everything above is reproducible.
    j["metadata"] = {{"wall_seconds", art.result.wall_seconds}};
    std::ofstream out(dir + "/summary.json");
    if (!out) throw config_error("cannot write " + dir + "/summary.json");
    out << j.dump(2) << "\n";
}

TimeSeries read_series_csv(const std::string& path, const std::string& param_col,
                           const std::string& value_col) {
    std::ifstream in(path);
    if (!in) throw config_error("missing series file: " + path);
    std::string line;
    std::vector<std::string> cols;
    TimeSeries out;
    out.id = path;
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (cols.empty()) {
            cols = fields;  // header row
            continue;
        }
        auto col = [&](const std::string& name) -> double {
            for (std::size_t i = 0; i < cols.size(); ++i)
                if (cols[i] == name) {
                    if (i >= fields.size())
                        throw config_error(path + ": short row");
                    return std::stod(fields[i]);
                }
            throw config_error(path + ": no column named '" + name + "'");
        };
        rows.emplace_back(col(param_col), col(value_col));
    }
    if (cols.empty()) throw config_error(path + ": no header row");
    // Sort by parameter and merge duplicates by max, so the series satisfies
    // the strict-monotonicity invariant while preserving every supremum.
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [p, v] : rows) {
        if (!out.param.empty() && p == out.param.back())
            out.value.back() = std::max(out.value.back(), v);
        else
            out.push(p, v);
    }
    return out;
}

namespace {

void write_plot_table(const std::string& path, const TimeSeries& s,
                      const std::vector<double>& weight) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < s.param.size(); ++i)
        rows.push_back({s.param[i], s.value[i], weight[i] * s.value[i]});
    write_csv(path, "decay_table/1", "parameter,value,weighted_value", rows);
}

}  // namespace

DecayAnalysis analyze_run_directory(const std::string& dir, const std::string& which) {
    if (which != "local" && which != "pointwise" && which != "morawetz" && which != "all")
        throw config_error("decay bound must be local|pointwise|morawetz|all");
    std::ifstream in(dir + "/summary.json");
    if (!in) throw config_error("missing series file: " + dir + "/summary.json");
    nlohmann::json j = nlohmann::json::parse(in);
    const double mass = j.at("mass").get<double>();
    const double e_dt = j.at("energies").at("e_dt").get<double>();
    const double e_K = j.at("energies").at("e_K").get<double>();
    const double E1 = j.at("E1").get<double>();
    const double E2 = j.at("E2").get<double>();
    const double scalar0 = j.at("energies").at("scalar_total").get<double>();

    DecayAnalysis an;
    auto add = [&](BoundCheckReport rep, const std::string& tag) {
        rep.bound_id += tag;
        an.all_pass = an.all_pass && rep.bounded;
        an.reports.push_back(std::move(rep));
    };

    if (which == "local" || which == "all") {
        TimeSeries s = read_series_csv(dir + "/series_local.csv", "t", "total");
        add(check_local_energy_decay(s, e_dt + e_K, 10.0 * mass), "");
        {
            std::vector<double> weight(s.param.begin(), s.param.end());
            write_plot_table(dir + "/decay_local.csv", s, weight);
        }
        // Informational power-law fit on the trailing three quarters.
        try {
            const double hi = s.param.back();
            an.fits.push_back(fit_power_law(s, hi / 4.0, hi));
        } catch (const config_error&) {
            // not enough positive points; the fit is optional
        }
    }
    if (which == "pointwise" || which == "all") {
        auto sqrt_plus = [](const TimeSeries& s) {
            std::vector<double> w(s.param.size());
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] = std::sqrt(std::max(1.0, s.param[i]));
            return w;
        };
        TimeSeries sv = read_series_csv(dir + "/series_pointwise.csv", "v", "Q");
        add(check_pointwise_decay(sv, E1), "_v");
        write_plot_table(dir + "/decay_pointwise_v.csv", sv, sqrt_plus(sv));
        TimeSeries sw = read_series_csv(dir + "/series_pointwise_w.csv", "w", "Q");
        add(check_pointwise_decay(sw, E1), "_w");
        write_plot_table(dir + "/decay_pointwise_w.csv", sw, sqrt_plus(sw));
        TimeSeries sn = read_series_csv(dir + "/series_pointwise_near.csv", "v", "Q");
        add(check_pointwise_decay(sn, E2), "_near");
        write_plot_table(dir + "/decay_pointwise_near.csv", sn, sqrt_plus(sn));
    }
    if (which == "morawetz" || which == "all") {
        TimeSeries s = read_series_csv(dir + "/series_morawetz.csv", "t", "cumulative");
        add(check_morawetz_ratio(s, scalar0), "");
        std::vector<double> weight(s.param.size(), 1.0);
        write_plot_table(dir + "/decay_morawetz.csv", s, weight);
    }
    return an;
}

std::string analysis_to_json(const DecayAnalysis& an) {
    nlohmann::json j;
    j["all_pass"] = an.all_pass;
    j["reports"] = nlohmann::json::array();
    for (const auto& r : an.reports)
        j["reports"].push_back(nlohmann::json::parse(report_to_json(r)));
    j["fits"] = nlohmann::json::array();
    for (const auto& f : an.fits) j["fits"].push_back(nlohmann::json::parse(fit_to_json(f)));
    return j.dump(2);
}

}  // namespace ymlab
