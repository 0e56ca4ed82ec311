#include "ymlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace ymlab {

// ---------------------------------------------------------------------------
// Smooth bump.

namespace {

double phi(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

}  // namespace

double BumpFunction::s(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double A = phi(y), B = phi(1.0 - y);
    return A / (A + B);
}

double BumpFunction::ds(double y) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    const double A = phi(y), B = phi(1.0 - y);
    const double A1 = A / (y * y);
    const double B1 = -B / ((1.0 - y) * (1.0 - y));
    const double D = A + B;
    return (A1 * B - A * B1) / (D * D);
}

double BumpFunction::d2s(double y) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    const double u = y, v = 1.0 - y;
    const double A = phi(u), B = phi(v);
    const double A1 = A / (u * u);
    const double A2 = A / (u * u * u * u) - 2.0 * A / (u * u * u);
    const double B1 = -B / (v * v);
    const double B2 = B / (v * v * v * v) - 2.0 * B / (v * v * v);
    const double D = A + B, D1 = A1 + B1;
    const double g = A1 * B - A * B1;
    const double g1 = A2 * B - A * B2;
    return (g1 * D - 2.0 * g * D1) / (D * D * D);
}

// chi(x) = s(2+x) * s(2-x): 1 on [-1,1], transitions on [1,2] in |x|.
double BumpFunction::chi(double x) { return s(2.0 + x) * s(2.0 - x); }

double BumpFunction::dchi(double x) {
    return ds(2.0 + x) * s(2.0 - x) - s(2.0 + x) * ds(2.0 - x);
}

double BumpFunction::d2chi(double x) {
    return d2s(2.0 + x) * s(2.0 - x) - 2.0 * ds(2.0 + x) * ds(2.0 - x) +
           s(2.0 + x) * d2s(2.0 - x);
}

// ---------------------------------------------------------------------------
// Morawetz weight h = (1-delta) P chi_a / 4.

double MorawetzWeights::h(const BackgroundSample& b) const {
    return 0.25 * (1.0 - delta) * b.P * bump.value(b.r_star);
}

double MorawetzWeights::h1(const BackgroundSample& b) const {
    const double P1 = b.P * b.V;
    return 0.25 * (1.0 - delta) * (P1 * bump.value(b.r_star) + b.P * bump.d1(b.r_star));
}

double MorawetzWeights::h2(const BackgroundSample& b) const {
    const double P1 = b.P * b.V;
    const double P2 = b.P * b.V * b.V + 2.0 * b.P * b.P * (1.0 - 3.0 * b.mu);
    return 0.25 * (1.0 - delta) *
           (P2 * bump.value(b.r_star) + 2.0 * P1 * bump.d1(b.r_star) + b.P * bump.d2(b.r_star));
}

// ---------------------------------------------------------------------------
// Horizon weight.

HorizonWeight::HorizonWeight(double delta_H_, double r1_, BlackHoleMass m)
    : delta_H(delta_H_), r1(r1_), x_ref(-200.0 * m.m), mass(m) {
    if (!(r1 > 2.0 * m.m)) throw config_error("horizon weight: r1 must exceed 2m");
    if (!(delta_H > 0.0 && delta_H < 1.0)) throw config_error("horizon weight: delta_H in (0,1)");
    N_ref = lapse_of_r_star(x_ref, m);
    if (!(N_ref > 0.0)) throw numerical_error("horizon weight: reference N underflowed");
}

double HorizonWeight::value_at(const BackgroundSample& b) const {
    const double r_cut = 1.2 * r1;
    if (b.r >= r_cut) return 0.0;
    // Where the double-precision r has collapsed onto 2m, recover N in log
    // space from the tortoise coordinate.
    const double N = b.N > 0.0 ? b.N : lapse_of_r_star(b.r_star, mass);
    if (N <= 0.0) return 0.0;
    const double core = std::pow(N / N_ref, delta_H);
    if (b.r <= r1) return core;
    return core * BumpFunction::s((r_cut - b.r) / (0.2 * r1));
}

double HorizonWeight::deriv_at(const BackgroundSample& b) const {
    if (b.r > r1 * (1.0 + 1e-12))
        throw config_error("horizon weight derivative only defined on r <= r1");
    return delta_H * (b.mu / b.r) * value_at(b);
}

// ---------------------------------------------------------------------------
// Scans.

namespace {

struct ScanResult {
    double min_margin = std::numeric_limits<double>::infinity();
    double argmin = 0.0;
    double lipschitz = 0.0;
    std::size_t count = 0;
};

ScanResult scan(const std::function<double(double)>& margin, double lo, double hi,
                std::size_t samples, bool midpoint) {
    ScanResult res;
    res.count = samples;
    const double step = (hi - lo) / static_cast<double>(midpoint ? samples : samples - 1);
    double prev = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = midpoint ? lo + (static_cast<double>(k) + 0.5) * step
                                  : lo + static_cast<double>(k) * step;
        const double v = margin(x);
        if (v < res.min_margin) { res.min_margin = v; res.argmin = x; }
        if (k > 0) res.lipschitz = std::max(res.lipschitz, std::abs(v - prev) / step);
        prev = v;
    }
    return res;
}

InequalityReport make_report(std::string id, std::string params, const ScanResult& s) {
    InequalityReport rep;
    rep.id = std::move(id);
    rep.params = std::move(params);
    rep.n_samples = s.count;
    rep.min_margin = s.min_margin;
    rep.argmin = s.argmin;
    rep.lipschitz_bound = s.lipschitz;
    rep.pass = s.min_margin > 0.0;
    return rep;
}

double g_poly(double r, double m) {
    return ((8.0 * r - 66.0 * m) * r + 192.0 * m * m) * r - 180.0 * m * m * m;
}

// -4Vf - V^2 - (2N/r^2)(1-3mu), evaluated directly (well-defined at r = 2m).
double pos_expr(double r, double m) {
    const double mu = 2.0 * m / r;
    const double N = 1.0 - mu;
    const double V = (3.0 * mu - 2.0) / r;
    const double f = 1.0 / (3.0 * m) - 1.0 / r;
    const double P = N / (r * r);
    return -4.0 * V * f - V * V - 2.0 * P * (1.0 - 3.0 * mu);
}

}  // namespace

InequalityReport check_g_positivity(BlackHoleMass m, double r_lo, double r_hi, std::size_t samples) {
    if (!(r_lo >= 2.0 * m.m)) throw config_error("check_g_positivity: range must start at r >= 2m");
    auto s = scan([&](double r) { return g_poly(r, m.m); }, r_lo, r_hi, samples, false);
    // g' > 0 scanned alongside; fold its minimum into the pass flag.
    auto sp = scan([&](double r) { return 24.0 * (r * r - 5.5 * m.m * r + 8.0 * m.m * m.m); },
                   r_lo, r_hi, samples, false);
    auto rep = make_report("g_positivity", "m=" + std::to_string(m.m), s);
    rep.pass = rep.pass && sp.min_margin > 0.0;
    rep.extra = g_poly(2.0 * m.m, m.m);  // endpoint value, = 4 m^3
    return rep;
}

InequalityReport check_pos_inequality(BlackHoleMass m, double r_lo, double r_hi, std::size_t samples) {
    if (!(r_lo >= 2.0 * m.m)) throw config_error("check_pos_inequality: range must start at r >= 2m");
    // Log-spaced offsets from the horizon plus the exact endpoint.
    const double off_hi = r_hi - 2.0 * m.m;
    const double off_lo = std::max(r_lo - 2.0 * m.m, 1e-9 * m.m);
    ScanResult s;
    s.count = samples;
    double prev = 0.0, prev_r = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        double r;
        if (k == 0 && r_lo <= 2.0 * m.m * (1.0 + 1e-15)) {
            r = 2.0 * m.m;
        } else {
            const double u = static_cast<double>(k) / static_cast<double>(samples - 1);
            r = 2.0 * m.m + off_lo * std::pow(off_hi / off_lo, u);
        }
        const double v = pos_expr(r, m.m);
        // Consistency with the polynomial form g(r)/(3 m r^4).
        const double poly = g_poly(r, m.m) / (3.0 * m.m * r * r * r * r);
        if (std::abs(v - poly) > 1e-9 * std::max(std::abs(v), 1.0 / (m.m * m.m)))
            throw numerical_error("check_pos_inequality: algebraic cross-check failed at r = " +
                                  std::to_string(r));
        if (v < s.min_margin) { s.min_margin = v; s.argmin = r; }
        if (k > 0) s.lipschitz = std::max(s.lipschitz, std::abs(v - prev) / (r - prev_r));
        prev = v; prev_r = r;
    }
    auto rep = make_report("pos_inequality", "m=" + std::to_string(m.m), s);
    rep.extra = pos_expr(2.0 * m.m, m.m);  // endpoint value, = 1/(12 m^2)
    return rep;
}

namespace {

struct LemmaEvaluator {
    double a, delta, epsilon;
    BlackHoleMass m;
    BumpFunction bump;  // bump.a unused here; we use the unscaled chi directly

    BackgroundSample bg(double x) const { return background_sample(x, m); }

    // (i) -Vf - (1-d)/(2a) V chi'(x/a) - (1-d)/(4a^2) chi''(x/a) >= -(1-e)Vf
    double margin1(double x) const {
        const auto b = bg(x);
        const double c1 = BumpFunction::dchi(x / a), c2 = BumpFunction::d2chi(x / a);
        return epsilon * (-b.V * b.f) - (1.0 - delta) / (2.0 * a) * b.V * c1 -
               (1.0 - delta) / (4.0 * a * a) * c2;
    }
    // (ii) on |x| >= a: -(eps) Vf - P >= 0 (bracket of (1-chi_a)(...) comparison)
    double margin2(double x) const {
        const auto b = bg(x);
        return epsilon * (-b.V * b.f) - b.P;
    }
    // (iii) bracket on supp chi_a, best constant c3
    double margin3(double x) const {
        const auto b = bg(x);
        const double Vp = 2.0 * b.P * (1.0 - 3.0 * b.mu);
        return -(1.0 - epsilon) * b.V * b.f - delta * b.P -
               0.25 * (1.0 - delta) * (b.V * b.V + Vp);
    }
    // (iv) r * (full combined weight) >= c4
    double margin4(double x) const {
        const auto b = bg(x);
        const double Vp = 2.0 * b.P * (1.0 - 3.0 * b.mu);
        const double ca = BumpFunction::chi(x / a);
        const double c1 = BumpFunction::dchi(x / a), c2 = BumpFunction::d2chi(x / a);
        const double lhs = ca * (-b.V * b.f - delta * b.P - 0.25 * (1.0 - delta) * (b.V * b.V + Vp)) +
                           (1.0 - ca) * (-b.V * b.f - b.P) -
                           (1.0 - delta) / (2.0 * a) * b.V * c1 -
                           (1.0 - delta) / (4.0 * a * a) * c2;
        return b.r * lhs;
    }
};

}  // namespace

std::array<InequalityReport, 4> check_lemma_weights(double a, double delta, double epsilon,
                                                    BlackHoleMass m, std::size_t samples) {
    if (!(a > 0.0) || !(delta > 0.0 && delta < 0.5) || !(epsilon > 0.0 && epsilon < 0.5))
        throw config_error("check_lemma_weights: need a > 0, delta, epsilon in (0, 1/2)");
    LemmaEvaluator ev{a, delta, epsilon, m, {}};
    std::ostringstream ps;
    ps << "a=" << a << " delta=" << delta << " epsilon=" << epsilon << " m=" << m.m;
    const std::string params = ps.str();

    auto s1 = scan([&](double x) { return ev.margin1(x); }, -2.5 * a, 2.5 * a, samples, true);
    // (ii): the two components of |x| >= a, scanned separately and merged.
    auto s2l = scan([&](double x) { return ev.margin2(x); }, -4.0 * a, -a, samples / 2, true);
    auto s2r = scan([&](double x) { return ev.margin2(x); }, a, std::max(4.0 * a, 400.0 * m.m),
                    samples / 2, true);
    ScanResult s2 = s2l.min_margin <= s2r.min_margin ? s2l : s2r;
    s2.count = s2l.count + s2r.count;
    s2.lipschitz = std::max(s2l.lipschitz, s2r.lipschitz);
    auto s3 = scan([&](double x) { return ev.margin3(x); }, -2.0 * a, 2.0 * a, samples, true);
    auto s4 = scan([&](double x) { return ev.margin4(x); }, -3.0 * a,
                   std::max(3.0 * a, 1000.0 * m.m), samples, true);

    std::array<InequalityReport, 4> out = {
        make_report("lemma_bump_correction", params, s1),
        make_report("lemma_outside_plateau", params, s2),
        make_report("lemma_plateau_c3", params, s3),
        make_report("lemma_combined_c4_over_r", params, s4),
    };
    out[2].extra = s3.min_margin;  // c3
    out[3].extra = s4.min_margin;  // c4
    return out;
}

AdmissibleParameters find_admissible_parameters(BlackHoleMass m,
                                                const std::vector<double>& a_candidates,
                                                const std::vector<double>& delta_candidates,
                                                const std::vector<double>& epsilon_candidates) {
    std::vector<double> as = a_candidates, ds = delta_candidates, es = epsilon_candidates;
    if (as.empty()) as = {10.0 * m.m, 20.0 * m.m, 40.0 * m.m, 80.0 * m.m, 160.0 * m.m, 320.0 * m.m};
    if (ds.empty()) ds = {0.1, 0.03, 0.01};
    if (es.empty()) es = {0.2, 0.1, 0.05};
    AdmissibleParameters best;
    double best_worst = -std::numeric_limits<double>::infinity();
    for (double a : as)
        for (double d : ds)
            for (double e : es) {
                auto reps = check_lemma_weights(a, d, e, m, 20001);
                double worst = std::numeric_limits<double>::infinity();
                bool all = true;
                for (const auto& r : reps) {
                    all = all && r.pass;
                    worst = std::min(worst, r.min_margin);
                }
                if (all) {
                    AdmissibleParameters res;
                    res.found = true;
                    res.a = a; res.delta = d; res.epsilon = e;
                    res.c3 = reps[2].extra; res.c4 = reps[3].extra;
                    res.reports = reps;
                    return res;
                }
                if (worst > best_worst) {
                    best_worst = worst;
                    best.a = a; best.delta = d; best.epsilon = e;
                    best.reports = reps;
                }
            }
    best.found = false;
    return best;
}

std::array<InequalityReport, 5> check_horizon_weight(double delta_H, double r1, BlackHoleMass m,
                                                     std::size_t samples) {
    HorizonWeight hw(delta_H, r1, m);
    const double x1 = r_star_of_r(r1, m);
    std::ostringstream ps;
    ps << "delta_H=" << delta_H << " r1=" << r1 << " m=" << m.m;
    const std::string params = ps.str();

    auto at = [&](double x) { return background_sample(x, m); };
    auto s_pos = scan([&](double x) { return hw.value_at(at(x)); }, hw.x_ref, x1, samples, false);
    auto s_mono = scan([&](double x) { return hw.deriv_at(at(x)); }, hw.x_ref, x1, samples, false);
    // (mu/r) h - h' >= c_a h  <=>  (1 - delta_H) mu/r >= c_a
    auto s_ca = scan([&](double x) {
        const auto b = at(x);
        return (1.0 - delta_H) * b.mu / b.r;
    }, hw.x_ref, x1, samples, false);
    // mu (h'/N - 3h/r) >= c_b h  <=>  mu (delta_H mu/(N r) - 3/r) >= c_b
    auto s_cb = scan([&](double x) {
        const auto b = at(x);
        const double N = b.N > 0.0 ? b.N : lapse_of_r_star(x, m);
        return b.mu * (delta_H * b.mu / (N * b.r) - 3.0 / b.r);
    }, hw.x_ref, x1, samples, false);

    ScanResult s_lim;
    s_lim.count = 1;
    s_lim.argmin = hw.x_ref;
    s_lim.min_margin = 1e-12 - std::abs(hw.value_at(at(hw.x_ref)) - 1.0);

    std::array<InequalityReport, 5> out = {
        make_report("horizon_h_positive", params, s_pos),
        make_report("horizon_h_monotone", params, s_mono),
        make_report("horizon_redshift_ca", params, s_ca),
        make_report("horizon_redshift_cb", params, s_cb),
        make_report("horizon_left_limit_one", params, s_lim),
    };
    out[2].extra = s_ca.min_margin;  // c_a
    out[3].extra = s_cb.min_margin;  // c_b
    return out;
}

std::string report_to_json(const InequalityReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"id\":\"" << rep.id << "\",\"params\":\"" << rep.params << "\",\"n_samples\":"
       << rep.n_samples << ",\"min_margin\":" << rep.min_margin << ",\"argmin\":" << rep.argmin
       << ",\"lipschitz_bound\":" << rep.lipschitz_bound << ",\"extra\":" << rep.extra
       << ",\"pass\":" << (rep.pass ? "true" : "false") << "}";
    return os.str();
}

}  // namespace ymlab
