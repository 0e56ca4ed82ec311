#include <doctest.h>

#include <cmath>

#include "ymlab/verify.hpp"

using namespace ymlab;

namespace {
const BlackHoleMass M1{1.0};
}

TEST_SUITE("verify") {

TEST_CASE("bump function shape") {
    BumpFunction chi;
    chi.a = 1.0;
    for (double x = -3.0; x <= 3.0; x += 1e-3) {
        const double v = chi.value(x);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        if (std::abs(x) <= 1.0) CHECK(v == 1.0);
        if (std::abs(x) >= 2.0) CHECK(v == 0.0);
        // the analytic sup of |chi'| is attained (it equals 2 at |x| = 3/2),
        // so allow for evaluation rounding at the touching point
        CHECK(std::abs(chi.d1(x)) <= BumpFunction::chi1_bound + 1e-12);
        CHECK(std::abs(chi.d2(x)) <= BumpFunction::chi2_bound);
    }
    // derivatives vanish identically on the plateau and outside the support
    BumpFunction chi40;
    chi40.a = 40.0;
    for (double x : {-39.0, -10.0, 0.0, 25.0, 40.0, -81.0, 95.0}) {
        CHECK(chi40.d1(x) == 0.0);
        CHECK(chi40.d2(x) == 0.0);
    }
    // first derivative matches finite differences of the value
    const double h = 1e-6;
    for (double x : {-1.7, -1.2, 1.3, 1.9}) {
        const double fd = (chi.value(x + h) - chi.value(x - h)) / (2.0 * h);
        CHECK(chi.d1(x) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("morawetz weight h is consistent with finite differences") {
    MorawetzWeights w(40.0, 0.01, 0.05);
    // second differences at a tiny step drown in rounding noise near the
    // horizon where h ~ 1e-8, so use a moderate step
    const double h = 1e-2;
    for (double x : {-30.0, 0.0, 12.0, 45.0, 70.0}) {
        const auto b = background_sample(x, M1);
        const auto bp = background_sample(x + h, M1);
        const auto bm = background_sample(x - h, M1);
        CHECK(w.h(b) >= 0.0);
        const double fd1 = (w.h(bp) - w.h(bm)) / (2.0 * h);
        const double fd2 = (w.h(bp) - 2.0 * w.h(b) + w.h(bm)) / (h * h);
        CHECK(w.h1(b) == doctest::Approx(fd1).epsilon(1e-3).scale(1e-5));
        CHECK(w.h2(b) == doctest::Approx(fd2).epsilon(1e-3).scale(1e-5));
    }
    // support follows the bump
    CHECK(w.h(background_sample(90.0, M1)) == 0.0);
}

TEST_CASE("cubic-in-r positivity scan") {
    // closed-form endpoint values first
    auto g_of = [](double r, double m) {
        return 8.0 * r * r * r - 66.0 * m * r * r + 192.0 * m * m * r - 180.0 * m * m * m;
    };
    CHECK(g_of(2.0, 1.0) == 4.0);
    CHECK(g_of(3.0, 1.0) == 18.0);
    CHECK(g_of(4.0, 2.0) == 32.0);  // 4 m^3 at r = 2m for m = 2

    const auto rep = check_g_positivity(M1, 2.0, 100.0, 100001);
    CHECK(rep.pass);
    CHECK(rep.min_margin == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rep.argmin == doctest::Approx(2.0).epsilon(1e-12));

    const auto rep2 = check_g_positivity(BlackHoleMass(2.0), 4.0, 200.0, 10001);
    CHECK(rep2.pass);
    CHECK(rep2.min_margin == doctest::Approx(32.0).epsilon(1e-12));
}

TEST_CASE("pointwise positivity of the multiplier combination") {
    const auto rep = check_pos_inequality(M1, 2.0 + 1e-9, 1.0e4, 200001);
    CHECK(rep.pass);
    CHECK(rep.min_margin > 0.0);

    // value at the photon sphere r = 3m: V = 0, N = 1/3, 1-3mu = -1
    const auto at3 = check_pos_inequality(M1, 3.0, 3.0 + 1e-7, 2);
    CHECK(at3.min_margin == doctest::Approx(2.0 / 27.0).epsilon(1e-6));

    // horizon-side limit 1/(12 m^2)
    const auto at2 = check_pos_inequality(M1, 2.0 + 1e-10, 2.0 + 1e-8, 3);
    CHECK(at2.min_margin == doctest::Approx(1.0 / 12.0).epsilon(1e-6));
}

TEST_CASE("lemma weight scans pass at admissible parameters") {
    // (a, delta, epsilon) = (40, 0.1, 0.2): the widened margins absorb the
    // chi'' spike near the edge of the plateau
    const auto reps = check_lemma_weights(40.0, 0.1, 0.2, M1, 200001);
    for (const auto& r : reps) {
        CAPTURE(r.id);
        CHECK(r.pass);
        CHECK(r.min_margin > 0.0);
    }
    CHECK(reps[2].extra > 0.0);  // c3
    CHECK(reps[3].extra > 0.0);  // c4
}

TEST_CASE("lemma weight scans fail where expected") {
    // large delta with a tiny plateau: the delta P term dominates where Vf = 0
    const auto reps = check_lemma_weights(2.0, 0.45, 0.05, M1, 50001);
    CHECK_FALSE(reps[2].pass);
}

TEST_CASE("parameter search and scale covariance") {
    const auto p = find_admissible_parameters(M1);
    CHECK(p.found);
    CHECK(p.c4 > 0.0);
    for (const auto& r : p.reports) CHECK(r.pass);

    // admissibility transports as a -> a*m under m rescaling
    const auto reps2 = check_lemma_weights(p.a * 2.0, p.delta, p.epsilon, BlackHoleMass(2.0), 100001);
    for (const auto& r : reps2) CHECK(r.pass);

    // a search capped below a = 1 cannot succeed
    const auto fail = find_admissible_parameters(M1, {0.5, 0.9}, {}, {});
    CHECK_FALSE(fail.found);
}

TEST_CASE("horizon weight conditions") {
    const double delta_H = 0.5, r1 = 2.1;
    const auto reps = check_horizon_weight(delta_H, r1, M1, 100001);
    for (const auto& r : reps) {
        CAPTURE(r.id);
        CHECK(r.pass);
    }
    // c_a has the closed form (1 - delta_H) * min(mu/r) = (1-delta_H) * 2m/r1^2
    const double c_a = (1.0 - delta_H) * 2.0 / (r1 * r1);
    CHECK(reps[2].extra == doctest::Approx(c_a).epsilon(1e-6));
    // the sufficient condition N < delta_H * mu / 3 at r1
    const double N1 = 1.0 - 2.0 / r1;
    CHECK(N1 < delta_H * (2.0 / r1) / 3.0);
    CHECK(reps[3].extra > 0.0);  // c_b
}

TEST_CASE("reports are reproducible") {
    const auto a = check_g_positivity(M1, 2.0, 50.0, 10001);
    const auto b = check_g_positivity(M1, 2.0, 50.0, 10001);
    CHECK(a.min_margin == b.min_margin);
    CHECK(a.argmin == b.argmin);
    CHECK(report_to_json(a) == report_to_json(b));
}

}  // TEST_SUITE
