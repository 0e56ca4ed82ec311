#include <doctest.h>

#include <cmath>

#include "ymlab/decay.hpp"

using namespace ymlab;

TEST_SUITE("decay") {

TEST_CASE("series validation") {
    TimeSeries s;
    s.id = "x";
    s.push(1.0, 2.0);
    s.push(2.0, 1.0);
    CHECK_NOTHROW(s.validate());
    s.push(2.0, 0.5);  // not strictly increasing
    CHECK_THROWS_AS(s.validate(), config_error);
}

TEST_CASE("local energy sup with an exactly decaying series") {
    TimeSeries s;
    for (double t = 10.0; t <= 100.0; t += 0.5) s.push(t, 1.0 / t);
    const auto rep = check_local_energy_decay(s, 4.0);
    CHECK(rep.bounded);
    CHECK(rep.C_emp == doctest::Approx(0.25).epsilon(1e-14));  // t * (1/t) / 4
}

TEST_CASE("constant series is flagged as growing") {
    TimeSeries a, b;
    for (double t = 10.0; t <= 100.0; t += 0.5) a.push(t, 1.0);
    for (double t = 10.0; t <= 200.0; t += 0.5) b.push(t, 1.0);
    const auto ra = check_local_energy_decay(a, 1.0);
    const auto rb = check_local_energy_decay(b, 1.0);
    CHECK(ra.unbounded_trend);
    CHECK_FALSE(ra.bounded);
    // C_emp grows linearly with the final time
    CHECK(rb.C_emp == doctest::Approx(2.0 * ra.C_emp).epsilon(1e-12));
}

TEST_CASE("pointwise decay with the exact critical rate") {
    TimeSeries s;
    for (double v = 1.0; v <= 400.0; v += 1.0) s.push(v, 1.0 / std::sqrt(v));
    const auto rep = check_pointwise_decay(s, 2.0);
    CHECK(rep.bounded);
    CHECK(rep.C_emp == doctest::Approx(0.5).epsilon(1e-14));
    // below v = 1 the weight saturates at 1
    TimeSeries early;
    early.push(0.25, 3.0);
    early.push(0.5, 1.0);
    early.push(0.75, 1.0);
    early.push(0.9, 1.0);
    const auto rep2 = check_pointwise_decay(early, 1.0);
    CHECK(rep2.sup_weighted == 3.0);
}

TEST_CASE("degenerate normalizers") {
    TimeSeries zero;
    for (double t = 10.0; t <= 50.0; t += 1.0) zero.push(t, 0.0);
    const auto rep = check_local_energy_decay(zero, 0.0);
    CHECK(rep.bounded);
    CHECK(rep.C_emp == 0.0);

    TimeSeries nonzero;
    for (double t = 10.0; t <= 50.0; t += 1.0) nonzero.push(t, 1e-3);
    CHECK_THROWS_AS(check_local_energy_decay(nonzero, 0.0), numerical_error);
}

TEST_CASE("power-law fits") {
    TimeSeries s1, s2;
    for (double t = 10.0; t <= 100.0; t += 1.0) {
        s1.push(t, 5.0 / t);
        s2.push(t, 0.3 / std::sqrt(t));
    }
    const auto f1 = fit_power_law(s1, 10.0, 100.0);
    CHECK(f1.slope == doctest::Approx(-1.0).epsilon(1e-12));
    const auto f2 = fit_power_law(s2, 10.0, 100.0);
    CHECK(f2.slope == doctest::Approx(-0.5).epsilon(1e-12));

    TimeSeries few;
    for (double t = 10.0; t < 15.0; t += 1.0) few.push(t, 1.0 / t);
    CHECK_THROWS_AS(fit_power_law(few, 10.0, 15.0), config_error);

    TimeSeries neg;
    for (double t = 10.0; t <= 50.0; t += 1.0) neg.push(t, 1.0 / t - 0.05);
    CHECK_THROWS_AS(fit_power_law(neg, 10.0, 50.0), config_error);
}

TEST_CASE("morawetz ratio plateau detection") {
    TimeSeries plateau, growing;
    for (double t = 1.0; t <= 100.0; t += 1.0) {
        plateau.push(t, 1.0 - 1.0 / t);
        growing.push(t, 0.1 * t);
    }
    const auto rp = check_morawetz_ratio(plateau, 2.0);
    CHECK(rp.plateau);
    CHECK(rp.bounded);
    CHECK(rp.C_emp == doctest::Approx((1.0 - 0.01) / 2.0).epsilon(1e-12));
    const auto rg = check_morawetz_ratio(growing, 2.0);
    CHECK_FALSE(rg.plateau);
    CHECK(rg.unbounded_trend);
}

TEST_CASE("json serialization is stable") {
    TimeSeries s;
    for (double t = 10.0; t <= 100.0; t += 0.5) s.push(t, 1.0 / t);
    const auto rep = check_local_energy_decay(s, 4.0);
    CHECK(report_to_json(rep) == report_to_json(rep));
    CHECK(report_to_json(rep).find("C_emp") != std::string::npos);
}

}  // TEST_SUITE
