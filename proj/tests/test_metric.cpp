#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acoustic_lens/metric.hpp"
#include "oracles.hpp"

using namespace alens;

TEST_CASE("construction requires a positive sink strength") {
    CHECK_THROWS_AS(AcousticMetric(0.0), std::domain_error);
    CHECK_THROWS_AS(AcousticMetric(-1.0), std::domain_error);
    CHECK(AcousticMetric(2.5).c0() == 2.5);
}

TEST_CASE("the horizon sits exactly at c0") {
    CHECK(AcousticMetric(1.0).horizon_radius() == 1.0);
    CHECK(AcousticMetric(0.03).horizon_radius() == 0.03);
}

TEST_CASE("warp factor") {
    const AcousticMetric m(1.0);
    CHECK(m.warp_factor(1.0) == 0.0);
    CHECK(m.warp_factor(2.0) == 0.75);
    CHECK(AcousticMetric(2.0).warp_factor(2.0 * std::numbers::sqrt2) ==
          doctest::Approx(0.5).epsilon(1e-15));

    SUBCASE("negative inside the horizon, approaching 1 far out") {
        CHECK(m.warp_factor(0.5) == doctest::Approx(-3.0).epsilon(1e-15));
        CHECK(m.warp_factor(1e8) == doctest::Approx(1.0).epsilon(1e-15));
    }

    SUBCASE("strictly increasing in r") {
        double prev = m.warp_factor(0.05);
        for (double r = 0.1; r < 20.0; r += 0.1) {
            const double w = m.warp_factor(r);
            CHECK(w > prev);
            prev = w;
        }
    }

    SUBCASE("invariant under joint rescaling") {
        for (double k : {0.5, 2.0, 10.0}) {
            CHECK(AcousticMetric(k).warp_factor(k * 3.0) ==
                  doctest::Approx(m.warp_factor(3.0)).epsilon(1e-15));
        }
    }

    CHECK_THROWS_AS(m.warp_factor(0.0), std::domain_error);
    CHECK_THROWS_AS(m.warp_factor(-1.0), std::domain_error);
}

TEST_CASE("flow velocity") {
    CHECK(AcousticMetric(1.0).flow_velocity(1.0) == 1.0);
    CHECK(AcousticMetric(1.0).flow_velocity(10.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(AcousticMetric(3.0).flow_velocity(6.0) == 0.5);
    CHECK_THROWS_AS(AcousticMetric(1.0).flow_velocity(0.0), std::domain_error);
}

TEST_CASE("curvature scalars") {
    const AcousticMetric m(1.0);

    SUBCASE("closed-form anchors") {
        CHECK(m.kretschmann(1.0) == doctest::Approx(44.0).epsilon(1e-15));
        CHECK(m.kretschmann(2.0) == doctest::Approx(0.171875).epsilon(1e-15));
        CHECK(AcousticMetric(2.0).kretschmann(2.0) == doctest::Approx(0.6875).epsilon(1e-15));
        CHECK(m.ricci_scalar(1.0) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(m.ricci_scalar(2.0) == doctest::Approx(0.125).epsilon(1e-15));
    }

    SUBCASE("finite and positive on the horizon, divergent at the sink") {
        for (double c0 : {0.2, 1.0, 7.0}) {
            const AcousticMetric mm(c0);
            CHECK(std::isfinite(mm.kretschmann(c0)));
            CHECK(mm.kretschmann(c0) > 0.0);
            CHECK(std::isfinite(mm.ricci_scalar(c0)));
            CHECK(mm.ricci_scalar(c0) > 0.0);
            CHECK(mm.kretschmann(1e-6 * c0) > 1e30);
            CHECK(mm.ricci_scalar(1e-6 * c0) > 1e15);
        }
    }

    SUBCASE("scaling weight of the Kretschmann scalar") {
        for (double k : {0.5, 2.0, 10.0}) {
            const double scaled = AcousticMetric(k).kretschmann(k * 3.0);
            CHECK(scaled == doctest::Approx(m.kretschmann(3.0) / std::pow(k, 6))
                                .epsilon(1e-13));
        }
    }

    CHECK_THROWS_AS(m.kretschmann(0.0), std::domain_error);
    CHECK_THROWS_AS(m.ricci_scalar(-2.0), std::domain_error);
}

TEST_CASE("lab-time correction") {
    const AcousticMetric m(1.0);

    CHECK(m.lab_time_correction(2.0, 2.0) == 0.0);
    CHECK(m.lab_time_correction(2.0, 3.0) ==
          doctest::Approx(0.49041462650586312).epsilon(1e-13));

    SUBCASE("matches direct quadrature of the transform integrand") {
        for (double c0 : {0.3, 1.0, 2.0}) {
            const AcousticMetric mm(c0);
            auto integrand = [&](double r) {
                return mm.flow_velocity(r) / mm.warp_factor(r);
            };
            for (auto [r1, r2] : {std::pair{1.5 * c0, 3.0 * c0}, {2.0 * c0, 50.0 * c0}}) {
                const double reference = oracle::adaptive_simpson(integrand, r1, r2, 1e-14);
                CHECK(mm.lab_time_correction(r1, r2) ==
                      doctest::Approx(reference).epsilon(1e-10));
            }
        }
    }

    SUBCASE("antisymmetric in its endpoints") {
        CHECK(m.lab_time_correction(2.0, 5.0) ==
              doctest::Approx(-m.lab_time_correction(5.0, 2.0)).epsilon(1e-15));
    }

    SUBCASE("vanishing sink strength gives no correction") {
        CHECK(std::fabs(AcousticMetric(1e-8).lab_time_correction(2.0, 3.0)) < 1e-7);
    }

    SUBCASE("horizon crossings are rejected") {
        CHECK_THROWS_AS(m.lab_time_correction(1.0, 2.0), std::domain_error);
        CHECK_THROWS_AS(m.lab_time_correction(2.0, 0.5), std::domain_error);
        CHECK_THROWS_AS(m.lab_time_correction(0.5, 0.8), std::domain_error);
    }
}
