#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "acoustic_lens/lensing.hpp"
#include "acoustic_lens/units.hpp"
#include "oracles.hpp"

using namespace alens;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("series deflection") {
    CHECK(deflection_series(1.0, 10.0) == doctest::Approx(3.0 * kPi / 400.0).epsilon(1e-15));
    CHECK(deflection_series(1.0, 2.0) == doctest::Approx(3.0 * kPi / 16.0).epsilon(1e-15));
    CHECK(deflection_series(1.0, -10.0) ==
          doctest::Approx(-3.0 * kPi / 400.0).epsilon(1e-15));
    CHECK_THROWS_AS(deflection_series(1.0, 0.0), std::domain_error);
}

TEST_CASE("exact deflection against frozen high-precision values") {
    struct Anchor {
        double b;
        double value;
    };
    const std::vector<Anchor> anchors = {
        {2.2, 1.1022421964282756},   {2.5, 0.62785973286556127},
        {3.0, 0.35525480230934109},  {5.0, 0.10352865993417134},
        {10.0, 0.024091982726432863}, {20.0, 0.0059229229912070990},
        {50.0, 0.00094330337239038497}, {100.0, 0.00023567100495200996},
    };
    for (const Anchor& a : anchors) {
        CAPTURE(a.b);
        CHECK(std::fabs(deflection_exact(1.0, a.b) - a.value) < 1e-10);
    }
}

TEST_CASE("exact deflection against the brute-force quadrature oracle") {
    for (double b : {2.2, 2.5, 3.0, 5.0, 10.0}) {
        CAPTURE(b);
        CHECK(std::fabs(deflection_exact(1.0, b) - oracle::deflection_reference(1.0, b)) <
              1e-9);
    }
}

TEST_CASE("strong-field bending exceeds the series prediction") {
    const double exact = deflection_exact(1.0, 2.2);
    const double series = deflection_series(1.0, 2.2);
    CHECK(std::isfinite(exact));
    CHECK(exact > series);
}

TEST_CASE("flat-space limit bends nothing") {
    CHECK(std::fabs(deflection_exact(0.0, 5.0)) < 1e-12);
    CHECK(std::fabs(deflection_exact(0.0, -3.0)) < 1e-12);
}

TEST_CASE("series remainder stays within its cubic bound") {
    // The remainder is known to sit well inside (c0/b)^3; the measured
    // fractions of the bound are pinned to catch silent regressions.
    const std::vector<std::pair<double, double>> expected_ratio = {
        {10.0, 0.530038}, {20.0, 0.259494}, {50.0, 0.103197}, {100.0, 0.0515559}};
    for (const auto& [b, ratio] : expected_ratio) {
        CAPTURE(b);
        const double gap = std::fabs(deflection_exact(1.0, b) - deflection_series(1.0, b));
        const double bound = std::pow(1.0 / b, 3);
        CHECK(gap <= bound);
        CHECK(gap / bound == doctest::Approx(ratio).epsilon(1e-4));
    }
}

TEST_CASE("deflection antisymmetry and scale invariance") {
    for (double b : {2.5, 10.0}) {
        CAPTURE(b);
        CHECK(std::fabs(deflection_exact(1.0, -b) + deflection_exact(1.0, b)) < 1e-12);
    }
    const double base = deflection_exact(1.0, 10.0);
    for (double k : {0.5, 2.0, 10.0}) {
        CAPTURE(k);
        CHECK(std::fabs(deflection_exact(k, 10.0 * k) - base) < 1e-10);
    }
}

TEST_CASE("deflection domain errors") {
    CHECK_THROWS_AS(deflection_exact(1.0, 1.9), std::domain_error);
    CHECK_THROWS_AS(deflection_exact(1.0, 2.0), std::domain_error);  // critical orbit
    CHECK_THROWS_AS(deflection_exact(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(deflection_exact(1.0, 3.0, 0.0), std::domain_error);
}

TEST_CASE("unreachable quadrature tolerance reports the achieved error") {
    try {
        deflection_exact(1.0, 2.0 + 1e-7, 1e-30);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.achieved_error() > 0.0);
        CHECK(e.achieved_error() < 1e-3);
    }
}

TEST_CASE("focal length") {
    CHECK(focal_length(1.0, 2.0) == doctest::Approx(16.0 / (3.0 * kPi)).epsilon(1e-14));
    CHECK(focal_length(1.0, 4.0) == doctest::Approx(128.0 / (3.0 * kPi)).epsilon(1e-14));
    CHECK(focal_length(1.0, -2.0) == focal_length(1.0, 2.0));

    SUBCASE("cubic growth in the impact parameter") {
        CHECK(focal_length(1.0, 4.0) ==
              doctest::Approx(8.0 * focal_length(1.0, 2.0)).epsilon(1e-14));
    }

    SUBCASE("reference cavity puts the critical-beam focus at 20.3 um") {
        const DerivedScales s = derive_scales(PhysicalParams{});
        const double f_si = to_physical(focal_length(1.0, 2.0), s);
        CHECK(f_si == doctest::Approx(2.0290831072044866e-5).epsilon(1e-12));
        CHECK(std::fabs(f_si - 20.3e-6) / 20.3e-6 < 0.01);
    }

    CHECK_THROWS_AS(focal_length(1.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(focal_length(0.0, 5.0), std::domain_error);
}

TEST_CASE("closed-form Einstein angle") {
    CHECK(einstein_angle(1.0, 100.0, 1000.0) ==
          doctest::Approx(0.059632710310784781).epsilon(1e-13));

    SUBCASE("distant-source limit") {
        const double limit = std::cbrt(3.0 * kPi / (4.0 * 100.0 * 100.0));
        CHECK(einstein_angle(1.0, 100.0, 1e9) == doctest::Approx(limit).epsilon(1e-6));
    }

    SUBCASE("homogeneous of degree zero under joint rescaling") {
        const double base = einstein_angle(1.0, 100.0, 1000.0);
        for (double k : {0.5, 2.0, 10.0}) {
            CHECK(einstein_angle(k, 100.0 * k, 1000.0 * k) ==
                  doctest::Approx(base).epsilon(1e-13));
        }
    }

    CHECK_THROWS_AS(einstein_angle(1.0, 0.0, 1000.0), std::domain_error);
    CHECK_THROWS_AS(einstein_angle(1.0, 1000.0, 1000.0), std::domain_error);
    CHECK_THROWS_AS(einstein_angle(1.0, 1000.0, 100.0), std::domain_error);
}

TEST_CASE("wavelength-limited maximum deflection") {
    CHECK(max_deflection(1.0, 2.0) == doctest::Approx(3.0 * kPi / 16.0).epsilon(1e-14));
    CHECK(max_deflection(1.0, 10.0) == doctest::Approx(3.0 * kPi / 400.0).epsilon(1e-14));
    CHECK(max_deflection(1.0, 1e8) < 1e-15);
    CHECK_THROWS_AS(max_deflection(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(max_deflection(1.0, -2.0), std::domain_error);
}

TEST_CASE("thin-lens solution") {
    const LensGeometry g = lens_solve(1.0, 100.0, 1000.0);

    SUBCASE("frozen solution values") {
        CHECK(g.b_solved == doctest::Approx(6.0874941088587171).epsilon(1e-12));
        CHECK(g.theta_einstein == doctest::Approx(0.060874941088587171).epsilon(1e-12));
        CHECK(g.theta_source == doctest::Approx(0.0067638823431763523).epsilon(1e-12));
        CHECK(g.deflection == doctest::Approx(0.067638823431763523).epsilon(1e-12));
    }

    SUBCASE("consistency system residuals") {
        CHECK(std::fabs(g.d_lens * g.theta_einstein - g.b_solved) < 1e-10);
        CHECK(std::fabs((g.d_source - g.d_lens) * g.theta_source - g.b_solved) < 1e-10);
        CHECK(std::fabs(g.deflection - (g.theta_source + g.theta_einstein)) < 1e-10);
        CHECK(g.deflection ==
              doctest::Approx(deflection_exact(1.0, g.b_solved)).epsilon(1e-12));
    }

    SUBCASE("two symmetric images") {
        CHECK(g.image_angles.first == g.theta_einstein);
        CHECK(g.image_angles.second == -g.theta_einstein);
    }

    SUBCASE("closed form agrees within the series truncation error") {
        const double gap =
            std::fabs(g.theta_einstein_closed_form - g.theta_einstein) / g.theta_einstein;
        CHECK(gap < 0.05);
        CHECK(gap == doctest::Approx(0.020406274824884937).epsilon(1e-6));
    }

    SUBCASE("agrees with an independent root find on the oracle deflection") {
        const double k = 1.0 / 100.0 + 1.0 / 900.0;
        const double b_ref = oracle::bisect(
            [&](double b) { return oracle::deflection_reference(1.0, b) - k * b; }, 2.001,
            20.0, 100);
        CHECK(g.b_solved == doctest::Approx(b_ref).epsilon(1e-8));
    }
}

TEST_CASE("lens geometry errors") {
    CHECK_THROWS_AS(lens_solve(0.0, 100.0, 1000.0), NoLensingSolution);
    CHECK_THROWS_AS(lens_solve(1.0, 0.0, 1000.0), std::domain_error);
    CHECK_THROWS_AS(lens_solve(1.0, 1000.0, 1000.0), std::domain_error);
    CHECK_THROWS_AS(lens_solve(1.0, 1000.0, 100.0), std::domain_error);
}

TEST_CASE("deflection sweep") {
    const std::vector<double> grid = {2.5, 5.0, 10.0, 100.0};
    const std::vector<SweepPoint> points = deflection_sweep(1.0, grid);
    REQUIRE(points.size() == grid.size());

    SUBCASE("rows match individual evaluation exactly") {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(points[i].b == grid[i]);
            CHECK(points[i].deflection_exact == deflection_exact(1.0, grid[i]));
            CHECK(points[i].deflection_series == deflection_series(1.0, grid[i]));
            CHECK(points[i].abs_error ==
                  std::fabs(points[i].deflection_exact - points[i].deflection_series));
            CHECK(points[i].focal_length == focal_length(1.0, grid[i]));
        }
    }

    SUBCASE("concurrent evaluation is deterministic on a large grid") {
        std::vector<double> big;
        for (int i = 0; i < 200; ++i) {
            big.push_back(2.5 * std::pow(100.0 / 2.5, i / 199.0));
        }
        const auto once = deflection_sweep(1.0, big);
        const auto twice = deflection_sweep(1.0, big);
        REQUIRE(once.size() == big.size());
        for (std::size_t i = 0; i < big.size(); ++i) {
            CHECK(once[i].b == big[i]);
            CHECK(once[i].deflection_exact == twice[i].deflection_exact);
        }
        // Order follows the grid, not completion order.
        for (std::size_t i = 1; i < big.size(); ++i) {
            CHECK(once[i].deflection_exact < once[i - 1].deflection_exact);
        }
    }

    SUBCASE("empty grid gives an empty table") {
        CHECK(deflection_sweep(1.0, {}).empty());
    }

    SUBCASE("captured points are rejected before any work starts") {
        CHECK_THROWS_AS(deflection_sweep(1.0, {5.0, 1.5}), std::domain_error);
    }
}
