#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dualitylab/mellin_zeta.hpp"

using namespace dualitylab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("closed form anchors") {
    CHECK(std::abs(mellin_closed_form(2.0, 1.0) - kPi * kPi / 3.0) < 1e-12);
    CHECK(std::abs(mellin_closed_form(3.0, 1.0) - 2.4041138063191886) < 1e-12);
    CHECK(std::abs(mellin_closed_form(2.0, 2.0) -
                   kPi * kPi * kPi * kPi / 45.0) < 1e-12);
}

TEST_CASE("n = 1 specializes to the Riemann case 2 Gamma(s) zeta(s)") {
    for (double s : {1.5, 2.0, 3.0}) {
        const double expected = 2.0 * std::exp(log_gamma(s)) * zeta_real(s);
        CHECK(mellin_closed_form(1.0, s) == expected);
    }
}

TEST_CASE("numeric Mellin transform matches the closed form") {
    for (double n : {2.0, 3.0, 4.0})
        for (double s : {0.75, 1.0, 1.5, 2.0}) {
            const MellinReport r = mellin_numeric(n, s);
            CHECK(r.residual <= 1e-6);
            CHECK(r.residual == std::abs(r.numeric - r.closed_form));
            CHECK(r.split_point == 1.0);
        }
    CHECK(mellin_numeric(3.0, 0.9).residual <= 1e-6);
    CHECK(std::abs(mellin_numeric(2.0, 1.0).numeric - kPi * kPi / 3.0) <= 1e-6);
}

TEST_CASE("convergence boundary s <= 1/n rejects") {
    CHECK_THROWS_AS(mellin_closed_form(2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(mellin_closed_form(3.0, 1.0 / 3.0), std::domain_error);
    CHECK_THROWS_AS(mellin_numeric(2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(mellin_numeric(2.0, 0.25), std::domain_error);
    CHECK_THROWS_AS(mellin_closed_form(0.5, 3.0), std::domain_error);
    // Just inside the domain still works.
    CHECK(mellin_numeric(2.0, 0.51).residual <= 1e-6);
}

TEST_CASE("gamma factor scan") {
    const auto rows = gamma_factor_scan(2.0, {0.5, 1.0, 2.0, 4.0});
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(row.has_duplication);
        CHECK(row.duplication / std::exp(log_gamma(row.s)) <= 1e-10);
    }
    const auto r3 = gamma_factor_scan(3.0, {1.0});
    REQUIRE(r3.size() == 1);
    CHECK_FALSE(r3[0].has_duplication);
    // Gamma(1) / Gamma(1/3), frozen against an independent evaluation.
    CHECK(std::abs(r3[0].ratio - 0.37328217390739523) < 1e-11);
    CHECK_THROWS_AS(gamma_factor_scan(2.0, {1.0, -1.0}), std::domain_error);
}
