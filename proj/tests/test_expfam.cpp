#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dualitylab/expfam.hpp"

using namespace dualitylab;

namespace {
constexpr double kPi = std::numbers::pi;

const double kNs[] = {1.5, 2.0, 3.0, 4.0};
const double kThetas[] = {-0.3, -1.0, -2.5};
}  // namespace

TEST_CASE("pdf normalizes to 1") {
    for (double n : kNs)
        for (double theta : kThetas) {
            const FamilyPoint p = family_point(n, theta);
            const double mass =
                2.0 * integrate_halfline([&](double x) { return pdf(p, x); }).value;
            CHECK(std::abs(mass - 1.0) < 1e-9);
        }
}

TEST_CASE("closed forms at the self-dual point n=2, theta=-1") {
    const FamilyPoint p = family_point(2.0, -1.0);
    CHECK(p.eta == 0.5);
    CHECK(p.g == 0.5);
    CHECK(std::abs(p.psi - 0.57236494292470009) < 1e-12);  // ln sqrt(pi)
    CHECK(std::abs(p.Z - std::sqrt(kPi)) < 1e-12);
}

TEST_CASE("derivatives of psi match eta, g, and the cubic form") {
    for (double n : kNs)
        for (double theta : kThetas) {
            const double h = 1e-5 * std::abs(theta);
            auto psi = [n](double t) { return family_point(n, t).psi; };
            const FamilyPoint p = family_point(n, theta);
            const double d1 = (psi(theta + h) - psi(theta - h)) / (2.0 * h);
            const double d2 =
                (psi(theta + h) - 2.0 * p.psi + psi(theta - h)) / (h * h);
            // Third difference needs a coarser step: roundoff grows as h^-3.
            const double h3 = 5e-3 * std::abs(theta);
            const double d3 =
                (psi(theta + 2 * h3) - 2.0 * psi(theta + h3) +
                 2.0 * psi(theta - h3) - psi(theta - 2 * h3)) /
                (2.0 * h3 * h3 * h3);
            CHECK(std::abs(d1 - p.eta) < 1e-6);
            CHECK(std::abs(d2 - p.g) < 1e-4 * std::max(1.0, p.g));
            CHECK(std::abs(d3 - cubic_form(n, theta)) <
                  1e-3 * std::abs(cubic_form(n, theta)));
        }
}

TEST_CASE("quadrature moment oracle matches eta") {
    for (double n : kNs)
        for (double theta : kThetas) {
            const FamilyPoint p = family_point(n, theta);
            CHECK(std::abs(moment_oracle(p) - p.eta) < 1e-8);
        }
}

TEST_CASE("Legendre maps are mutually inverse") {
    for (double n : kNs)
        for (double theta : kThetas) {
            const FamilyPoint p = family_point(n, theta);
            CHECK(std::abs(legendre_inverse(n, p.eta) - theta) < 1e-12);
            // Fenchel pairing psi(theta) + psi*(eta) = theta * eta.
            const double pairing =
                p.psi + fenchel_conjugate(n, p.eta) - theta * p.eta;
            CHECK(std::abs(pairing) < 1e-12);
        }
}

TEST_CASE("frozen spot values") {
    CHECK(std::abs(fenchel_conjugate(3.0, 1.0 / 3.0) - (-0.91328887215293602)) <
          1e-12);
    CHECK(std::abs(divergence(3.0, -std::exp(1.0), -1.0) -
                   0.23942727615301508) < 1e-12);
    // (e - 2) / 3 in closed form.
    CHECK(std::abs(divergence(3.0, -std::exp(1.0), -1.0) -
                   (std::exp(1.0) - 2.0) / 3.0) < 1e-15);
}

TEST_CASE("divergence positivity and identity of indiscernibles") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-8.0, -0.05);
    for (int i = 0; i < 10000; ++i) {
        const double a = unif(rng);
        const double b = unif(rng);
        const double d = divergence(2.5, a, b);
        if (a == b)
            CHECK(d == 0.0);
        else
            CHECK(d > 0.0);
    }
    CHECK(divergence(3.0, -1.7, -1.7) == 0.0);
}

TEST_CASE("Bregman, Fenchel three-term, and KL quadrature forms agree") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(-5.0, -0.2);
    for (double n : {2.0, 3.0}) {
        for (int i = 0; i < 20; ++i) {
            const double ta = unif(rng);
            const double tb = unif(rng);
            const FamilyPoint a = family_point(n, ta);
            const FamilyPoint b = family_point(n, tb);
            const double bregman = divergence(n, ta, tb);
            const double fenchel =
                a.psi + fenchel_conjugate(n, b.eta) - ta * b.eta;
            CHECK(std::abs(bregman - fenchel) < 1e-12);
            QuadConfig quad;
            quad.abs_tol = 1e-12;
            quad.rel_tol = 1e-12;
            // divergence(theta, theta_ref) = KL(p_ref || p_theta).
            const double kl =
                2.0 * integrate_halfline(
                          [&](double x) {
                              const double xn = std::pow(x, n);
                              if (!(tb * xn - b.psi > -745.0)) return 0.0;
                              return pdf(b, x) *
                                     ((tb - ta) * xn - b.psi + a.psi);
                          },
                          quad)
                          .value;
            CHECK(std::abs(bregman - kl) < 1e-7);
        }
    }
}

TEST_CASE("cubic form never vanishes on the domain") {
    for (double n : kNs)
        for (double theta : kThetas) CHECK(cubic_form(n, theta) != 0.0);
    CHECK(cubic_form(2.0, -1.0) == 1.0);  // -2 / (2 * (-1)^3)
}

TEST_CASE("product divergence is component-additive") {
    const double n = 3.0;
    const ProductPoint a{-2.0, -0.7};
    const ProductPoint b{-1.0, -1.3};
    CHECK(std::abs(product_divergence(n, a, b) -
                   (divergence(n, -2.0, -1.0) + divergence(n, -0.7, -1.3))) <
          1e-15);
}

TEST_CASE("domain rejections") {
    CHECK_THROWS_AS(family_point(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(family_point(2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(family_point(2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(divergence(2.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(legendre_inverse(2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(fenchel_conjugate(2.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(psi_constant(0.9), std::domain_error);
}
