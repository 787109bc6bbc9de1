#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dualitylab/spectral.hpp"

using namespace dualitylab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("theta_series anchors") {
    // tau = 50, n = 2: only k = 0 survives at double precision.
    CHECK(std::abs(theta_series({2.0, 50.0, 1e-14}).value - 1.0) < 1e-20);
    // Classical Gaussian value pi^{1/4} / Gamma(3/4).
    CHECK(std::abs(theta_series({2.0, kPi, 1e-14}).value - 1.086434811213308) <
          1e-12);
    CHECK(std::abs(theta_series({3.0, 1.0, 1e-14}).value - 1.7364298076024487) <
          1e-12);
    const ThetaSum s = theta_series({3.0, 1.0, 1e-12});
    CHECK(s.terms_used % 2 == 1);
    CHECK(s.terms_used == theta_series({3.0, 1.0, 1e-12}).terms_used);
}

TEST_CASE("theta limits") {
    // tau -> inf: monotone to 1 from above.
    double prev = theta_series({2.0, 0.5, 1e-13}).value;
    for (double tau : {1.0, 2.0, 4.0, 8.0}) {
        const double v = theta_series({2.0, tau, 1e-13}).value;
        CHECK(v > 1.0);
        CHECK(v < prev);
        prev = v;
    }
    // tau -> 0: tau^{1/n} Theta_n(tau) -> (2/n) Gamma(1/n).
    for (double n : {1.5, 2.0, 3.0}) {
        const double lim =
            (2.0 / n) * std::exp(log_gamma(1.0 / n));
        const double v =
            std::pow(1e-4, 1.0 / n) * theta_series({n, 1e-4, 1e-10}).value;
        CHECK(std::abs(v - lim) < 1e-3 * lim);
    }
}

TEST_CASE("theta_series cap is an error, not a silent truncation") {
    ThetaConfig cfg{1.5, 1e-4, 1e-12};
    cfg.max_terms = 10;
    CHECK_THROWS_AS(theta_series(cfg), TruncationCapExceeded);
    CHECK_THROWS_AS(theta_series({2.0, -1.0, 1e-12}), std::domain_error);
    CHECK_THROWS_AS(theta_series({2.0, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("dual theta sum: analytic Gaussian path") {
    const DualSum d = dual_theta_sum({2.0, 1.0, 1e-12});
    CHECK(d.analytic_kernel);
    CHECK(std::abs(d.value - theta_series({2.0, 1.0, 1e-12}).value) < 1e-10);
}

TEST_CASE("dual theta sum: m = 0 dominates as tau -> 0") {
    const double n = 3.0;
    const double tau = 1e-6;
    const DualSum d = dual_theta_sum({n, tau, 1e-8});
    const double lead =
        std::pow(tau, -1.0 / n) * (2.0 / n) * std::exp(log_gamma(1.0 / n));
    CHECK(std::abs(d.value - lead) < 1e-6 * lead);
}

TEST_CASE("poisson residual across kernels") {
    // Analytic kernel: residual at rounding level.
    for (double tau : {0.25, 1.0, 4.0}) {
        const PoissonReport r = poisson_residual({2.0, tau, 1e-12});
        CHECK(r.residual <= 1e-10);
        CHECK(r.residual == std::abs(r.primal_sum - r.dual_sum));
    }
    // Numeric oscillatory kernel.
    CHECK(poisson_residual({3.0, 1.0, 1e-8}).residual <= 1e-6);
    CHECK(poisson_residual({4.0, 0.25, 1e-8}).residual <= 1e-6);
    CHECK(poisson_residual({1.5, 1.0, 1e-8}).residual <= 1e-6);
}

TEST_CASE("jacobi identity and involution") {
    CHECK(jacobi_residual(kPi) <= 1e-14);
    CHECK(jacobi_residual(1.0) <= 1e-10);
    CHECK(jacobi_residual(0.2) <= 1e-9);
    for (double tau : {0.5, 2.0, 7.0}) {
        const double dual_tau = kPi * kPi / tau;
        CHECK(std::abs(kPi * kPi / dual_tau - tau) < 1e-13);
        // Both raw identities hold independently.
        CHECK(jacobi_residual(tau) <= 1e-9);
        CHECK(jacobi_residual(dual_tau) <= 1e-9);
    }
    CHECK_THROWS_AS(jacobi_residual(-1.0), std::domain_error);
}

TEST_CASE("spectral profile: self-dual Gaussian case") {
    const SpectralProfile p = spectral_profile(2.0, default_xi_max(2.0), 512);
    CHECK(std::abs(p.q_hat - 2.0) <= 0.05);
    CHECK(p.q_hat > 1.0);
    CHECK(std::abs(p.xi_samples.front().second - std::sqrt(kPi)) < 1e-12);
    // No sign oscillation: the envelope is the curve itself.
    CHECK(p.envelope_points.size() == p.xi_samples.size() - 1);
}

TEST_CASE("spectral profile: n = 4 oscillatory envelope") {
    const SpectralProfile p = spectral_profile(4.0, default_xi_max(4.0), 512);
    CHECK(std::abs(p.q_hat - 4.0 / 3.0) <= 0.1);
    CHECK(p.envelope_points.size() >= 5);
    CHECK(p.envelope_points.size() < 100);
}

TEST_CASE("spectral profile: n = 3 envelope starves at the defaults") {
    // The transform of exp(-|x|^3) decays algebraically with at most one
    // sign change in the window, so fewer than 5 maxima exist to fit.
    CHECK_THROWS_AS(spectral_profile(3.0, default_xi_max(3.0), 512),
                    InsufficientEnvelope);
}

TEST_CASE("spectral profile input validation") {
    CHECK_THROWS_AS(spectral_profile(2.0, -1.0, 512), std::domain_error);
    CHECK_THROWS_AS(spectral_profile(2.0, 3.0, 8), std::domain_error);
    CHECK_THROWS_AS(spectral_profile(0.5, 3.0, 512), std::domain_error);
}

TEST_CASE("gaussian shape dichotomy") {
    CHECK(gaussian_shape_residual(2.0, default_xi_max(2.0), 512) <= 1e-6);
    CHECK(gaussian_shape_residual(3.0, default_xi_max(3.0), 512) >= 1e-2);
    CHECK(gaussian_shape_residual(4.0, default_xi_max(4.0), 512) >= 1e-2);
}

TEST_CASE("conjugate exponent") {
    CHECK(conjugate_exponent(2.0) == 2.0);
    CHECK(conjugate_exponent(3.0) == 1.5);
    CHECK(std::abs(conjugate_exponent(1000.0) - 1.001001001001001) < 1e-12);
    CHECK_THROWS_AS(conjugate_exponent(1.0), std::domain_error);
}

TEST_CASE("hausdorff-young ratios") {
    // Plancherel: p = p' = 2 is an exact equality for every kernel.
    const HyRatio parseval2 = hy_ratio(2.0, 2.0);
    CHECK(parseval2.beckner_bound == 1.0);
    CHECK(std::abs(parseval2.ratio - 1.0) < 1e-9);
    const HyRatio parseval3 = hy_ratio(3.0, 2.0);
    CHECK(std::abs(parseval3.ratio - 1.0) < 1e-4);
    // Gaussian extremality: equality within quadrature noise.
    const HyRatio gauss = hy_ratio(2.0, 1.5);
    CHECK(std::abs(gauss.ratio - gauss.beckner_bound) < 1e-9);
    // Non-Gaussian kernel: strict gap.
    const HyRatio cubic = hy_ratio(3.0, 1.5);
    CHECK(cubic.beckner_bound - cubic.ratio >= 1e-3);
    CHECK(cubic.ratio <= cubic.beckner_bound + 1e-4);
    CHECK_THROWS_AS(hy_ratio(2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hy_ratio(2.0, 2.5), std::domain_error);
    CHECK_THROWS_AS(hy_ratio(0.5, 1.5), std::domain_error);
}

TEST_CASE("default fitting window") {
    CHECK(default_xi_max(2.0) == 3.0);
    CHECK(default_xi_max(3.0) == 5.0);
    CHECK(default_xi_max(4.0) == 5.0);
}
