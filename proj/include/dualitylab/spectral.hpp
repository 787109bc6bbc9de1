#pragma once

#include <utility>
#include <vector>

#include "dualitylab/numerics.hpp"

namespace dualitylab {

struct ThetaConfig {
    double n = 2.0;
    double tau = 1.0;
    double tail_tol = 1e-12;
    /// Hard cap on the primal summation index K; hitting it is an error,
    /// never a silent truncation.
    long max_terms = 50'000'000;

    void validate() const;
};

struct ThetaSum {
    double value = 0.0;
    long terms_used = 0;
};

struct DualSum {
    double value = 0.0;
    long terms_used = 0;
    double quad_error = 0.0;       // accumulated per-term quadrature error
    bool analytic_kernel = false;  // true on the closed-form n = 2 fast path
};

struct PoissonReport {
    double n = 0.0;
    double tau = 0.0;
    double primal_sum = 0.0;
    double dual_sum = 0.0;
    double residual = 0.0;  // |primal_sum - dual_sum|
    long primal_terms = 0;
    long dual_terms = 0;
    double quad_error = 0.0;
};

struct SpectralProfile {
    double n = 0.0;
    std::vector<std::pair<double, double>> xi_samples;      // (xi, fhat)
    std::vector<std::pair<double, double>> envelope_points; // (xi, |fhat| at maxima)
    double q_hat = 0.0;
    double gamma_hat = 0.0;
    double fit_residual = 0.0;  // RMS of the doubly-log linear fit
};

struct HyRatio {
    double ratio = 0.0;
    double beckner_bound = 0.0;
};

/// Theta_n(tau) = sum_k exp(-tau |k|^n), truncated at the first K whose
/// analytic tail bound 2 exp(-tau K^n) / (1 - exp(-tau ((K+1)^n - K^n)))
/// drops below cfg.tail_tol.
ThetaSum theta_series(const ThetaConfig& cfg);

/// tau^{-1/n} sum_m fhat(m tau^{-1/n}), the dual-lattice side of Poisson
/// summation for the kernel exp(-|x|^n). n = 2 uses the closed-form
/// Gaussian transform; otherwise terms come from the oscillatory engine and
/// the algebraic tail is extrapolated past the truncation point.
DualSum dual_theta_sum(const ThetaConfig& cfg, const QuadConfig& quad = {});

PoissonReport poisson_residual(const ThetaConfig& cfg, const QuadConfig& quad = {});

/// |Theta_2(tau) - sqrt(pi/tau) Theta_2(pi^2/tau)|, the exact Gaussian
/// modular identity.
double jacobi_residual(double tau, double tail_tol = 1e-12,
                       const QuadConfig& quad = {});

/// Samples fhat of exp(-|x|^n) on [0, xi_max], extracts the decay envelope
/// (the samples themselves when fhat keeps one sign, local maxima of |fhat|
/// otherwise), and fits ln(-ln env) against ln xi over xi >= xi_max / 2.
SpectralProfile spectral_profile(double n, double xi_max, int sample_count,
                                 const QuadConfig& quad = {});

/// Relative deviation (linear space, RMS) of the sampled fhat from its best
/// log-linear Gaussian fit exp(a - b xi^2). Near zero iff the kernel is
/// shape-invariant under the transform.
double gaussian_shape_residual(double n, double xi_max, int sample_count,
                               const QuadConfig& quad = {});

/// q = n / (n - 1) for n > 1.
double conjugate_exponent(double n);

/// ||fhat||_{p'} / ||f||_p for f = exp(-|x|^n), with the sharp
/// Hausdorff-Young constant (p^{1/p} / p'^{1/p'})^{1/2} alongside.
HyRatio hy_ratio(double n, double p, const QuadConfig& quad = {});

/// Default fitting window used by the profile and shape operations.
double default_xi_max(double n);

}  // namespace dualitylab
