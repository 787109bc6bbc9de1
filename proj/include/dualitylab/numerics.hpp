#pragma once

#include <functional>

#include "dualitylab/errors.hpp"

namespace dualitylab {

/// Tolerances and budgets shared by the quadrature engines.
struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_refinements = 12;
    long max_oscillation_terms = 5'000'000;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// ln Gamma(x) for x > 0. Stirling series after shifting the argument into
/// the asymptotic regime; absolute error below 1e-13 on [0.05, 50].
double log_gamma(double x);

/// Riemann zeta for real s > 1, partial sums plus Euler-Maclaurin tail.
double zeta_real(double s);

/// Integral of f over (0, inf) for smooth integrands that eventually decay
/// faster than any power. Double-exponential (exp-sinh) transform with
/// step halving up to cfg.max_refinements.
QuadResult integrate_halfline(const std::function<double(double)>& f,
                              const QuadConfig& cfg = {});

/// fhat(xi) = 2 * int_0^inf exp(-gamma x^n) cos(2 pi xi x) dx, the Fourier
/// transform of the even kernel exp(-gamma |x|^n). For xi != 0 the range is
/// split at the cosine zeros (half-period cells); cells are summed in index
/// order, with Euler acceleration engaged only when the cell budget
/// (cfg.max_oscillation_terms) would otherwise be exceeded.
QuadResult fourier_cosine_transform(double n, double gamma, double xi,
                                    const QuadConfig& cfg = {});

/// Single 16-point Gauss-Legendre panel over [a, b]. Building block for
/// composite rules over smooth pieces.
double gauss16(const std::function<double(double)>& f, double a, double b);

/// |Gamma(s) - 2^{s-1} Gamma(s/2) Gamma((s+1)/2) / sqrt(pi)|, evaluated in
/// log space.
double duplication_residual(double s);

/// Root of a continuous, strictly monotone g with g(lo)*g(hi) <= 0.
/// Bisection refined by secant steps; final bracket width <= tol.
double find_root_bracketed(const std::function<double(double)>& g,
                           double lo, double hi, double tol);

}  // namespace dualitylab
