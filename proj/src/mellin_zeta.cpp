#include "dualitylab/mellin_zeta.hpp"

#include <cmath>
#include <stdexcept>

namespace dualitylab {

namespace {

void check_domain(double n, double s) {
    if (!(n >= 1.0)) throw std::domain_error("mellin: requires n >= 1");
    if (!(s > 1.0 / n))
        throw std::domain_error("mellin: requires s > 1/n (zeta(ns) diverges)");
}

// Theta_n(tau) - 1 summed directly; avoids the 1 + tiny cancellation that
// theta_series' full value would force at large tau.
double theta_minus_one(double n, double tau, double tail_tol) {
    double sum = 0.0;
    long k = 0;
    for (;;) {
        const double kn = std::pow(double(k), n);
        const double delta = std::pow(double(k + 1), n) - kn;
        const double head = (tau * kn > 745.0) ? 0.0 : std::exp(-tau * kn);
        if (2.0 * head / (-std::expm1(-tau * delta)) < tail_tol) break;
        ++k;
        sum += 2.0 * std::exp(-tau * std::pow(double(k), n));
    }
    return sum;
}

}  // namespace

double mellin_closed_form(double n, double s) {
    check_domain(n, s);
    return 2.0 * std::exp(log_gamma(s)) * zeta_real(n * s);
}

MellinReport mellin_numeric(double n, double s, const QuadConfig& quad,
                            double tail_tol) {
    check_domain(n, s);
    quad.validate();
    if (!(tail_tol > 0.0))
        throw std::invalid_argument("mellin_numeric: tail_tol must be positive");

    // Upper piece, tau in [1, inf): substitute tau = 1 + u.
    QuadResult upper = integrate_halfline(
        [&](double u) {
            const double tau = 1.0 + u;
            return theta_minus_one(n, tau, tail_tol) * std::pow(tau, s - 1.0);
        },
        quad);

    // Lower piece, tau in (0, 1]: substitute tau = e^{-u}, giving
    // int_0^inf (Theta(e^{-u}) - 1) e^{-u s} du. Past tau < 1e-4 the
    // integrand is replaced by its tau -> 0 form
    // tau^{-1/n} (2/n) Gamma(1/n) - 1, evaluated in log space.
    const double lg = std::log(2.0 / n) + log_gamma(1.0 / n);
    QuadResult lower = integrate_halfline(
        [&](double u) {
            if (u > 9.2103403719761827) {  // tau < 1e-4
                const double a = lg + u * (1.0 / n - s);
                const double b = -u * s;
                return (a > -745.0 ? std::exp(a) : 0.0) -
                       (b > -745.0 ? std::exp(b) : 0.0);
            }
            return theta_minus_one(n, std::exp(-u), tail_tol) * std::exp(-u * s);
        },
        quad);

    if (!upper.converged || !lower.converged)
        throw NonConvergence("mellin_numeric: quadrature did not reach tolerance");

    MellinReport rep;
    rep.n = n;
    rep.s = s;
    rep.numeric = upper.value + lower.value;
    rep.closed_form = mellin_closed_form(n, s);
    rep.residual = std::abs(rep.numeric - rep.closed_form);
    rep.split_point = 1.0;
    return rep;
}

std::vector<GammaScanRow> gamma_factor_scan(double n,
                                            const std::vector<double>& s_grid) {
    if (!(n >= 1.0)) throw std::domain_error("gamma_factor_scan: requires n >= 1");
    std::vector<GammaScanRow> rows;
    rows.reserve(s_grid.size());
    for (double s : s_grid) {
        if (!(s > 0.0))
            throw std::domain_error("gamma_factor_scan: requires s > 0");
        GammaScanRow row;
        row.s = s;
        row.ratio = std::exp(log_gamma(s) - log_gamma(s / n));
        if (n == 2.0) {
            row.duplication = duplication_residual(s);
            row.has_duplication = true;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dualitylab
